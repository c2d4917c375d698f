#pragma once

#include <cstddef>
#include <limits>
#include <memory>
#include <string>

#include "curvelab/geodesic.hpp"
#include "curvelab/point.hpp"
#include "curvelab/random.hpp"

namespace curvelab {

enum class DistanceMode { analytic, numeric };

inline constexpr double kInfinity = std::numeric_limits<double>::infinity();

// A model metric space: distance oracle, geodesic oracle, a proposal chart for
// sampling, and (where available) a parametrisation of unit-speed geodesics by
// direction descriptors. Implementations are immutable after construction and
// safe to share between threads.
class Space {
public:
    virtual ~Space() = default;

    virtual std::string spec() const = 0;
    virtual std::string kind() const = 0;
    virtual DistanceMode mode() const = 0;
    virtual std::size_t coordinate_count() const = 0;
    // Dimension of the natural Hausdorff measure (4 for Heisenberg).
    virtual int intrinsic_dimension() const = 0;

    // Throws DomainError when p does not describe a point of the space.
    virtual void validate(const Point& p) const;
    virtual Point canonical(const Point& p) const { return p; }
    virtual Point origin() const = 0;

    virtual double distance(const Point& p, const Point& q) const = 0;
    // Default: numeric midpoint relaxation in the chart.
    virtual GeodesicPath geodesic(const Point& p, const Point& q) const;
    Point midpoint(const Point& p, const Point& q) const { return geodesic(p, q).at(0.5); }

    // Chart helpers for the numeric solver.
    virtual Point chart_interpolate(const Point& p, const Point& q, double t) const;
    virtual Point retract(const Point& p) const { return p; }

    // Draw one candidate for the ball B(center, radius); callers reject
    // candidates outside the ball.
    virtual Point propose(const Point& center, double radius, Rng& rng) const = 0;

    virtual double diameter() const { return kInfinity; }
    bool bounded() const;

    virtual bool has_directions() const { return false; }
    virtual std::size_t direction_size() const { return 0; }
    virtual Direction initial_direction(const Point& from, const Point& to) const;
    // Point at arclength t along the unit-speed geodesic (base, dir).
    virtual Point shoot(const Point& base, const Direction& dir, double t) const;
    // Direction of the same geodesic traversed backwards through base.
    virtual Direction reverse_direction(const Point& base, const Direction& dir) const;
    virtual Direction normalize_direction(const Point& base, const Direction& dir) const;
    // Largest t for which shoot(base, dir, .) is minimising and numerically
    // reliable (infinite for a true ray); 0 without a direction parametrisation.
    virtual double ray_horizon(const Point& base, const Direction& dir) const;

    double default_tolerance() const { return mode() == DistanceMode::analytic ? 1e-6 : 1e-3; }

protected:
    void require_size(const Point& p, std::size_t n) const;
};

using SpacePtr = std::shared_ptr<const Space>;

}  // namespace curvelab
