#pragma once

#include <optional>
#include <vector>

#include "curvelab/convexity.hpp"
#include "curvelab/ray.hpp"
#include "curvelab/report.hpp"
#include "curvelab/sampling.hpp"

namespace curvelab {

struct BusemannEstimate {
    double value = 0.0;       // T - d(ray(T), x)
    double horizon = 0.0;     // T
    double increment = 0.0;   // value(T) - value(T/2)
    double upper_bound = 0.0; // d(x, ray(0))

    // One Richardson step for the O(1/T) tail.
    double extrapolated() const { return value + increment; }
    double bracket_low() const { return value; }
    double bracket_high() const { return value + 2.0 * increment; }
};

// Doubling schedule T/2^(levels-1), ..., T/2, T.
std::vector<double> doubling_schedule(double horizon, std::size_t levels = 11);

// Throws ConsistencyError when t - d(ray(t), x) decreases by more than
// 1e-9 * max(1, t) along the schedule.
BusemannEstimate busemann_value(const Ray& ray, const Point& x, double horizon);

// Ray from x asymptotic to `ray`: the limit of the directions x -> ray(t_n),
// extrapolated once. Throws NonConvergenceError when the extrapolated
// directions are not Cauchy at 10*tol or the ray fails b(eta(t)) = t + b(x).
Ray asymptotic_ray(const Point& x, const Ray& ray, const std::vector<double>& schedule, double tol);

struct CheegerGromollValue {
    double value = 0.0;
    double half_family_value = 0.0;  // sup over the first half of the family
    std::size_t family_size = 0;
    std::size_t best_ray = 0;
};

CheegerGromollValue cheeger_gromoll_value(const std::vector<Ray>& rays, const Point& x, double horizon);

// Rays from x0 in `count` directions of the chart. Nested: the first half of
// ray_family(.., 2n, ..) equals ray_family(.., n, ..).
std::vector<Ray> ray_family(const Space& space, const Point& x0, std::size_t count, double horizon,
                            std::uint64_t seed = 1);

// Doubles the family from `start` rays until the value moves by less than tol.
CheegerGromollValue cheeger_gromoll_adaptive(const Space& space, const Point& x0, const Point& x, double horizon,
                                             double tol, std::size_t start = 256, std::size_t max_rays = 1 << 16);

// The Cheeger-Gromoll function of x0 as a scalar field.
ScalarField cheeger_gromoll_field(const Space& space, const Point& x0, std::size_t rays, double horizon);

// margin = d(eta(t+a), xi(s+a)) - d(eta(t), xi(s)) over consecutive sample
// pairs, eta and xi asymptotic to `ray` from the same schedule.
CheckReport check_ray_contraction(const Ray& ray, const std::vector<Point>& samples,
                                  const std::vector<double>& a_grid, const std::vector<double>& schedule,
                                  std::optional<double> tol = {});

// margin = -(b+(x) + b-(x)) with extrapolated estimates; the tolerance is
// widened by the largest bracket half-width met.
CheckReport check_line_inequality(const Line& line, const SamplerConfig& sampler, double horizon,
                                  std::optional<double> tol = {});

}  // namespace curvelab
