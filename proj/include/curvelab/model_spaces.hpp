#pragma once

#include <array>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "curvelab/space.hpp"

namespace curvelab {

// Finite-dimensional l^p space, p in (1, inf). p = 2 is Euclidean space.
class NormedSpace final : public Space {
public:
    NormedSpace(std::size_t dimension, double exponent);
    static std::shared_ptr<NormedSpace> euclidean(std::size_t dimension);

    double exponent() const noexcept { return p_; }
    double norm(const std::vector<double>& v) const;

    std::string spec() const override;
    std::string kind() const override { return euclidean_ ? "euclidean" : "lp"; }
    DistanceMode mode() const override { return DistanceMode::analytic; }
    std::size_t coordinate_count() const override { return n_; }
    int intrinsic_dimension() const override { return static_cast<int>(n_); }
    Point origin() const override { return Point(n_, 0.0); }

    double distance(const Point& p, const Point& q) const override;
    GeodesicPath geodesic(const Point& p, const Point& q) const override;
    Point propose(const Point& center, double radius, Rng& rng) const override;

    bool has_directions() const override { return true; }
    std::size_t direction_size() const override { return n_; }
    Direction initial_direction(const Point& from, const Point& to) const override;
    Point shoot(const Point& base, const Direction& dir, double t) const override;
    Direction reverse_direction(const Point& base, const Direction& dir) const override;
    Direction normalize_direction(const Point& base, const Direction& dir) const override;
    double ray_horizon(const Point&, const Direction&) const override { return kInfinity; }

private:
    std::size_t n_;
    double p_;
    bool euclidean_;
};

// Round 2-sphere of the given radius; points are unit vectors of R^3.
class SphereSpace final : public Space {
public:
    explicit SphereSpace(double radius);

    double radius() const noexcept { return radius_; }

    std::string spec() const override;
    std::string kind() const override { return "sphere"; }
    DistanceMode mode() const override { return DistanceMode::analytic; }
    std::size_t coordinate_count() const override { return 3; }
    int intrinsic_dimension() const override { return 2; }
    void validate(const Point& p) const override;
    Point origin() const override { return {0.0, 0.0, 1.0}; }

    double distance(const Point& p, const Point& q) const override;
    GeodesicPath geodesic(const Point& p, const Point& q) const override;
    Point chart_interpolate(const Point& p, const Point& q, double t) const override;
    Point retract(const Point& p) const override;
    Point propose(const Point& center, double radius, Rng& rng) const override;
    double diameter() const override;

    bool has_directions() const override { return true; }
    std::size_t direction_size() const override { return 3; }
    Direction initial_direction(const Point& from, const Point& to) const override;
    Point shoot(const Point& base, const Direction& dir, double t) const override;
    Direction reverse_direction(const Point& base, const Direction& dir) const override;
    Direction normalize_direction(const Point& base, const Direction& dir) const override;
    double ray_horizon(const Point&, const Direction&) const override { return diameter(); }

private:
    double radius_;
};

// Circle of total length L with its intrinsic metric; coordinate is arclength mod L.
class CircleSpace final : public Space {
public:
    explicit CircleSpace(double length);

    double length() const noexcept { return length_; }
    double wrap(double theta) const;

    std::string spec() const override;
    std::string kind() const override { return "circle"; }
    DistanceMode mode() const override { return DistanceMode::analytic; }
    std::size_t coordinate_count() const override { return 1; }
    int intrinsic_dimension() const override { return 1; }
    Point canonical(const Point& p) const override { return {wrap(p.at(0))}; }
    Point origin() const override { return {0.0}; }

    double distance(const Point& p, const Point& q) const override;
    GeodesicPath geodesic(const Point& p, const Point& q) const override;
    Point chart_interpolate(const Point& p, const Point& q, double t) const override;
    Point retract(const Point& p) const override { return canonical(p); }
    Point propose(const Point& center, double radius, Rng& rng) const override;
    double diameter() const override { return 0.5 * length_; }

    bool has_directions() const override { return true; }
    std::size_t direction_size() const override { return 1; }
    Direction initial_direction(const Point& from, const Point& to) const override;
    Point shoot(const Point& base, const Direction& dir, double t) const override;
    Direction reverse_direction(const Point& base, const Direction& dir) const override;
    double ray_horizon(const Point&, const Direction&) const override { return diameter(); }
    Direction normalize_direction(const Point& base, const Direction& dir) const override;

private:
    // Signed shortest displacement from a to b, in (-L/2, L/2].
    double displacement(double a, double b) const;
    double length_;
};

double cone_distance(double base_distance, double r, double s);

// Euclidean cone over a bounded base with geodesics. Coordinates are the base
// coordinates followed by the radius r >= 0.
class ConeSpace final : public Space {
public:
    explicit ConeSpace(SpacePtr base);

    const Space& base() const noexcept { return *base_; }
    double base_diameter() const noexcept { return base_diameter_; }
    // The cone construction only yields curvature >= 0 when the base diameter is at most pi.
    bool base_diameter_exceeds_pi() const noexcept { return base_diameter_ > 3.14159265358979323846; }

    std::string spec() const override;
    std::string kind() const override { return "cone"; }
    DistanceMode mode() const override { return base_->mode(); }
    std::size_t coordinate_count() const override { return base_->coordinate_count() + 1; }
    int intrinsic_dimension() const override { return base_->intrinsic_dimension() + 1; }
    void validate(const Point& p) const override;
    Point canonical(const Point& p) const override;
    Point origin() const override;

    double distance(const Point& p, const Point& q) const override;
    GeodesicPath geodesic(const Point& p, const Point& q) const override;
    Point chart_interpolate(const Point& p, const Point& q, double t) const override;
    Point retract(const Point& p) const override;
    Point propose(const Point& center, double radius, Rng& rng) const override;

    bool has_directions() const override { return true; }
    std::size_t direction_size() const override;
    Direction initial_direction(const Point& from, const Point& to) const override;
    Point shoot(const Point& base, const Direction& dir, double t) const override;
    Direction reverse_direction(const Point& base, const Direction& dir) const override;
    Direction normalize_direction(const Point& base, const Direction& dir) const override;
    double ray_horizon(const Point& base, const Direction& dir) const override;

    Point base_part(const Point& p) const;
    double radial_part(const Point& p) const { return p.back(); }
    Point make_point(const Point& base_point, double r) const;

private:
    SpacePtr base_;
    double base_diameter_;
};

// Product with the metric F((d_i)_i), F the l^q norm, q in (1, inf).
class ProductSpace final : public Space {
public:
    ProductSpace(std::vector<SpacePtr> factors, double exponent);

    std::size_t factor_count() const noexcept { return factors_.size(); }
    const Space& factor(std::size_t i) const { return *factors_.at(i); }
    double exponent() const noexcept { return q_; }
    double combine(const std::vector<double>& factor_distances) const;
    Point factor_part(const Point& p, std::size_t i) const;
    Point join(const std::vector<Point>& parts) const;
    Direction factor_direction(const Direction& dir, std::size_t i) const;
    double factor_weight(const Direction& dir, std::size_t i) const;

    std::string spec() const override;
    std::string kind() const override { return "product"; }
    DistanceMode mode() const override;
    std::size_t coordinate_count() const override { return coordinate_offsets_.back(); }
    int intrinsic_dimension() const override;
    void validate(const Point& p) const override;
    Point canonical(const Point& p) const override;
    Point origin() const override;

    double distance(const Point& p, const Point& q) const override;
    GeodesicPath geodesic(const Point& p, const Point& q) const override;
    Point chart_interpolate(const Point& p, const Point& q, double t) const override;
    Point retract(const Point& p) const override;
    Point propose(const Point& center, double radius, Rng& rng) const override;
    double diameter() const override;

    bool has_directions() const override;
    std::size_t direction_size() const override { return direction_offsets_.back(); }
    Direction initial_direction(const Point& from, const Point& to) const override;
    Point shoot(const Point& base, const Direction& dir, double t) const override;
    Direction reverse_direction(const Point& base, const Direction& dir) const override;
    Direction normalize_direction(const Point& base, const Direction& dir) const override;
    double ray_horizon(const Point& base, const Direction& dir) const override;

private:
    std::vector<SpacePtr> factors_;
    double q_;
    std::vector<std::size_t> coordinate_offsets_;
    // Per factor: one weight followed by the factor's direction descriptor.
    std::vector<std::size_t> direction_offsets_;
};

// Bounded open convex set in R^n carrying a Hilbert geometry.
class ConvexBody {
public:
    virtual ~ConvexBody() = default;
    virtual std::size_t dimension() const = 0;
    virtual std::string describe() const = 0;
    virtual bool interior(const Point& p) const = 0;
    // Parameters t_minus < 0 < t_plus where p + t v meets the boundary.
    virtual std::pair<double, double> chord(const Point& p, const std::vector<double>& v) const = 0;
    virtual Point center() const = 0;
    // Axis-aligned bounding box, lower then upper corner.
    virtual std::pair<Point, Point> bounding_box() const = 0;
};

class PolygonBody final : public ConvexBody {
public:
    // Vertices counterclockwise. Three collinear consecutive vertices are
    // rejected unless allow_flat_edges is set.
    explicit PolygonBody(std::vector<std::array<double, 2>> vertices, bool allow_flat_edges = false);
    static PolygonBody load(const std::string& path, bool allow_flat_edges = false);

    const std::vector<std::array<double, 2>>& vertices() const noexcept { return vertices_; }

    std::size_t dimension() const override { return 2; }
    std::string describe() const override;
    bool interior(const Point& p) const override;
    std::pair<double, double> chord(const Point& p, const std::vector<double>& v) const override;
    Point center() const override;
    std::pair<Point, Point> bounding_box() const override;

private:
    std::vector<std::array<double, 2>> vertices_;
    // Edge i: outward normal (nx, ny) and offset c with n . x <= c inside.
    std::vector<std::array<double, 3>> half_planes_;
};

// Axis-aligned ellipse (x/a)^2 + (y/b)^2 < 1; its Hilbert geometry is the Klein model.
class EllipseBody final : public ConvexBody {
public:
    EllipseBody(double semi_x, double semi_y);

    std::size_t dimension() const override { return 2; }
    std::string describe() const override;
    bool interior(const Point& p) const override;
    std::pair<double, double> chord(const Point& p, const std::vector<double>& v) const override;
    Point center() const override { return {0.0, 0.0}; }
    std::pair<Point, Point> bounding_box() const override;

private:
    double a_;
    double b_;
};

class IntervalBody final : public ConvexBody {
public:
    IntervalBody(double lo, double hi);

    std::size_t dimension() const override { return 1; }
    std::string describe() const override;
    bool interior(const Point& p) const override;
    std::pair<double, double> chord(const Point& p, const std::vector<double>& v) const override;
    Point center() const override { return {0.5 * (lo_ + hi_)}; }
    std::pair<Point, Point> bounding_box() const override { return {{lo_}, {hi_}}; }

private:
    double lo_;
    double hi_;
};

double hilbert_distance(const ConvexBody& body, const Point& p, const Point& q);

class HilbertSpace final : public Space {
public:
    HilbertSpace(std::shared_ptr<const ConvexBody> body, std::string spec);

    const ConvexBody& body() const noexcept { return *body_; }

    std::string spec() const override { return spec_; }
    std::string kind() const override { return "hilbert"; }
    DistanceMode mode() const override { return DistanceMode::analytic; }
    std::size_t coordinate_count() const override { return body_->dimension(); }
    int intrinsic_dimension() const override { return static_cast<int>(body_->dimension()); }
    void validate(const Point& p) const override;
    Point origin() const override { return body_->center(); }

    double distance(const Point& p, const Point& q) const override;
    GeodesicPath geodesic(const Point& p, const Point& q) const override;
    Point propose(const Point& center, double radius, Rng& rng) const override;

    bool has_directions() const override { return true; }
    std::size_t direction_size() const override { return body_->dimension(); }
    Direction initial_direction(const Point& from, const Point& to) const override;
    Point shoot(const Point& base, const Direction& dir, double t) const override;
    Direction reverse_direction(const Point& base, const Direction& dir) const override;
    Direction normalize_direction(const Point& base, const Direction& dir) const override;
    // Past this range the boundary gap falls below ~1e-9 and distances lose precision.
    double ray_horizon(const Point&, const Direction&) const override { return 10.0; }

private:
    std::shared_ptr<const ConvexBody> body_;
    std::string spec_;
};

// Heisenberg group with the sub-Riemannian (Carnot-Caratheodory) metric for the
// standard horizontal distribution; group law
// (x,y,z)(x',y',z') = (x+x', y+y', z+z' + (xy' - yx')/2).
Point heisenberg_multiply(const Point& p, const Point& q);
Point heisenberg_inverse(const Point& p);
Point heisenberg_dilate(double lambda, const Point& p);
double heisenberg_distance(const Point& p, const Point& q, double tol = 1e-12);

// Geodesic from the origin with initial heading `heading`, signed curvature of
// its planar projection `curvature`, evaluated at arclength s.
Point heisenberg_arc(double heading, double curvature, double s);

class HeisenbergSpace final : public Space {
public:
    explicit HeisenbergSpace(double tol = 1e-12) : tol_(tol) {}

    std::string spec() const override { return "heisenberg"; }
    std::string kind() const override { return "heisenberg"; }
    DistanceMode mode() const override { return DistanceMode::numeric; }
    std::size_t coordinate_count() const override { return 3; }
    int intrinsic_dimension() const override { return 4; }
    Point origin() const override { return {0.0, 0.0, 0.0}; }

    double distance(const Point& p, const Point& q) const override;
    GeodesicPath geodesic(const Point& p, const Point& q) const override;
    Point propose(const Point& center, double radius, Rng& rng) const override;

    bool has_directions() const override { return true; }
    std::size_t direction_size() const override { return 3; }
    // Descriptor (cos h, sin h, kappa): heading and signed curvature of the projection.
    Direction initial_direction(const Point& from, const Point& to) const override;
    Point shoot(const Point& base, const Direction& dir, double t) const override;
    Direction reverse_direction(const Point& base, const Direction& dir) const override;
    Direction normalize_direction(const Point& base, const Direction& dir) const override;
    double ray_horizon(const Point& base, const Direction& dir) const override;

private:
    double tol_;
};

// The metric lambda * d on an existing space.
class ScaledSpace final : public Space {
public:
    ScaledSpace(double factor, SpacePtr inner);

    double factor() const noexcept { return factor_; }
    const Space& inner() const noexcept { return *inner_; }

    std::string spec() const override;
    std::string kind() const override { return "scaled"; }
    DistanceMode mode() const override { return inner_->mode(); }
    std::size_t coordinate_count() const override { return inner_->coordinate_count(); }
    int intrinsic_dimension() const override { return inner_->intrinsic_dimension(); }
    void validate(const Point& p) const override { inner_->validate(p); }
    Point canonical(const Point& p) const override { return inner_->canonical(p); }
    Point origin() const override { return inner_->origin(); }

    double distance(const Point& p, const Point& q) const override;
    GeodesicPath geodesic(const Point& p, const Point& q) const override;
    Point chart_interpolate(const Point& p, const Point& q, double t) const override;
    Point retract(const Point& p) const override { return inner_->retract(p); }
    Point propose(const Point& center, double radius, Rng& rng) const override;
    double diameter() const override { return factor_ * inner_->diameter(); }

    bool has_directions() const override { return inner_->has_directions(); }
    std::size_t direction_size() const override { return inner_->direction_size(); }
    Direction initial_direction(const Point& from, const Point& to) const override;
    Point shoot(const Point& base, const Direction& dir, double t) const override;
    Direction reverse_direction(const Point& base, const Direction& dir) const override;
    Direction normalize_direction(const Point& base, const Direction& dir) const override;
    double ray_horizon(const Point& base, const Direction& dir) const override;

private:
    double factor_;
    SpacePtr inner_;
};

// Parse a space spec string; throws ParseError or DomainError.
SpacePtr make_space(const std::string& spec);

struct SpaceKindInfo {
    std::string pattern;
    std::string description;
};
std::vector<SpaceKindInfo> space_registry();

}  // namespace curvelab
