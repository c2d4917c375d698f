#include <cmath>
#include <numbers>

#include "curvelab/errors.hpp"
#include "curvelab/model_spaces.hpp"
#include "format.hpp"

namespace curvelab {

namespace {

using Vec3 = std::array<double, 3>;

Vec3 as_vec(const Point& p) { return {p[0], p[1], p[2]}; }
double dot(const Vec3& a, const Vec3& b) { return a[0] * b[0] + a[1] * b[1] + a[2] * b[2]; }
Vec3 cross(const Vec3& a, const Vec3& b) {
    return {a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]};
}
double norm(const Vec3& a) { return std::sqrt(dot(a, a)); }

Point unit(const Vec3& a) {
    const double n = norm(a);
    return {a[0] / n, a[1] / n, a[2] / n};
}

// Lexicographically smallest unit tangent vector at p.
Vec3 lexmin_tangent(const Vec3& p) {
    for (int k = 0; k < 3; ++k) {
        Vec3 w{0.0, 0.0, 0.0};
        w[k] = -1.0;
        const double along = dot(w, p);
        for (int i = 0; i < 3; ++i) w[i] -= along * p[i];
        const double n = norm(w);
        if (n > 1e-8) return {w[0] / n, w[1] / n, w[2] / n};
    }
    return {1.0, 0.0, 0.0};
}

}  // namespace

SphereSpace::SphereSpace(double radius) : radius_(radius) {
    if (!(radius_ > 0.0) || !std::isfinite(radius_)) throw DomainError("sphere radius must be positive");
}

std::string SphereSpace::spec() const { return "sphere:" + detail::format_number(radius_); }

void SphereSpace::validate(const Point& p) const {
    require_size(p, 3);
    if (std::abs(norm(as_vec(p)) - 1.0) > 1e-12) {
        throw DomainError("sphere: coordinates must be a unit vector");
    }
}

double SphereSpace::diameter() const { return std::numbers::pi * radius_; }

double SphereSpace::distance(const Point& p, const Point& q) const {
    validate(p);
    validate(q);
    const Vec3 a = as_vec(p);
    const Vec3 b = as_vec(q);
    return radius_ * std::atan2(norm(cross(a, b)), dot(a, b));
}

Direction SphereSpace::initial_direction(const Point& from, const Point& to) const {
    validate(from);
    validate(to);
    const Vec3 p = as_vec(from);
    const Vec3 q = as_vec(to);
    const double along = dot(p, q);
    Vec3 v{q[0] - along * p[0], q[1] - along * p[1], q[2] - along * p[2]};
    const double n = norm(v);
    if (n < 1e-14) {
        const Vec3 w = lexmin_tangent(p);
        return {w[0], w[1], w[2]};
    }
    return {v[0] / n, v[1] / n, v[2] / n};
}

Point SphereSpace::shoot(const Point& base, const Direction& dir, double t) const {
    const double angle = t / radius_;
    const double c = std::cos(angle);
    const double s = std::sin(angle);
    return unit({c * base[0] + s * dir[0], c * base[1] + s * dir[1], c * base[2] + s * dir[2]});
}

GeodesicPath SphereSpace::geodesic(const Point& p, const Point& q) const {
    const double length = distance(p, q);
    if (length == 0.0) return GeodesicPath::constant(p);
    const Direction v = initial_direction(p, q);
    const double angle = length / radius_;
    return GeodesicPath::analytic(p, q, length, [p, v, angle](double t) {
        const double c = std::cos(t * angle);
        const double s = std::sin(t * angle);
        return unit({c * p[0] + s * v[0], c * p[1] + s * v[1], c * p[2] + s * v[2]});
    });
}

Direction SphereSpace::reverse_direction(const Point&, const Direction& dir) const {
    return {-dir[0], -dir[1], -dir[2]};
}

Direction SphereSpace::normalize_direction(const Point& base, const Direction& dir) const {
    if (dir.size() != 3) throw DomainError("sphere: direction must have 3 components");
    const Vec3 p = as_vec(base);
    const double along = dir[0] * p[0] + dir[1] * p[1] + dir[2] * p[2];
    const Vec3 v{dir[0] - along * p[0], dir[1] - along * p[1], dir[2] - along * p[2]};
    if (norm(v) < 1e-14) {
        const Vec3 w = lexmin_tangent(p);
        return {w[0], w[1], w[2]};
    }
    return unit(v);
}

Point SphereSpace::chart_interpolate(const Point& p, const Point& q, double t) const {
    return retract({(1.0 - t) * p[0] + t * q[0], (1.0 - t) * p[1] + t * q[1], (1.0 - t) * p[2] + t * q[2]});
}

Point SphereSpace::retract(const Point& p) const {
    const Vec3 v = as_vec(p);
    if (norm(v) == 0.0) return origin();
    return unit(v);
}

Point SphereSpace::propose(const Point& center, double radius, Rng& rng) const {
    const double cap = std::min(radius / radius_, std::numbers::pi);
    const Vec3 c = as_vec(center);
    const Vec3 e1 = lexmin_tangent(c);
    const Vec3 e2 = cross(c, e1);
    // Uniform on the cap: the height along the axis is uniform.
    const double z = 1.0 - rng.uniform() * (1.0 - std::cos(cap));
    const double phi = rng.uniform(0.0, 2.0 * std::numbers::pi);
    const double rho = std::sqrt(std::max(0.0, 1.0 - z * z));
    const double a = rho * std::cos(phi);
    const double b = rho * std::sin(phi);
    return unit({z * c[0] + a * e1[0] + b * e2[0], z * c[1] + a * e1[1] + b * e2[1],
                 z * c[2] + a * e1[2] + b * e2[2]});
}

}  // namespace curvelab
