#include <cmath>

#include "curvelab/errors.hpp"
#include "curvelab/model_spaces.hpp"
#include "format.hpp"

namespace curvelab {

CircleSpace::CircleSpace(double length) : length_(length) {
    if (!(length_ > 0.0) || !std::isfinite(length_)) throw DomainError("circle length must be positive");
}

std::string CircleSpace::spec() const { return "circle:" + detail::format_number(length_); }

namespace {

double wrap_to(double theta, double length) {
    double w = std::fmod(theta, length);
    if (w < 0.0) w += length;
    if (w >= length) w = 0.0;
    return w;
}

}  // namespace

double CircleSpace::wrap(double theta) const { return wrap_to(theta, length_); }

double CircleSpace::displacement(double a, double b) const {
    double d = wrap(b - a);
    if (d > 0.5 * length_) d -= length_;
    return d;
}

double CircleSpace::distance(const Point& p, const Point& q) const {
    require_size(p, 1);
    require_size(q, 1);
    return std::abs(displacement(p[0], q[0]));
}

GeodesicPath CircleSpace::geodesic(const Point& p, const Point& q) const {
    require_size(p, 1);
    require_size(q, 1);
    const double delta = displacement(p[0], q[0]);
    return GeodesicPath::analytic(p, q, std::abs(delta), [start = p[0], delta, length = length_](double t) {
        return Point{wrap_to(start + t * delta, length)};
    });
}

Point CircleSpace::chart_interpolate(const Point& p, const Point& q, double t) const {
    return {wrap(p[0] + t * displacement(p[0], q[0]))};
}

Point CircleSpace::propose(const Point& center, double radius, Rng& rng) const {
    const double reach = std::min(radius, 0.5 * length_);
    return {wrap(center[0] + rng.uniform(-reach, reach))};
}

Direction CircleSpace::initial_direction(const Point& from, const Point& to) const {
    require_size(from, 1);
    require_size(to, 1);
    return {displacement(from[0], to[0]) < 0.0 ? -1.0 : 1.0};
}

Point CircleSpace::shoot(const Point& base, const Direction& dir, double t) const {
    return {wrap(base[0] + dir[0] * t)};
}

Direction CircleSpace::reverse_direction(const Point&, const Direction& dir) const { return {-dir[0]}; }

Direction CircleSpace::normalize_direction(const Point&, const Direction& dir) const {
    if (dir.size() != 1) throw DomainError("circle: direction must have 1 component");
    return {dir[0] < 0.0 ? -1.0 : 1.0};
}

}  // namespace curvelab
