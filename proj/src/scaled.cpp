#include <cmath>

#include "curvelab/errors.hpp"
#include "curvelab/model_spaces.hpp"
#include "format.hpp"

namespace curvelab {

ScaledSpace::ScaledSpace(double factor, SpacePtr inner) : factor_(factor), inner_(std::move(inner)) {
    if (!(factor_ > 0.0) || !std::isfinite(factor_)) throw DomainError("scale factor must be positive");
    if (!inner_) throw DomainError("scaled space needs an inner space");
}

std::string ScaledSpace::spec() const {
    return "scaled:" + detail::format_number(factor_) + ":" + inner_->spec();
}

double ScaledSpace::distance(const Point& p, const Point& q) const {
    return factor_ * inner_->distance(p, q);
}

GeodesicPath ScaledSpace::geodesic(const Point& p, const Point& q) const {
    GeodesicPath inner_path = inner_->geodesic(p, q);
    const double length = factor_ * inner_path.length();
    return GeodesicPath::analytic(p, q, length, [path = std::move(inner_path)](double t) { return path.at(t); });
}

Point ScaledSpace::chart_interpolate(const Point& p, const Point& q, double t) const {
    return inner_->chart_interpolate(p, q, t);
}

Point ScaledSpace::propose(const Point& center, double radius, Rng& rng) const {
    return inner_->propose(center, radius / factor_, rng);
}

Direction ScaledSpace::initial_direction(const Point& from, const Point& to) const {
    return inner_->initial_direction(from, to);
}

Point ScaledSpace::shoot(const Point& base, const Direction& dir, double t) const {
    return inner_->shoot(base, dir, t / factor_);
}

Direction ScaledSpace::reverse_direction(const Point& base, const Direction& dir) const {
    return inner_->reverse_direction(base, dir);
}

Direction ScaledSpace::normalize_direction(const Point& base, const Direction& dir) const {
    return inner_->normalize_direction(base, dir);
}

double ScaledSpace::ray_horizon(const Point& base, const Direction& dir) const {
    return factor_ * inner_->ray_horizon(base, dir);
}

}  // namespace curvelab
