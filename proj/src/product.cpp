#include <algorithm>
#include <cmath>

#include "curvelab/errors.hpp"
#include "curvelab/model_spaces.hpp"
#include "format.hpp"

namespace curvelab {

ProductSpace::ProductSpace(std::vector<SpacePtr> factors, double exponent)
    : factors_(std::move(factors)), q_(exponent) {
    if (factors_.empty()) throw DomainError("product needs at least one factor");
    if (!(q_ > 1.0) || !std::isfinite(q_)) {
        throw DomainError("product norm exponent must lie in (1, inf) for strict convexity, got " +
                          detail::format_number(q_));
    }
    coordinate_offsets_.push_back(0);
    direction_offsets_.push_back(0);
    for (const auto& f : factors_) {
        if (!f) throw DomainError("product factor is null");
        coordinate_offsets_.push_back(coordinate_offsets_.back() + f->coordinate_count());
        direction_offsets_.push_back(direction_offsets_.back() + 1 + f->direction_size());
    }
}

std::string ProductSpace::spec() const {
    std::string out = "product:l" + detail::format_number(q_) + ":";
    for (std::size_t i = 0; i < factors_.size(); ++i) {
        if (i) out += ",";
        const std::string inner = factors_[i]->spec();
        // Nested products are bracketed so the comma split stays unambiguous.
        out += inner.find(',') == std::string::npos ? inner : "[" + inner + "]";
    }
    return out;
}

DistanceMode ProductSpace::mode() const {
    for (const auto& f : factors_) {
        if (f->mode() == DistanceMode::numeric) return DistanceMode::numeric;
    }
    return DistanceMode::analytic;
}

int ProductSpace::intrinsic_dimension() const {
    int n = 0;
    for (const auto& f : factors_) n += f->intrinsic_dimension();
    return n;
}

double ProductSpace::combine(const std::vector<double>& d) const {
    double largest = 0.0;
    for (double x : d) largest = std::max(largest, std::abs(x));
    if (largest == 0.0 || !std::isfinite(largest)) return largest;
    if (q_ == 2.0) {
        double sum = 0.0;
        for (double x : d) sum += x * x;
        return std::sqrt(sum);
    }
    double sum = 0.0;
    for (double x : d) sum += std::pow(std::abs(x) / largest, q_);
    return largest * std::pow(sum, 1.0 / q_);
}

Point ProductSpace::factor_part(const Point& p, std::size_t i) const {
    return Point(p.begin() + static_cast<std::ptrdiff_t>(coordinate_offsets_[i]),
                 p.begin() + static_cast<std::ptrdiff_t>(coordinate_offsets_[i + 1]));
}

Point ProductSpace::join(const std::vector<Point>& parts) const {
    Point out;
    out.reserve(coordinate_count());
    for (const auto& part : parts) out.insert(out.end(), part.begin(), part.end());
    return out;
}

double ProductSpace::factor_weight(const Direction& dir, std::size_t i) const {
    return dir.at(direction_offsets_[i]);
}

Direction ProductSpace::factor_direction(const Direction& dir, std::size_t i) const {
    return Direction(dir.begin() + static_cast<std::ptrdiff_t>(direction_offsets_[i] + 1),
                     dir.begin() + static_cast<std::ptrdiff_t>(direction_offsets_[i + 1]));
}

void ProductSpace::validate(const Point& p) const {
    require_size(p, coordinate_count());
    for (std::size_t i = 0; i < factors_.size(); ++i) factors_[i]->validate(factor_part(p, i));
}

Point ProductSpace::canonical(const Point& p) const {
    std::vector<Point> parts;
    for (std::size_t i = 0; i < factors_.size(); ++i) parts.push_back(factors_[i]->canonical(factor_part(p, i)));
    return join(parts);
}

Point ProductSpace::origin() const {
    std::vector<Point> parts;
    for (const auto& f : factors_) parts.push_back(f->origin());
    return join(parts);
}

double ProductSpace::distance(const Point& p, const Point& q) const {
    require_size(p, coordinate_count());
    require_size(q, coordinate_count());
    std::vector<double> d(factors_.size());
    for (std::size_t i = 0; i < factors_.size(); ++i) {
        d[i] = factors_[i]->distance(factor_part(p, i), factor_part(q, i));
    }
    return combine(d);
}

GeodesicPath ProductSpace::geodesic(const Point& p, const Point& q) const {
    const double length = distance(p, q);
    std::vector<GeodesicPath> paths;
    for (std::size_t i = 0; i < factors_.size(); ++i) {
        paths.push_back(factors_[i]->geodesic(factor_part(p, i), factor_part(q, i)));
    }
    return GeodesicPath::analytic(p, q, length, [paths = std::move(paths)](double t) {
        Point out;
        for (const auto& path : paths) {
            const Point part = path.at(t);
            out.insert(out.end(), part.begin(), part.end());
        }
        return out;
    });
}

Point ProductSpace::chart_interpolate(const Point& p, const Point& q, double t) const {
    std::vector<Point> parts;
    for (std::size_t i = 0; i < factors_.size(); ++i) {
        parts.push_back(factors_[i]->chart_interpolate(factor_part(p, i), factor_part(q, i), t));
    }
    return join(parts);
}

Point ProductSpace::retract(const Point& p) const {
    std::vector<Point> parts;
    for (std::size_t i = 0; i < factors_.size(); ++i) parts.push_back(factors_[i]->retract(factor_part(p, i)));
    return join(parts);
}

Point ProductSpace::propose(const Point& center, double radius, Rng& rng) const {
    std::vector<Point> parts;
    for (std::size_t i = 0; i < factors_.size(); ++i) {
        parts.push_back(factors_[i]->propose(factor_part(center, i), radius, rng));
    }
    return join(parts);
}

double ProductSpace::diameter() const {
    std::vector<double> d;
    for (const auto& f : factors_) d.push_back(f->diameter());
    return combine(d);
}

bool ProductSpace::has_directions() const {
    return std::all_of(factors_.begin(), factors_.end(), [](const SpacePtr& f) { return f->has_directions(); });
}

// Descriptor: for each factor a weight a_i >= 0 (with F(a) = 1) followed by the
// factor's own descriptor. The factor moves at speed a_i.
Direction ProductSpace::initial_direction(const Point& from, const Point& to) const {
    std::vector<double> d(factors_.size());
    for (std::size_t i = 0; i < factors_.size(); ++i) {
        d[i] = factors_[i]->distance(factor_part(from, i), factor_part(to, i));
    }
    const double total = combine(d);
    Direction dir;
    for (std::size_t i = 0; i < factors_.size(); ++i) {
        const double weight = total > 0.0 ? d[i] / total : (i == 0 ? 1.0 : 0.0);
        dir.push_back(weight);
        const Direction fd = factors_[i]->initial_direction(factor_part(from, i), factor_part(to, i));
        dir.insert(dir.end(), fd.begin(), fd.end());
    }
    return dir;
}

Point ProductSpace::shoot(const Point& base, const Direction& dir, double t) const {
    std::vector<Point> parts;
    for (std::size_t i = 0; i < factors_.size(); ++i) {
        const double weight = factor_weight(dir, i);
        const Point x = factor_part(base, i);
        parts.push_back(weight > 0.0 ? factors_[i]->shoot(x, factor_direction(dir, i), weight * t) : x);
    }
    return join(parts);
}

Direction ProductSpace::reverse_direction(const Point& base, const Direction& dir) const {
    Direction out;
    for (std::size_t i = 0; i < factors_.size(); ++i) {
        const double weight = factor_weight(dir, i);
        out.push_back(weight);
        const Direction fd = factor_direction(dir, i);
        const Direction rev = weight > 0.0 ? factors_[i]->reverse_direction(factor_part(base, i), fd) : fd;
        out.insert(out.end(), rev.begin(), rev.end());
    }
    return out;
}

Direction ProductSpace::normalize_direction(const Point& base, const Direction& dir) const {
    if (dir.size() != direction_size()) throw DomainError("product: direction has wrong size");
    std::vector<double> weights(factors_.size());
    double largest = 0.0;
    for (std::size_t i = 0; i < factors_.size(); ++i) {
        weights[i] = std::max(0.0, factor_weight(dir, i));
        largest = std::max(largest, weights[i]);
    }
    if (largest == 0.0) throw DomainError("product: all factor weights vanish");
    for (double& w : weights) {
        if (w < 1e-12 * largest) w = 0.0;
    }
    const double total = combine(weights);
    Direction out;
    for (std::size_t i = 0; i < factors_.size(); ++i) {
        out.push_back(weights[i] / total);
        Direction fd = factor_direction(dir, i);
        if (weights[i] > 0.0) fd = factors_[i]->normalize_direction(factor_part(base, i), fd);
        out.insert(out.end(), fd.begin(), fd.end());
    }
    return out;
}

double ProductSpace::ray_horizon(const Point& base, const Direction& dir) const {
    double horizon = kInfinity;
    bool moving = false;
    for (std::size_t i = 0; i < factors_.size(); ++i) {
        const double weight = factor_weight(dir, i);
        if (weight <= 0.0) continue;
        moving = true;
        horizon = std::min(horizon, factors_[i]->ray_horizon(factor_part(base, i), factor_direction(dir, i)) / weight);
    }
    return moving ? horizon : 0.0;
}

}  // namespace curvelab
