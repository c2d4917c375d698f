#include <algorithm>
#include <cmath>

#include "curvelab/errors.hpp"
#include "curvelab/model_spaces.hpp"
#include "format.hpp"

namespace curvelab {

NormedSpace::NormedSpace(std::size_t dimension, double exponent)
    : n_(dimension), p_(exponent), euclidean_(false) {
    if (n_ == 0) throw DomainError("normed space needs dimension >= 1");
    if (!(p_ > 1.0) || !std::isfinite(p_)) {
        throw DomainError("l^p exponent must lie in (1, inf) for unique affine geodesics, got " +
                          detail::format_number(p_));
    }
}

std::shared_ptr<NormedSpace> NormedSpace::euclidean(std::size_t dimension) {
    auto space = std::make_shared<NormedSpace>(dimension, 2.0);
    space->euclidean_ = true;
    return space;
}

std::string NormedSpace::spec() const {
    if (euclidean_) return "euclidean:" + std::to_string(n_);
    return "lp:" + std::to_string(n_) + ":" + detail::format_number(p_);
}

double NormedSpace::norm(const std::vector<double>& v) const {
    if (p_ == 2.0) {
        double sum = 0.0;
        for (double c : v) sum += c * c;
        return std::sqrt(sum);
    }
    double largest = 0.0;
    for (double c : v) largest = std::max(largest, std::abs(c));
    if (largest == 0.0) return 0.0;
    double sum = 0.0;
    for (double c : v) sum += std::pow(std::abs(c) / largest, p_);
    return largest * std::pow(sum, 1.0 / p_);
}

double NormedSpace::distance(const Point& p, const Point& q) const {
    require_size(p, n_);
    require_size(q, n_);
    std::vector<double> diff(n_);
    for (std::size_t i = 0; i < n_; ++i) diff[i] = q[i] - p[i];
    return norm(diff);
}

GeodesicPath NormedSpace::geodesic(const Point& p, const Point& q) const {
    const double length = distance(p, q);
    return GeodesicPath::analytic(p, q, length, [p, q](double t) {
        Point m(p.size());
        for (std::size_t i = 0; i < p.size(); ++i) m[i] = p[i] + t * (q[i] - p[i]);
        return m;
    });
}

Point NormedSpace::propose(const Point& center, double radius, Rng& rng) const {
    Point x(n_);
    for (std::size_t i = 0; i < n_; ++i) x[i] = center[i] + rng.uniform(-radius, radius);
    return x;
}

Direction NormedSpace::initial_direction(const Point& from, const Point& to) const {
    require_size(from, n_);
    require_size(to, n_);
    Direction v(n_);
    for (std::size_t i = 0; i < n_; ++i) v[i] = to[i] - from[i];
    return normalize_direction(from, v);
}

Point NormedSpace::shoot(const Point& base, const Direction& dir, double t) const {
    Point x(n_);
    for (std::size_t i = 0; i < n_; ++i) x[i] = base[i] + t * dir[i];
    return x;
}

Direction NormedSpace::reverse_direction(const Point&, const Direction& dir) const {
    Direction v(dir);
    for (double& c : v) c = -c;
    return v;
}

Direction NormedSpace::normalize_direction(const Point&, const Direction& dir) const {
    if (dir.size() != n_) throw DomainError(kind() + ": direction has wrong size");
    const double len = norm(dir);
    Direction v(n_, 0.0);
    if (len == 0.0) {
        v[0] = 1.0;
        return v;
    }
    for (std::size_t i = 0; i < n_; ++i) v[i] = dir[i] / len;
    return v;
}

}  // namespace curvelab
