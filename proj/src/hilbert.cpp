#include <algorithm>
#include <cmath>
#include <fstream>
#include <numbers>
#include <sstream>

#include "curvelab/errors.hpp"
#include "curvelab/model_spaces.hpp"
#include "format.hpp"

namespace curvelab {

PolygonBody::PolygonBody(std::vector<std::array<double, 2>> vertices, bool allow_flat_edges)
    : vertices_(std::move(vertices)) {
    const std::size_t n = vertices_.size();
    if (n < 3) throw DomainError("polygon needs at least 3 vertices");
    double scale = 0.0;
    for (const auto& v : vertices_) scale = std::max({scale, std::abs(v[0]), std::abs(v[1])});
    const double eps = 1e-12 * std::max(scale * scale, 1e-300);
    double turning = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const auto& a = vertices_[i];
        const auto& b = vertices_[(i + 1) % n];
        const auto& c = vertices_[(i + 2) % n];
        const double cross = (b[0] - a[0]) * (c[1] - b[1]) - (b[1] - a[1]) * (c[0] - b[0]);
        if (cross < -eps) throw DomainError("polygon is not convex and counterclockwise");
        if (cross <= eps && !allow_flat_edges) {
            throw DomainError("polygon has three collinear vertices (flat edges not allowed)");
        }
        turning += std::atan2(cross, (b[0] - a[0]) * (c[0] - b[0]) + (b[1] - a[1]) * (c[1] - b[1]));
    }
    // A convex counterclockwise polygon turns exactly once.
    if (std::abs(turning - 2.0 * std::numbers::pi) > 1e-6) {
        throw DomainError("polygon boundary winds more than once");
    }
    for (std::size_t i = 0; i < n; ++i) {
        const auto& a = vertices_[i];
        const auto& b = vertices_[(i + 1) % n];
        const double ex = b[0] - a[0];
        const double ey = b[1] - a[1];
        const double len = std::hypot(ex, ey);
        if (len == 0.0) throw DomainError("polygon has repeated vertices");
        const double nx = ey / len;
        const double ny = -ex / len;
        half_planes_.push_back({nx, ny, nx * a[0] + ny * a[1]});
    }
}

PolygonBody PolygonBody::load(const std::string& path, bool allow_flat_edges) {
    std::ifstream in(path);
    if (!in) throw InputError("cannot open polygon file '" + path + "'");
    std::vector<std::array<double, 2>> vertices;
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        std::istringstream fields(line);
        double x = 0.0;
        double y = 0.0;
        if (!(fields >> x)) continue;
        std::string rest;
        if (!(fields >> y) || (fields >> rest)) {
            throw ParseError(path + ":" + std::to_string(line_no) + ": expected 'x y'");
        }
        vertices.push_back({x, y});
    }
    return PolygonBody(std::move(vertices), allow_flat_edges);
}

std::string PolygonBody::describe() const {
    return "polygon with " + std::to_string(vertices_.size()) + " vertices";
}

bool PolygonBody::interior(const Point& p) const {
    if (p.size() != 2) return false;
    for (const auto& h : half_planes_) {
        if (!(h[0] * p[0] + h[1] * p[1] < h[2])) return false;
    }
    return true;
}

std::pair<double, double> PolygonBody::chord(const Point& p, const std::vector<double>& v) const {
    double lo = -kInfinity;
    double hi = kInfinity;
    for (const auto& h : half_planes_) {
        const double slack = h[2] - (h[0] * p[0] + h[1] * p[1]);
        const double rate = h[0] * v[0] + h[1] * v[1];
        if (rate > 0.0) {
            hi = std::min(hi, slack / rate);
        } else if (rate < 0.0) {
            lo = std::max(lo, slack / rate);
        }
    }
    return {lo, hi};
}

Point PolygonBody::center() const {
    double x = 0.0;
    double y = 0.0;
    for (const auto& v : vertices_) {
        x += v[0];
        y += v[1];
    }
    const auto n = static_cast<double>(vertices_.size());
    return {x / n, y / n};
}

std::pair<Point, Point> PolygonBody::bounding_box() const {
    Point lo{kInfinity, kInfinity};
    Point hi{-kInfinity, -kInfinity};
    for (const auto& v : vertices_) {
        for (int k = 0; k < 2; ++k) {
            lo[k] = std::min(lo[k], v[k]);
            hi[k] = std::max(hi[k], v[k]);
        }
    }
    return {lo, hi};
}

EllipseBody::EllipseBody(double semi_x, double semi_y) : a_(semi_x), b_(semi_y) {
    if (!(a_ > 0.0) || !(b_ > 0.0)) throw DomainError("ellipse semi-axes must be positive");
}

std::string EllipseBody::describe() const {
    return "ellipse " + detail::format_number(a_) + " x " + detail::format_number(b_);
}

bool EllipseBody::interior(const Point& p) const {
    if (p.size() != 2) return false;
    const double u = p[0] / a_;
    const double w = p[1] / b_;
    return u * u + w * w < 1.0;
}

std::pair<double, double> EllipseBody::chord(const Point& p, const std::vector<double>& v) const {
    // Solve |A(p + t v)|^2 = 1 in the normalised frame.
    const double px = p[0] / a_;
    const double py = p[1] / b_;
    const double vx = v[0] / a_;
    const double vy = v[1] / b_;
    const double qa = vx * vx + vy * vy;
    const double qb = px * vx + py * vy;
    const double qc = 1.0 - (px * px + py * py);  // > 0 inside
    const double root = std::sqrt(qb * qb + qa * qc);
    // Roots t = (-qb -+ root)/qa, written to avoid cancellation.
    if (qb >= 0.0) {
        const double big = -qb - root;
        return {big / qa, -qc / big};
    }
    const double big = -qb + root;
    return {-qc / big, big / qa};
}

std::pair<Point, Point> EllipseBody::bounding_box() const { return {{-a_, -b_}, {a_, b_}}; }

IntervalBody::IntervalBody(double lo, double hi) : lo_(lo), hi_(hi) {
    if (!(lo_ < hi_)) throw DomainError("interval body needs lo < hi");
}

std::string IntervalBody::describe() const {
    return "interval (" + detail::format_number(lo_) + ", " + detail::format_number(hi_) + ")";
}

bool IntervalBody::interior(const Point& p) const { return p.size() == 1 && p[0] > lo_ && p[0] < hi_; }

std::pair<double, double> IntervalBody::chord(const Point& p, const std::vector<double>& v) const {
    const double a = (lo_ - p[0]) / v[0];
    const double b = (hi_ - p[0]) / v[0];
    return {std::min(a, b), std::max(a, b)};
}

namespace {

std::vector<double> difference(const Point& p, const Point& q) {
    std::vector<double> v(p.size());
    for (std::size_t i = 0; i < p.size(); ++i) v[i] = q[i] - p[i];
    return v;
}

// Chord parameter u in [0, 1] of the point at Hilbert distance `s` from p
// along p + u v, given boundary parameters lo < 0 < 1 < hi (or any hi > 0 for rays).
double chord_parameter(double lo, double hi, double s) {
    const double e = std::expm1(2.0 * s);
    return (-lo) * hi * e / ((hi - lo) + e * (-lo));
}

}  // namespace

double hilbert_distance(const ConvexBody& body, const Point& p, const Point& q) {
    if (!body.interior(p) || !body.interior(q)) {
        throw DomainError("hilbert: points must lie strictly inside the body");
    }
    if (p == q) return 0.0;
    const auto v = difference(p, q);
    const auto [lo, hi] = body.chord(p, v);
    if (!(lo < 0.0) || !(hi > 1.0)) throw DomainError("hilbert: degenerate chord");
    // Half the log cross-ratio, split into two log1p terms that stay accurate
    // for nearby points.
    return 0.5 * (std::log1p(1.0 / (-lo)) + std::log1p(1.0 / (hi - 1.0)));
}

HilbertSpace::HilbertSpace(std::shared_ptr<const ConvexBody> body, std::string spec)
    : body_(std::move(body)), spec_(std::move(spec)) {
    if (!body_) throw DomainError("hilbert space needs a body");
}

void HilbertSpace::validate(const Point& p) const {
    require_size(p, body_->dimension());
    if (!body_->interior(p)) throw DomainError("hilbert: point outside the open body");
}

double HilbertSpace::distance(const Point& p, const Point& q) const {
    require_size(p, body_->dimension());
    require_size(q, body_->dimension());
    return hilbert_distance(*body_, p, q);
}

GeodesicPath HilbertSpace::geodesic(const Point& p, const Point& q) const {
    const double length = distance(p, q);
    if (length == 0.0) return GeodesicPath::constant(p);
    const auto v = difference(p, q);
    const auto [lo, hi] = body_->chord(p, v);
    // Straight chords are geodesics; reparametrise them to constant Hilbert speed.
    return GeodesicPath::analytic(p, q, length, [p, v, lo = lo, hi = hi, length](double t) {
        const double u = chord_parameter(lo, hi, t * length);
        Point m(p.size());
        for (std::size_t i = 0; i < p.size(); ++i) m[i] = p[i] + u * v[i];
        return m;
    });
}

Point HilbertSpace::propose(const Point& center, double radius, Rng& rng) const {
    const std::size_t n = body_->dimension();
    auto [box_lo, box_hi] = body_->bounding_box();
    Point lo(n, kInfinity);
    Point hi(n, -kInfinity);
    // Extent of the Hilbert ball along a fan of directions.
    const int fan = n == 1 ? 2 : 96;
    for (int k = 0; k < fan; ++k) {
        std::vector<double> v(n);
        if (n == 1) {
            v[0] = k == 0 ? 1.0 : -1.0;
        } else {
            const double angle = 2.0 * std::numbers::pi * k / fan;
            v[0] = std::cos(angle);
            v[1] = std::sin(angle);
        }
        const auto [tlo, thi] = body_->chord(center, v);
        const double u = chord_parameter(tlo, thi, radius);
        for (std::size_t i = 0; i < n; ++i) {
            const double x = center[i] + u * v[i];
            lo[i] = std::min(lo[i], x);
            hi[i] = std::max(hi[i], x);
        }
    }
    Point x(n);
    for (std::size_t i = 0; i < n; ++i) {
        lo[i] = std::min(lo[i], center[i]);
        hi[i] = std::max(hi[i], center[i]);
        const double pad = 0.05 * (hi[i] - lo[i]);
        const double a = std::max(box_lo[i], lo[i] - pad);
        const double b = std::min(box_hi[i], hi[i] + pad);
        x[i] = rng.uniform(a, b);
    }
    return x;
}

Direction HilbertSpace::initial_direction(const Point& from, const Point& to) const {
    validate(from);
    validate(to);
    return normalize_direction(from, difference(from, to));
}

Point HilbertSpace::shoot(const Point& base, const Direction& dir, double t) const {
    const auto [lo, hi] = body_->chord(base, dir);
    const double u = chord_parameter(lo, hi, t);
    Point x(base.size());
    for (std::size_t i = 0; i < base.size(); ++i) x[i] = base[i] + u * dir[i];
    return x;
}

Direction HilbertSpace::reverse_direction(const Point&, const Direction& dir) const {
    Direction v(dir);
    for (double& c : v) c = -c;
    return v;
}

Direction HilbertSpace::normalize_direction(const Point&, const Direction& dir) const {
    if (dir.size() != body_->dimension()) throw DomainError("hilbert: direction has wrong size");
    double len = 0.0;
    for (double c : dir) len += c * c;
    len = std::sqrt(len);
    Direction v(dir.size(), 0.0);
    if (len == 0.0) {
        v[0] = 1.0;
        return v;
    }
    for (std::size_t i = 0; i < dir.size(); ++i) v[i] = dir[i] / len;
    return v;
}

}  // namespace curvelab
