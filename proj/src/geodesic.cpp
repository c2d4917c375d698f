#include "curvelab/geodesic.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "curvelab/errors.hpp"
#include "curvelab/space.hpp"

namespace curvelab {

GeodesicPath GeodesicPath::analytic(Point start, Point end, double length, Evaluator eval) {
    GeodesicPath path;
    path.start_ = std::move(start);
    path.end_ = std::move(end);
    path.length_ = length;
    path.eval_ = std::move(eval);
    return path;
}

GeodesicPath GeodesicPath::constant(const Point& p) {
    return analytic(p, p, 0.0, [p](double) { return p; });
}

GeodesicPath GeodesicPath::discrete(const Space& space, std::vector<Point> vertices, double length,
                                    double residual) {
    if (vertices.size() < 2) throw DomainError("discrete geodesic needs at least two vertices");
    GeodesicPath path;
    path.start_ = vertices.front();
    path.end_ = vertices.back();
    path.length_ = length;
    path.space_ = &space;
    path.vertices_ = std::move(vertices);
    path.residual_ = residual;
    return path;
}

Point GeodesicPath::at(double t) const {
    if (t <= 0.0) return start_;
    if (t >= 1.0) return end_;
    if (!space_) return eval_(t);
    const double segments = static_cast<double>(vertices_.size() - 1);
    const double x = t * segments;
    const auto i = std::min(static_cast<std::size_t>(x), vertices_.size() - 2);
    const double frac = x - static_cast<double>(i);
    if (frac == 0.0) return vertices_[i];
    return space_->chart_interpolate(vertices_[i], vertices_[i + 1], frac);
}

namespace {

double objective(const Space& space, const Point& a, const Point& b, const Point& m) {
    try {
        const double da = space.distance(a, m);
        const double db = space.distance(m, b);
        return da * da + db * db;
    } catch (const DomainError&) {
        return kInfinity;
    }
}

}  // namespace

Point local_midpoint(const Space& space, const Point& a, const Point& b, const Point& guess,
                     double tol) {
    double chart_span = 0.0;
    for (std::size_t j = 0; j < a.size(); ++j) chart_span = std::max(chart_span, std::abs(a[j] - b[j]));
    double step = std::max(0.25 * chart_span, tol);
    const double min_step = std::max(0.1 * tol, 1e-15 * (1.0 + chart_span));

    Point best = space.retract(guess);
    double best_value = objective(space, a, b, best);
    while (step >= min_step) {
        bool improved = false;
        for (std::size_t j = 0; j < best.size(); ++j) {
            for (double sign : {1.0, -1.0}) {
                Point trial = best;
                trial[j] += sign * step;
                trial = space.retract(trial);
                const double value = objective(space, a, b, trial);
                // Gains within rounding of the objective are noise, not descent.
                if (value < best_value - 4.0 * std::numeric_limits<double>::epsilon() * best_value) {
                    best = std::move(trial);
                    best_value = value;
                    improved = true;
                    break;
                }
            }
        }
        if (!improved) step *= 0.5;
    }
    return best;
}

namespace {

void bisect_fill(const Space& space, std::vector<Point>& v, std::size_t lo, std::size_t hi,
                 double tol) {
    if (hi - lo < 2) return;
    const std::size_t mid = (lo + hi) / 2;
    v[mid] = local_midpoint(space, v[lo], v[hi], space.chart_interpolate(v[lo], v[hi], 0.5), tol);
    bisect_fill(space, v, lo, mid, tol);
    bisect_fill(space, v, mid, hi, tol);
}

}  // namespace

GeodesicPath numeric_geodesic(const Space& space, const Point& p, const Point& q,
                              const NumericGeodesicOptions& options) {
    if (options.segments < 2) throw DomainError("numeric_geodesic needs at least 2 segments");
    if (!(options.tol > 0.0)) throw DomainError("numeric_geodesic needs tol > 0");
    space.validate(p);
    space.validate(q);
    const auto n = static_cast<std::size_t>(options.segments);
    std::vector<Point> v(n + 1);
    v.front() = p;
    v.back() = q;

    const bool dyadic = (n & (n - 1)) == 0;
    if (dyadic) {
        bisect_fill(space, v, 0, n, options.tol);
    } else {
        for (std::size_t i = 1; i < n; ++i) {
            v[i] = space.chart_interpolate(p, q, static_cast<double>(i) / static_cast<double>(n));
        }
    }

    double residual = kInfinity;
    for (int iter = 0; iter < options.max_iters; ++iter) {
        double max_move = 0.0;
        for (std::size_t i = 1; i < n; ++i) {
            Point m = local_midpoint(space, v[i - 1], v[i + 1], v[i], options.tol);
            max_move = std::max(max_move, space.distance(m, v[i]));
            v[i] = std::move(m);
        }
        residual = max_move;
        if (residual < options.tol) break;
    }
    if (residual > 10.0 * options.tol) {
        throw SolverError("numeric geodesic did not converge", residual);
    }
    double length = 0.0;
    for (std::size_t i = 0; i < n; ++i) length += space.distance(v[i], v[i + 1]);
    return GeodesicPath::discrete(space, std::move(v), length, residual);
}

}  // namespace curvelab
