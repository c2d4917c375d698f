#include "curvelab/comparison.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "curvelab/errors.hpp"
#include "curvelab/parallel.hpp"

namespace curvelab {

namespace {

constexpr double kPi = std::numbers::pi;

double square(double x) { return x * x; }

}  // namespace

ComparisonTriangle comparison_triangle(double a, double b, double c, double k) {
    if (!(a >= 0.0) || !(b >= 0.0) || !(c >= 0.0) || !std::isfinite(a + b + c) || !std::isfinite(k)) {
        throw DomainError("comparison triangle needs finite nonnegative sides");
    }
    const double slack = 1e-12 * (a + b + c);
    if (a > b + c + slack || b > a + c + slack || c > a + b + slack) {
        std::ostringstream msg;
        msg << "sides " << a << ", " << b << ", " << c << " violate the triangle inequality";
        throw ExistenceError(msg.str());
    }
    ComparisonTriangle tri;
    tri.a = a;
    tri.b = b;
    tri.c = c;
    tri.k = k;
    double sin2 = 0.0;
    if (k == 0.0) {
        tri.model = ModelSurface::euclidean;
        if (a > 0.0 && b > 0.0) sin2 = (c * c - square(a - b)) / (4.0 * a * b);
    } else if (k > 0.0) {
        tri.model = ModelSurface::sphere;
        const double unit = std::sqrt(k);
        const double ra = a * unit;
        const double rb = b * unit;
        const double rc = c * unit;
        const double cap_slack = 1e-12 * (ra + rb + rc + 1.0);
        if (ra > kPi + cap_slack || rb > kPi + cap_slack || rc > kPi + cap_slack) {
            throw ExistenceError("a side exceeds pi/sqrt(k)");
        }
        if (ra + rb + rc > 2.0 * kPi + cap_slack) throw ExistenceError("perimeter exceeds 2 pi/sqrt(k)");
        if (ra > 0.0 && rb > 0.0) {
            const double denom = std::sin(ra) * std::sin(rb);
            if (denom <= 0.0) throw ExistenceError("apex angle undetermined for a side of length pi/sqrt(k)");
            sin2 = std::sin(0.5 * (rc - ra + rb)) * std::sin(0.5 * (rc + ra - rb)) / denom;
        }
    } else {
        tri.model = ModelSurface::hyperbolic;
        const double unit = std::sqrt(-k);
        const double ra = a * unit;
        const double rb = b * unit;
        const double rc = c * unit;
        if (ra > 0.0 && rb > 0.0) {
            sin2 = std::sinh(0.5 * (rc - ra + rb)) * std::sinh(0.5 * (rc + ra - rb)) / (std::sinh(ra) * std::sinh(rb));
        }
    }
    tri.half_apex_sin2 = std::clamp(sin2, 0.0, 1.0);
    tri.apex_angle = 2.0 * std::asin(std::sqrt(tri.half_apex_sin2));
    return tri;
}

double comparison_t_distance(const ComparisonTriangle& tri, double t) {
    if (!(t >= 0.0 && t <= 1.0)) throw DomainError("comparison_t_distance needs t in [0, 1]");
    if (t == 0.0) return 0.0;
    const double ta = t * tri.a;
    const double tb = t * tri.b;
    switch (tri.model) {
        case ModelSurface::euclidean:
            return std::sqrt(square(ta - tb) + 4.0 * ta * tb * tri.half_apex_sin2);
        case ModelSurface::sphere: {
            const double unit = std::sqrt(tri.k);
            const double hav = square(std::sin(0.5 * unit * (ta - tb))) +
                               std::sin(unit * ta) * std::sin(unit * tb) * tri.half_apex_sin2;
            return 2.0 * std::asin(std::sqrt(std::clamp(hav, 0.0, 1.0))) / unit;
        }
        case ModelSurface::hyperbolic: {
            const double unit = std::sqrt(-tri.k);
            const double sh2 = square(std::sinh(0.5 * unit * (ta - tb))) +
                               std::sinh(unit * ta) * std::sinh(unit * tb) * tri.half_apex_sin2;
            return 2.0 * std::asinh(std::sqrt(std::max(sh2, 0.0))) / unit;
        }
    }
    return 0.0;
}

std::vector<std::array<Point, 3>> sample_triples(const Space& space, const SamplerConfig& sampler) {
    const Region region = sampler.region(space);
    const auto points = sample_region(space, region, 3 * sampler.count, sampler.seed);
    std::vector<std::array<Point, 3>> triples(sampler.count);
    for (std::size_t i = 0; i < sampler.count; ++i) {
        triples[i] = {points[3 * i], points[3 * i + 1], points[3 * i + 2]};
    }
    return triples;
}

std::vector<double> uniform_grid(std::size_t points) {
    if (points < 3) throw DomainError("t grid needs at least 3 points");
    std::vector<double> grid(points);
    for (std::size_t i = 0; i < points; ++i) grid[i] = static_cast<double>(i) / static_cast<double>(points - 1);
    return grid;
}

namespace {

double triple_scale(const Space& space, const Point& x, const Point& y1, const Point& y2) {
    return std::max({space.distance(x, y1), space.distance(x, y2), space.distance(y1, y2)});
}

double concavity_margin(double g1, double g2, double gm, double scale) {
    return (gm - 0.5 * (g1 + g2)) / scale;
}

Json triple_json(const Point& x, const Point& y1, const Point& y2) {
    Json w;
    w["x"] = point_to_json(x);
    w["y1"] = point_to_json(y1);
    w["y2"] = point_to_json(y2);
    return w;
}

struct GridPair {
    std::size_t lo = 0;
    std::size_t hi = 0;
};

}  // namespace

CheckReport check_busemann_concavity(const Space& space, const SamplerConfig& sampler, std::size_t t_grid,
                                     std::optional<double> tol) {
    const auto grid = uniform_grid(t_grid);
    const auto triples = sample_triples(space, sampler);
    std::vector<SampleOutcome<GridPair>> outcomes(triples.size());

    parallel_for(triples.size(), [&](std::size_t n) {
        auto& out = outcomes[n];
        const auto& [x, y1, y2] = triples[n];
        try {
            const double scale = triple_scale(space, x, y1, y2);
            if (scale == 0.0) {
                out.margin = 0.0;
                return;
            }
            const GeodesicPath g1 = space.geodesic(x, y1);
            const GeodesicPath g2 = space.geodesic(x, y2);
            std::vector<double> g(grid.size());
            for (std::size_t i = 0; i < grid.size(); ++i) g[i] = space.distance(g1.at(grid[i]), g2.at(grid[i]));
            for (std::size_t i = 0; i < grid.size(); ++i) {
                for (std::size_t j = i + 2; j < grid.size(); j += 2) {
                    const double m = concavity_margin(g[i], g[j], g[(i + j) / 2], scale);
                    if (m < out.margin) {
                        out.margin = m;
                        out.data = {i, j};
                    }
                }
            }
        } catch (const Error&) {
            out.skipped = true;
        }
    });

    CheckReport report;
    report.property = "busemann_concavity";
    report.space_spec = space.spec();
    report.n_samples = triples.size();
    report.n_skipped = skipped_count(outcomes);
    report.tolerance = tol.value_or(space.default_tolerance());
    if (const auto worst = worst_index(outcomes)) {
        const auto& [x, y1, y2] = triples[*worst];
        const auto& pair = outcomes[*worst].data;
        report.worst_margin = outcomes[*worst].margin;
        Json w = triple_json(x, y1, y2);
        w["sample"] = *worst;
        if (pair.hi > pair.lo) {
            const double t1 = grid[pair.lo];
            const double t2 = grid[pair.hi];
            const double tm = grid[(pair.lo + pair.hi) / 2];
            const GeodesicPath g1 = space.geodesic(x, y1);
            const GeodesicPath g2 = space.geodesic(x, y2);
            w["t1"] = t1;
            w["t2"] = t2;
            w["t_mid"] = tm;
            w["g_t1"] = space.distance(g1.at(t1), g2.at(t1));
            w["g_t2"] = space.distance(g1.at(t2), g2.at(t2));
            w["g_mid"] = space.distance(g1.at(tm), g2.at(tm));
            w["scale"] = triple_scale(space, x, y1, y2);
        }
        w["margin"] = report.worst_margin;
        report.witness = std::move(w);
    }
    report.details["t_grid"] = t_grid;
    report.finalize();
    return report;
}

double replay_busemann_concavity(const Space& space, const Json& w) {
    const Point x = point_from_json(w.at("x"));
    const Point y1 = point_from_json(w.at("y1"));
    const Point y2 = point_from_json(w.at("y2"));
    if (!w.contains("t1")) return 0.0;
    const double t1 = w.at("t1").get<double>();
    const double t2 = w.at("t2").get<double>();
    const double tm = w.at("t_mid").get<double>();
    const GeodesicPath g1 = space.geodesic(x, y1);
    const GeodesicPath g2 = space.geodesic(x, y2);
    return concavity_margin(space.distance(g1.at(t1), g2.at(t1)), space.distance(g1.at(t2), g2.at(t2)),
                            space.distance(g1.at(tm), g2.at(tm)), triple_scale(space, x, y1, y2));
}

namespace {

struct BoundData {
    std::size_t grid_index = 0;
};

double bound_margin(const Space& space, const GeodesicPath& g1, const GeodesicPath& g2,
                    const ComparisonTriangle& tri, double t, double scale) {
    return (space.distance(g1.at(t), g2.at(t)) - comparison_t_distance(tri, t)) / scale;
}

}  // namespace

CheckReport check_curvature_bound(const Space& space, double k, const SamplerConfig& sampler, std::size_t t_grid,
                                  std::optional<double> tol) {
    const auto grid = uniform_grid(t_grid);
    const auto triples = sample_triples(space, sampler);
    std::vector<SampleOutcome<BoundData>> outcomes(triples.size());

    parallel_for(triples.size(), [&](std::size_t n) {
        auto& out = outcomes[n];
        const auto& [x, y1, y2] = triples[n];
        try {
            const double a = space.distance(x, y1);
            const double b = space.distance(x, y2);
            const double c = space.distance(y1, y2);
            const double scale = std::max({a, b, c});
            if (scale == 0.0) {
                out.margin = 0.0;
                return;
            }
            const ComparisonTriangle tri = comparison_triangle(a, b, c, k);
            const GeodesicPath g1 = space.geodesic(x, y1);
            const GeodesicPath g2 = space.geodesic(x, y2);
            for (std::size_t i = 1; i < grid.size(); ++i) {
                const double m = bound_margin(space, g1, g2, tri, grid[i], scale);
                if (m < out.margin) {
                    out.margin = m;
                    out.data.grid_index = i;
                }
            }
        } catch (const Error&) {
            out.skipped = true;
        }
    });

    CheckReport report;
    report.property = "curvature_bound";
    report.space_spec = space.spec();
    report.k = k;
    report.n_samples = triples.size();
    report.n_skipped = skipped_count(outcomes);
    report.tolerance = tol.value_or(space.default_tolerance());
    if (const auto worst = worst_index(outcomes)) {
        const auto& [x, y1, y2] = triples[*worst];
        report.worst_margin = outcomes[*worst].margin;
        Json w = triple_json(x, y1, y2);
        w["sample"] = *worst;
        w["k"] = k;
        const std::size_t gi = outcomes[*worst].data.grid_index;
        if (gi > 0) {
            const double t = grid[gi];
            const double a = space.distance(x, y1);
            const double b = space.distance(x, y2);
            const double c = space.distance(y1, y2);
            const ComparisonTriangle tri = comparison_triangle(a, b, c, k);
            const GeodesicPath g1 = space.geodesic(x, y1);
            const GeodesicPath g2 = space.geodesic(x, y2);
            w["t"] = t;
            w["actual"] = space.distance(g1.at(t), g2.at(t));
            w["comparison"] = comparison_t_distance(tri, t);
            w["apex_angle"] = tri.apex_angle;
            w["scale"] = std::max({a, b, c});
        }
        w["margin"] = report.worst_margin;
        report.witness = std::move(w);
    }
    report.details["t_grid"] = t_grid;
    report.finalize();
    return report;
}

double replay_curvature_bound(const Space& space, const Json& w) {
    const Point x = point_from_json(w.at("x"));
    const Point y1 = point_from_json(w.at("y1"));
    const Point y2 = point_from_json(w.at("y2"));
    if (!w.contains("t")) return 0.0;
    const double k = w.at("k").get<double>();
    const double a = space.distance(x, y1);
    const double b = space.distance(x, y2);
    const double c = space.distance(y1, y2);
    const ComparisonTriangle tri = comparison_triangle(a, b, c, k);
    return bound_margin(space, space.geodesic(x, y1), space.geodesic(x, y2), tri, w.at("t").get<double>(),
                        std::max({a, b, c}));
}

DiameterEstimate diameter_estimate(const Space& space, std::size_t n, std::uint64_t seed, std::size_t refine_iters,
                                   const std::optional<Region>& region) {
    if (!region && !space.bounded()) {
        throw UnboundedError(space.spec() + " is unbounded; restrict the diameter search to a region");
    }
    if (n < 2) throw DomainError("diameter_estimate needs n >= 2");
    const Region search = region ? *region : Region{space.origin(), space.diameter()};
    const auto points = sample_region(space, search, n, seed);

    // Row maxima in parallel, then a sequential lowest-index reduction.
    std::vector<std::pair<double, std::size_t>> rows(n, {-1.0, 0});
    parallel_for(n, [&](std::size_t i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            const double d = space.distance(points[i], points[j]);
            if (d > rows[i].first) rows[i] = {d, j};
        }
    });
    DiameterEstimate best{-1.0, {}, {}};
    for (std::size_t i = 0; i < n; ++i) {
        if (rows[i].first > best.value) best = {rows[i].first, points[i], points[rows[i].second]};
    }

    // Hill climbing on both endpoints with a shrinking proposal radius.
    Rng rng(derive_seed(seed, 0xD1A));
    double step = 0.1 * search.radius;
    const double floor = 1e-12 * std::max(search.radius, 1e-300);
    for (std::size_t iter = 0; iter < refine_iters && step > floor; ++iter) {
        bool improved = false;
        for (int end = 0; end < 2; ++end) {
            Point& moving = end == 0 ? best.p : best.q;
            const Point& fixed = end == 0 ? best.q : best.p;
            Point trial = space.canonical(space.propose(moving, step, rng));
            try {
                space.validate(trial);
                if (region && space.distance(region->center, trial) > region->radius) continue;
                const double d = space.distance(trial, fixed);
                if (d > best.value) {
                    best.value = d;
                    moving = std::move(trial);
                    improved = true;
                }
            } catch (const DomainError&) {
            }
        }
        if (!improved) step *= 0.85;
    }
    return best;
}

CheckReport check_bonnet_myers(const Space& space, double k, std::optional<double> tol, std::size_t n,
                               std::uint64_t seed, std::size_t refine_iters, const std::optional<Region>& region) {
    if (!(k > 0.0)) throw DomainError("Bonnet-Myers check needs k > 0");
    const DiameterEstimate diam = diameter_estimate(space, n, seed, refine_iters, region);
    const double bound = kPi / std::sqrt(k);
    CheckReport report;
    report.property = "bonnet_myers";
    report.space_spec = space.spec();
    report.k = k;
    report.n_samples = n;
    report.tolerance = tol.value_or(space.default_tolerance());
    report.worst_margin = bound - space.distance(diam.p, diam.q);
    Json w;
    w["p"] = point_to_json(diam.p);
    w["q"] = point_to_json(diam.q);
    w["k"] = k;
    w["diameter"] = diam.value;
    w["bound"] = bound;
    w["margin"] = report.worst_margin;
    report.witness = std::move(w);
    report.details["diameter_estimate"] = diam.value;
    report.finalize();
    return report;
}

double replay_bonnet_myers(const Space& space, const Json& w) {
    return kPi / std::sqrt(w.at("k").get<double>()) -
           space.distance(point_from_json(w.at("p")), point_from_json(w.at("q")));
}

CheckReport check_boundary_sphere_diameter(const Space& space, const Point& x, double s, std::size_t n,
                                           std::uint64_t seed, std::optional<double> tol,
                                           const std::optional<Region>& region) {
    if (!(s > 0.0 && s <= 0.5 * kPi)) throw DomainError("boundary sphere check needs s in (0, pi/2]");
    space.validate(x);
    const double target = kPi - s;
    constexpr double band = 1e-3;

    std::vector<Point> shell;
    if (space.has_directions()) {
        // Shoot from x toward sampled points; keep landings within the band.
        const double reach = space.bounded() ? space.diameter() : target;
        const auto aims = sample_region(space, x, reach, n, seed);
        for (const auto& y : aims) {
            if (space.distance(x, y) == 0.0) continue;
            try {
                Point p = space.shoot(x, space.initial_direction(x, y), target);
                space.validate(p);
                if (std::abs(space.distance(x, p) - target) > band) continue;
                if (region && space.distance(region->center, p) > region->radius) continue;
                shell.push_back(std::move(p));
            } catch (const DomainError&) {
            }
        }
    } else {
        const auto candidates = sample_region(space, x, target + band, 50 * n, seed);
        for (const auto& p : candidates) {
            if (std::abs(space.distance(x, p) - target) > band) continue;
            if (region && space.distance(region->center, p) > region->radius) continue;
            shell.push_back(p);
            if (shell.size() == n) break;
        }
    }

    CheckReport report;
    report.property = "boundary_sphere_diameter";
    report.space_spec = space.spec();
    report.n_samples = shell.size();
    report.tolerance = tol.value_or(space.default_tolerance());
    report.details["s"] = s;
    report.details["vacuous"] = shell.size() < 2;
    if (shell.size() < 2) {
        report.finalize();
        return report;
    }
    std::vector<std::pair<double, std::size_t>> rows(shell.size(), {-1.0, 0});
    parallel_for(shell.size(), [&](std::size_t i) {
        for (std::size_t j = i + 1; j < shell.size(); ++j) {
            const double d = space.distance(shell[i], shell[j]);
            if (d > rows[i].first) rows[i] = {d, j};
        }
    });
    std::size_t bi = 0;
    for (std::size_t i = 1; i < shell.size(); ++i) {
        if (rows[i].first > rows[bi].first) bi = i;
    }
    const double diam = rows[bi].first;
    report.worst_margin = 2.0 * s - diam;
    Json w;
    w["x"] = point_to_json(x);
    w["p"] = point_to_json(shell[bi]);
    w["q"] = point_to_json(shell[rows[bi].second]);
    w["s"] = s;
    w["shell_diameter"] = diam;
    w["margin"] = report.worst_margin;
    report.witness = std::move(w);
    report.details["shell_diameter"] = diam;
    report.finalize();
    return report;
}

double replay_boundary_sphere_diameter(const Space& space, const Json& w) {
    return 2.0 * w.at("s").get<double>() - space.distance(point_from_json(w.at("p")), point_from_json(w.at("q")));
}

}  // namespace curvelab
