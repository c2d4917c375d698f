#include "curvelab/convexity.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "curvelab/comparison.hpp"
#include "curvelab/errors.hpp"
#include "curvelab/parallel.hpp"

namespace curvelab {

std::string to_string(ConvexityMode mode) {
    switch (mode) {
        case ConvexityMode::convex: return "convex";
        case ConvexityMode::quasi: return "quasi";
        case ConvexityMode::strictly_quasi: return "strictly_quasi";
        case ConvexityMode::properly_quasi: return "properly_quasi";
    }
    return "convex";
}

ConvexityMode convexity_mode_from_string(const std::string& s) {
    if (s == "convex") return ConvexityMode::convex;
    if (s == "quasi") return ConvexityMode::quasi;
    if (s == "strictly_quasi") return ConvexityMode::strictly_quasi;
    if (s == "properly_quasi") return ConvexityMode::properly_quasi;
    throw ParseError("unknown convexity mode '" + s + "'");
}

namespace {

struct PairEvaluation {
    double margin = kInfinity;
    std::size_t index = 0;
    bool vacuous = false;
};

// Margin of one geodesic given f on the t grid. For the strict modes the
// margin is gap - tol so that the report tolerance is 0.
PairEvaluation evaluate_pair(const std::vector<double>& grid, const std::vector<double>& values, ConvexityMode mode,
                             double tol) {
    const double f0 = values.front();
    const double f1 = values.back();
    double scale = 0.0;
    double lo = kInfinity;
    double hi = -kInfinity;
    for (double v : values) {
        scale = std::max(scale, std::abs(v));
        lo = std::min(lo, v);
        hi = std::max(hi, v);
    }
    if (scale == 0.0) scale = 1.0;
    const double top = std::max(f0, f1);

    PairEvaluation out;
    if (mode == ConvexityMode::properly_quasi && hi - lo <= std::sqrt(tol) * scale) {
        out.vacuous = true;
        return out;
    }
    for (std::size_t j = 1; j + 1 < grid.size(); ++j) {
        const double t = grid[j];
        double m = 0.0;
        switch (mode) {
            case ConvexityMode::convex: m = ((1.0 - t) * f0 + t * f1 - values[j]) / scale; break;
            case ConvexityMode::quasi: m = (top - values[j]) / scale; break;
            case ConvexityMode::strictly_quasi:
            case ConvexityMode::properly_quasi: m = (top - values[j]) / scale - tol; break;
        }
        if (m < out.margin) {
            out.margin = m;
            out.index = j;
        }
    }
    return out;
}

std::vector<double> field_on_geodesic(const Space& space, const ScalarField& f, const Point& x, const Point& y,
                                      const std::vector<double>& grid) {
    const GeodesicPath path = space.geodesic(x, y);
    std::vector<double> values(grid.size());
    for (std::size_t j = 0; j < grid.size(); ++j) values[j] = f.value(path.at(grid[j]));
    return values;
}

bool strict_mode(ConvexityMode mode) {
    return mode == ConvexityMode::strictly_quasi || mode == ConvexityMode::properly_quasi;
}

}  // namespace

CheckReport check_function_convexity(const Space& space, const ScalarField& f, ConvexityMode mode,
                                     const SamplerConfig& sampler, std::size_t t_grid, std::optional<double> tol) {
    const auto grid = uniform_grid(t_grid);
    const double strictness = tol.value_or(space.default_tolerance());
    const auto points = sample_region(space, sampler.region(space), 2 * sampler.count, sampler.seed);
    std::vector<SampleOutcome<PairEvaluation>> outcomes(sampler.count);

    parallel_for(sampler.count, [&](std::size_t n) {
        auto& out = outcomes[n];
        const Point& x = points[2 * n];
        const Point& y = points[2 * n + 1];
        try {
            if (space.distance(x, y) == 0.0) {
                out.data.vacuous = true;
                return;
            }
            out.data = evaluate_pair(grid, field_on_geodesic(space, f, x, y, grid), mode, strictness);
            out.margin = out.data.margin;
        } catch (const Error&) {
            out.skipped = true;
        }
    });

    CheckReport report;
    report.property = "function_convexity";
    report.space_spec = space.spec();
    report.n_samples = sampler.count;
    report.n_skipped = skipped_count(outcomes);
    report.tolerance = strict_mode(mode) ? 0.0 : strictness;
    std::size_t vacuous = 0;
    for (const auto& o : outcomes) vacuous += (!o.skipped && o.data.vacuous) ? 1 : 0;
    if (const auto worst = worst_index(outcomes); worst && std::isfinite(outcomes[*worst].margin)) {
        const Point& x = points[2 * *worst];
        const Point& y = points[2 * *worst + 1];
        const std::size_t j = outcomes[*worst].data.index;
        report.worst_margin = outcomes[*worst].margin;
        const auto values = field_on_geodesic(space, f, x, y, grid);
        Json w;
        w["x"] = point_to_json(x);
        w["y"] = point_to_json(y);
        w["field"] = f.name;
        w["mode"] = to_string(mode);
        w["t_grid"] = t_grid;
        w["strictness"] = strictness;
        w["t"] = grid[j];
        w["f_x"] = values.front();
        w["f_y"] = values.back();
        w["f_t"] = values[j];
        w["margin"] = report.worst_margin;
        report.witness = std::move(w);
    }
    report.details["field"] = f.name;
    report.details["mode"] = to_string(mode);
    report.details["vacuous_pairs"] = vacuous;
    report.finalize();
    return report;
}

double replay_function_convexity(const Space& space, const ScalarField& f, const Json& w) {
    const auto grid = uniform_grid(w.at("t_grid").get<std::size_t>());
    const ConvexityMode mode = convexity_mode_from_string(w.at("mode").get<std::string>());
    const auto values =
        field_on_geodesic(space, f, point_from_json(w.at("x")), point_from_json(w.at("y")), grid);
    return evaluate_pair(grid, values, mode, w.at("strictness").get<double>()).margin;
}

namespace {

Point parse_coordinates(const std::string& text) {
    Point p;
    std::stringstream in(text);
    std::string item;
    while (std::getline(in, item, ',')) {
        try {
            std::size_t used = 0;
            p.push_back(std::stod(item, &used));
            if (used != item.size()) throw ParseError("bad coordinate '" + item + "'");
        } catch (const std::logic_error&) {
            throw ParseError("bad coordinate '" + item + "'");
        }
    }
    return p;
}

SublevelFamily interval_family(std::string name, bool jump_included) {
    // [-s, s] below the jump at s = 1 and [-(s+1), s+1] above it; the jump
    // index belongs to the lower branch unless jump_included.
    SublevelFamily fam;
    fam.name = std::move(name);
    auto radius = [jump_included](double s) {
        const bool upper = jump_included ? s >= 1.0 : s > 1.0;
        return upper ? s + 1.0 : s;
    };
    fam.member = [radius](double s, const Point& x) { return std::abs(x.at(0)) <= radius(s); };
    fam.interior = [radius](double s, const Point& x) { return std::abs(x.at(0)) < radius(s); };
    return fam;
}

}  // namespace

SublevelFamily make_family(const std::string& name, const Space* space) {
    if (name == "interval-c1") return interval_family(name, false);
    if (name == "interval-c2") return interval_family(name, true);
    if (name == "interval-c3") {
        SublevelFamily fam;
        fam.name = name;
        fam.member = [](double s, const Point& x) { return x.at(0) <= std::exp(s); };
        fam.interior = [](double s, const Point& x) { return x.at(0) < std::exp(s); };
        return fam;
    }
    if (name.rfind("balls:", 0) == 0) {
        if (!space) throw InputError("ball family needs a space");
        const Point center = parse_coordinates(name.substr(6));
        space->validate(center);
        SublevelFamily fam;
        fam.name = name;
        fam.index_min = 0.0;
        fam.member = [space, center](double s, const Point& x) { return space->distance(center, x) <= s; };
        fam.interior = [space, center](double s, const Point& x) { return space->distance(center, x) < s; };
        return fam;
    }
    throw ParseError("unknown sublevel family '" + name + "'");
}

SublevelFamily sublevel_family_of(const ScalarField& f) {
    SublevelFamily fam;
    fam.name = "sublevels:" + f.name;
    fam.member = [value = f.value](double s, const Point& x) { return value(x) <= s; };
    return fam;
}

SublevelValue function_from_sublevels(const SublevelFamily& family, const Point& x, std::pair<double, double> bracket,
                                      double tol) {
    if (!(tol > 0.0)) throw DomainError("function_from_sublevels needs tol > 0");
    auto [lo, hi] = bracket;
    if (!(lo < hi)) throw DomainError("bracket must satisfy lo < hi");
    lo = std::max(lo, family.index_min);
    hi = std::min(hi, family.index_max);

    int expansions = 0;
    while (!family.member(hi, x)) {
        if (hi >= family.index_max || ++expansions > 64) {
            return {kInfinity, kInfinity, true};
        }
        const double width = hi - lo;
        lo = hi;
        hi = std::min(family.index_max, hi + 2.0 * width);
    }
    expansions = 0;
    while (family.member(lo, x)) {
        if (lo <= family.index_min) return {std::atan(lo), lo, lo == -kInfinity};
        if (++expansions > 64) return {-0.5 * std::numbers::pi, -kInfinity, true};
        const double width = hi - lo;
        hi = lo;
        lo = std::max(family.index_min, lo - 2.0 * width);
    }
    // Invariant: x not in C_lo, x in C_hi.
    while (hi - lo > tol) {
        const double mid = 0.5 * (lo + hi);
        if (family.member(mid, x)) {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    const double index = 0.5 * (lo + hi);
    return {std::atan(index), index, false};
}

FamilyValidation validate_family(const SublevelFamily& family, const std::vector<Point>& points, double s_lo,
                                 double s_hi, double step) {
    if (!(step > 0.0) || !(s_lo < s_hi)) throw DomainError("validate_family needs s_lo < s_hi and step > 0");
    std::vector<double> grid;
    for (double s = s_lo; s <= s_hi + 1e-12; s += step) grid.push_back(s);
    constexpr double eta = 1e-9;
    FamilyValidation out;
    auto note = [&](const char* property, double s, const Point& x) {
        if (!out.witness.contains(property)) {
            Json w;
            w["s"] = s;
            w["x"] = point_to_json(x);
            out.witness[property] = w;
        }
    };
    for (const auto& x : points) {
        bool escapes = false;
        for (std::size_t i = 0; i < grid.size(); ++i) {
            const double s = grid[i];
            const bool in = family.member(s, x);
            if (i + 1 < grid.size() && in && !family.member(grid[i + 1], x)) {
                out.nondecreasing = false;
                note("nondecreasing", s, x);
            }
            if (!in && family.member(s + eta, x)) {
                out.right_continuous = false;
                note("right_continuous", s, x);
            }
            if (family.interior) {
                const bool inside = family.interior(s, x);
                if (!inside) escapes = true;
                if (inside && !family.interior(s - eta, x)) {
                    out.interior_left_continuous = false;
                    note("interior_left_continuous", s, x);
                }
            } else if (!in) {
                escapes = true;
            }
        }
        if (!escapes) {
            out.escapes_interior = false;
            note("escapes_interior", grid.front(), x);
        }
    }
    return out;
}

double convexity_radius_estimate(const Space& space, const Point& x, double r_max, std::size_t steps,
                                 std::size_t probes, std::uint64_t seed, bool strict) {
    if (!(r_max > 0.0) || steps == 0) throw DomainError("convexity_radius_estimate needs r_max > 0 and steps > 0");
    space.validate(x);
    const auto grid = uniform_grid(9);
    double certified = 0.0;
    for (std::size_t step = 1; step <= steps; ++step) {
        const double r = r_max * static_cast<double>(step) / static_cast<double>(steps);
        const std::uint64_t stream = derive_seed(seed, step);
        auto points = sample_region(space, x, r, probes, stream);
        if (space.has_directions()) {
            // Probe the boundary sphere, where convexity fails first.
            const auto aims = sample_region(space, x, r, probes, derive_seed(stream, 1));
            for (const auto& y : aims) {
                if (space.distance(x, y) == 0.0) continue;
                try {
                    Point p = space.shoot(x, space.initial_direction(x, y), r);
                    space.validate(p);
                    points.push_back(std::move(p));
                } catch (const DomainError&) {
                }
            }
        }
        std::vector<char> ok(points.size() / 2, 1);
        parallel_for(ok.size(), [&](std::size_t i) {
            const Point& a = points[2 * i];
            const Point& b = points[(2 * i + 1 + points.size() / 2) % points.size()];
            try {
                const GeodesicPath path = space.geodesic(a, b);
                const bool nondegenerate = space.distance(a, b) > 1e-9 * r;
                for (std::size_t j = 1; j + 1 < grid.size(); ++j) {
                    const double d = space.distance(x, path.at(grid[j]));
                    const bool inside = strict && nondegenerate ? d < r * (1.0 - 1e-12) : d <= r * (1.0 + 1e-9);
                    if (!inside) {
                        ok[i] = 0;
                        return;
                    }
                }
            } catch (const Error&) {
            }
        });
        if (std::find(ok.begin(), ok.end(), 0) != ok.end()) break;
        certified = r;
    }
    return certified;
}

ScalarField make_field(const std::string& name, const Space& space) {
    const Space* sp = &space;
    if (name == "norm" || name == "clamped_norm") {
        const Point o = space.origin();
        ScalarField f;
        f.name = name;
        if (name == "norm") {
            f.value = [sp, o](const Point& p) { return sp->distance(o, p); };
            f.slope = [](const Point&) { return 1.0; };
        } else {
            f.value = [sp, o](const Point& p) { return std::min(sp->distance(o, p), 1.0); };
            f.slope = [sp, o](const Point& p) { return sp->distance(o, p) < 1.0 ? 1.0 : 0.0; };
        }
        return f;
    }
    if (name.rfind("distance:", 0) == 0) {
        const Point c = parse_coordinates(name.substr(9));
        space.validate(c);
        return {name, [sp, c](const Point& p) { return sp->distance(c, p); }, [](const Point&) { return 1.0; }};
    }
    if (name == "constant") {
        return {name, [](const Point&) { return 0.0; }, [](const Point&) { return 0.0; }};
    }
    if (name.rfind("coordinate:", 0) == 0) {
        std::size_t i = 0;
        try {
            i = std::stoul(name.substr(11));
        } catch (const std::logic_error&) {
            throw ParseError("bad coordinate index in '" + name + "'");
        }
        if (i >= space.coordinate_count()) throw DomainError("coordinate index out of range");
        ScalarField f{name, [i](const Point& p) { return p[i]; }, {}};
        if (space.kind() == "euclidean") f.slope = [](const Point&) { return 1.0; };
        return f;
    }
    throw ParseError("unknown scalar field '" + name + "'");
}

}  // namespace curvelab
