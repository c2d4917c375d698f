#include "curvelab/splitting.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "curvelab/errors.hpp"
#include "curvelab/parallel.hpp"

namespace curvelab {

Line parallel_line_through(const Line& line, const Point& x, const std::vector<double>& schedule, double tol) {
    Line glued{asymptotic_ray(x, line.forward, schedule, tol), asymptotic_ray(x, line.backward, schedule, tol)};
    verify_line(glued, tol);
    return glued;
}

double parallel_line_spread(const Line& line, const Point& x, double horizon, double tol) {
    const Space& space = line.forward.space();
    const std::vector<std::vector<double>> schedules = {
        doubling_schedule(horizon), doubling_schedule(0.5 * horizon), doubling_schedule(horizon, 8)};
    std::vector<Line> lines;
    for (const auto& s : schedules) lines.push_back(parallel_line_through(line, x, s, tol));
    double spread = 0.0;
    for (double t : {-1.0, 0.0, 1.0}) {
        for (std::size_t i = 1; i < lines.size(); ++i) {
            spread = std::max(spread, space.distance(lines[0].at(t), lines[i].at(t)));
        }
    }
    return spread;
}

SplitCoordinates splitting_map(const Line& line, const Point& x, double horizon, double tol) {
    const Line parallel = parallel_line_through(line, x, doubling_schedule(horizon), tol);
    const BusemannEstimate b = busemann_value(line.forward, x, horizon);
    SplitCoordinates out;
    out.height = b.extrapolated();
    out.bracket = std::abs(b.increment);
    if (std::abs(out.height) > parallel.horizon()) throw DomainError("splitting_map: height beyond the line horizon");
    out.foot = parallel.at(-out.height);
    const BusemannEstimate at_foot = busemann_value(line.forward, out.foot, horizon);
    const double residual = at_foot.extrapolated();
    if (std::abs(residual) > tol * std::max(1.0, std::abs(out.height)) + out.bracket + std::abs(at_foot.increment)) {
        std::ostringstream msg;
        msg << "splitting_map: Busemann value at the foot is " << residual << ", not 0";
        throw ConsistencyError(msg.str());
    }
    return out;
}

CheckReport splitting_distortion(const Line& line, const SamplerConfig& sampler, double horizon,
                                 std::optional<double> tol) {
    const Space& space = line.forward.space();
    const double base_tol = tol.value_or(space.default_tolerance());
    const auto points = sample_region(space, sampler.region(space), 2 * sampler.count, sampler.seed);

    std::vector<std::optional<SplitCoordinates>> coords(points.size());
    parallel_for(points.size(), [&](std::size_t i) {
        try {
            coords[i] = splitting_map(line, points[i], horizon, space.default_tolerance());
        } catch (const Error&) {
            coords[i].reset();
        }
    });

    struct Data {
        double r1 = 0.0;
        double r2 = 0.0;
        double d = 0.0;
        double d_product = 0.0;
    };
    std::vector<SampleOutcome<Data>> outcomes(sampler.count);
    double widening = 0.0;
    for (std::size_t n = 0; n < sampler.count; ++n) {
        auto& out = outcomes[n];
        const auto& a = coords[2 * n];
        const auto& b = coords[2 * n + 1];
        if (!a || !b) {
            out.skipped = true;
            continue;
        }
        const double d = space.distance(points[2 * n], points[2 * n + 1]);
        const double d_product = space.distance(a->foot, b->foot) + std::abs(a->height - b->height);
        if (d == 0.0 || d_product == 0.0) {
            out.skipped = true;
            continue;
        }
        out.data = {d_product / d, d / d_product, d, d_product};
        out.margin = std::min(3.0 - out.data.r1, 1.0 - out.data.r2);
        widening = std::max(widening, 2.0 * (a->bracket + b->bracket) / d);
    }

    CheckReport report;
    report.property = "splitting_distortion";
    report.space_spec = space.spec();
    report.n_samples = sampler.count;
    report.n_skipped = skipped_count(outcomes);
    report.tolerance = base_tol + widening;
    double max_r1 = 0.0;
    double max_r2 = 0.0;
    for (const auto& o : outcomes) {
        if (o.skipped) continue;
        max_r1 = std::max(max_r1, o.data.r1);
        max_r2 = std::max(max_r2, o.data.r2);
    }
    if (const auto worst = worst_index(outcomes)) {
        const auto& o = outcomes[*worst];
        report.worst_margin = o.margin;
        report.witness = Json{{"forward", line.forward.to_spec()},
                              {"backward", line.backward.to_spec()},
                              {"x", point_to_json(points[2 * *worst])},
                              {"y", point_to_json(points[2 * *worst + 1])},
                              {"horizon", horizon},
                              {"d", o.data.d},
                              {"d_product", o.data.d_product},
                              {"r1", o.data.r1},
                              {"r2", o.data.r2},
                              {"margin", o.margin}};
    }
    report.details["max_r1"] = max_r1;
    report.details["max_r2"] = max_r2;
    report.details["bracket_widening"] = widening;
    report.finalize();
    return report;
}

CheckReport check_moving_isometry(const Line& line, const SamplerConfig& sampler, const std::vector<double>& a_grid,
                                  double horizon, std::optional<double> tol) {
    const Space& space = line.forward.space();
    const auto points = sample_region(space, sampler.region(space), 2 * sampler.count, sampler.seed);
    const auto schedule = doubling_schedule(horizon);
    std::vector<std::optional<Line>> lines(points.size());
    parallel_for(points.size(), [&](std::size_t i) {
        try {
            lines[i] = parallel_line_through(line, points[i], schedule, space.default_tolerance());
        } catch (const Error&) {
            lines[i].reset();
        }
    });

    struct Data {
        double t = 0.0;
        double s = 0.0;
        double a = 0.0;
        double before = 0.0;
        double after = 0.0;
    };
    std::vector<SampleOutcome<Data>> outcomes(sampler.count);
    parallel_for(sampler.count, [&](std::size_t n) {
        auto& out = outcomes[n];
        const auto& ex = lines[2 * n];
        const auto& ey = lines[2 * n + 1];
        if (!ex || !ey) {
            out.skipped = true;
            return;
        }
        for (double t : {-1.0, 0.0, 1.0}) {
            for (double s : {-1.0, 0.0, 1.0}) {
                const double before = space.distance(ex->at(t), ey->at(s));
                for (double a : a_grid) {
                    if (std::abs(t + a) > ex->horizon() || std::abs(s + a) > ey->horizon()) continue;
                    const double after = space.distance(ex->at(t + a), ey->at(s + a));
                    const double margin = -std::abs(after - before) / std::max(1.0, before);
                    if (margin < out.margin) {
                        out.margin = margin;
                        out.data = {t, s, a, before, after};
                    }
                }
            }
        }
    });

    CheckReport report;
    report.property = "moving_isometry";
    report.space_spec = space.spec();
    report.n_samples = sampler.count;
    report.n_skipped = skipped_count(outcomes);
    report.tolerance = tol.value_or(space.default_tolerance());
    if (const auto worst = worst_index(outcomes); worst && std::isfinite(outcomes[*worst].margin)) {
        const auto& o = outcomes[*worst];
        report.worst_margin = o.margin;
        report.witness = Json{{"forward", line.forward.to_spec()},
                              {"backward", line.backward.to_spec()},
                              {"x", point_to_json(points[2 * *worst])},
                              {"y", point_to_json(points[2 * *worst + 1])},
                              {"horizon", horizon},
                              {"t", o.data.t},
                              {"s", o.data.s},
                              {"a", o.data.a},
                              {"before", o.data.before},
                              {"after", o.data.after},
                              {"margin", o.margin}};
    }
    report.finalize();
    return report;
}

}  // namespace curvelab
