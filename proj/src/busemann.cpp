#include "curvelab/busemann.hpp"

#include <algorithm>
#include <cmath>
#include <memory>
#include <numbers>
#include <sstream>

#include "curvelab/errors.hpp"
#include "curvelab/parallel.hpp"

namespace curvelab {

std::vector<double> doubling_schedule(double horizon, std::size_t levels) {
    if (!(horizon > 0.0) || !std::isfinite(horizon) || levels == 0) {
        throw DomainError("doubling schedule needs a finite positive horizon");
    }
    std::vector<double> schedule(levels);
    for (std::size_t i = 0; i < levels; ++i) schedule[levels - 1 - i] = std::ldexp(horizon, -static_cast<int>(i));
    return schedule;
}

BusemannEstimate busemann_value(const Ray& ray, const Point& x, double horizon) {
    if (!(horizon > 0.0) || horizon > ray.horizon() * (1.0 + 1e-12)) {
        throw DomainError("busemann horizon must lie in (0, ray horizon]");
    }
    const Space& space = ray.space();
    BusemannEstimate est;
    est.horizon = horizon;
    est.upper_bound = space.distance(x, ray.base());
    double previous = -kInfinity;
    double previous_t = 0.0;
    for (double t : doubling_schedule(horizon)) {
        const double value = t - space.distance(ray.at(t), x);
        if (value < previous - 1e-9 * std::max(1.0, t)) {
            std::ostringstream msg;
            msg.precision(17);
            msg << "t - d(ray(t), x) decreased from " << previous << " at t = " << previous_t << " to " << value
                << " at t = " << t;
            throw ConsistencyError(msg.str());
        }
        est.increment = value - previous;
        previous = value;
        previous_t = t;
    }
    est.value = previous;
    return est;
}

namespace {

double max_abs_difference(const Direction& a, const Direction& b) {
    double out = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) out = std::max(out, std::abs(a[i] - b[i]));
    return out;
}

Direction extrapolate(const Space& space, const Point& x, const Direction& coarse, const Direction& fine) {
    Direction out(fine.size());
    for (std::size_t i = 0; i < fine.size(); ++i) out[i] = 2.0 * fine[i] - coarse[i];
    return space.normalize_direction(x, out);
}

}  // namespace

Ray asymptotic_ray(const Point& x, const Ray& ray, const std::vector<double>& schedule, double tol) {
    const Space& space = ray.space();
    if (!space.has_directions()) throw InputError(space.kind() + ": asymptotic rays need direction descriptors");
    if (schedule.size() < 2) throw DomainError("asymptotic_ray needs at least two schedule points");
    std::vector<Direction> raw;
    double last_t = 0.0;
    for (double t : schedule) {
        if (!(t > last_t)) throw DomainError("asymptotic_ray schedule must increase");
        last_t = t;
        const Point target = ray.at(t);
        if (space.distance(x, target) == 0.0) continue;
        raw.push_back(space.normalize_direction(x, space.initial_direction(x, target)));
    }
    if (raw.size() < 2) throw NonConvergenceError("asymptotic_ray: too few usable schedule points");

    std::vector<Direction> limits;
    for (std::size_t i = 1; i < raw.size(); ++i) limits.push_back(extrapolate(space, x, raw[i - 1], raw[i]));
    const Direction& dir = limits.back();
    if (limits.size() >= 2) {
        const double step = max_abs_difference(limits[limits.size() - 2], dir);
        if (step > 10.0 * tol) {
            std::ostringstream msg;
            msg << "asymptotic_ray: direction descriptors not Cauchy (last step " << step << ")";
            throw NonConvergenceError(msg.str());
        }
    }
    const double reach = schedule.back();
    if (reach > ray.horizon() * (1.0 + 1e-12)) throw DomainError("asymptotic_ray schedule exceeds the ray horizon");
    const double horizon = std::min(ray.horizon(), space.ray_horizon(x, dir));
    if (!(horizon > 0.0)) throw NonConvergenceError("asymptotic_ray: limit direction has no ray");
    Ray eta(space, x, dir, horizon);

    const BusemannEstimate at_x = busemann_value(ray, x, reach);
    for (double t : {1.0, 2.0, 4.0}) {
        if (t > horizon) break;
        const BusemannEstimate along = busemann_value(ray, eta.at(t), reach);
        const double gap = along.extrapolated() - (t + at_x.extrapolated());
        const double allowed = tol * std::max(1.0, t + std::abs(at_x.value)) + std::abs(along.increment) +
                               std::abs(at_x.increment);
        if (std::abs(gap) > allowed) {
            std::ostringstream msg;
            msg << "asymptotic_ray: b(eta(" << t << ")) - b(x) - t = " << gap;
            throw NonConvergenceError(msg.str());
        }
    }
    return eta;
}

CheegerGromollValue cheeger_gromoll_value(const std::vector<Ray>& rays, const Point& x, double horizon) {
    if (rays.empty()) throw InputError("cheeger_gromoll_value needs at least one ray");
    CheegerGromollValue out;
    out.family_size = rays.size();
    out.value = -kInfinity;
    out.half_family_value = -kInfinity;
    const std::size_t half = std::max<std::size_t>(1, rays.size() / 2);
    for (std::size_t i = 0; i < rays.size(); ++i) {
        const double b = busemann_value(rays[i], x, std::min(horizon, rays[i].horizon())).extrapolated();
        if (b > out.value) {
            out.value = b;
            out.best_ray = i;
        }
        if (i < half) out.half_family_value = std::max(out.half_family_value, b);
    }
    return out;
}

namespace {

// Van der Corput radical inverse in base 2.
double radical_inverse(std::size_t k) {
    double result = 0.0;
    double digit = 0.5;
    while (k > 0) {
        if (k & 1U) result += digit;
        k >>= 1U;
        digit *= 0.5;
    }
    return result;
}

}  // namespace

std::vector<Ray> ray_family(const Space& space, const Point& x0, std::size_t count, double horizon,
                            std::uint64_t seed) {
    if (count == 0) throw InputError("ray family must not be empty");
    if (!space.has_directions()) throw InputError(space.kind() + ": rays need direction descriptors");
    std::vector<Direction> dirs;
    if (space.direction_size() == 2 && space.coordinate_count() == 2) {
        for (std::size_t k = 0; k < count; ++k) {
            const double angle = 2.0 * std::numbers::pi * radical_inverse(k);
            dirs.push_back(space.normalize_direction(x0, {std::cos(angle), std::sin(angle)}));
        }
    } else {
        for (const auto& y : sample_region(space, x0, 1.0, 2 * count, seed)) {
            if (dirs.size() == count) break;
            if (space.distance(x0, y) == 0.0) continue;
            dirs.push_back(space.normalize_direction(x0, space.initial_direction(x0, y)));
        }
        if (dirs.size() < count) throw SamplingError("ray_family: too many degenerate directions");
    }
    std::vector<Ray> rays;
    rays.reserve(count);
    for (auto& d : dirs) {
        const double reach = std::min(horizon, space.ray_horizon(x0, d));
        rays.emplace_back(space, x0, std::move(d), reach);
    }
    return rays;
}

CheegerGromollValue cheeger_gromoll_adaptive(const Space& space, const Point& x0, const Point& x, double horizon,
                                             double tol, std::size_t start, std::size_t max_rays) {
    std::size_t count = std::max<std::size_t>(1, start);
    CheegerGromollValue current = cheeger_gromoll_value(ray_family(space, x0, count, horizon), x, horizon);
    while (count < max_rays) {
        count *= 2;
        CheegerGromollValue next = cheeger_gromoll_value(ray_family(space, x0, count, horizon), x, horizon);
        const bool settled = std::abs(next.value - current.value) < tol;
        current = next;
        if (settled) break;
    }
    return current;
}

ScalarField cheeger_gromoll_field(const Space& space, const Point& x0, std::size_t rays, double horizon) {
    auto family = std::make_shared<const std::vector<Ray>>(ray_family(space, x0, rays, horizon));
    ScalarField f;
    f.name = "cheeger_gromoll";
    f.value = [family, horizon](const Point& x) { return cheeger_gromoll_value(*family, x, horizon).value; };
    f.slope = [](const Point&) { return 1.0; };
    return f;
}

namespace {

struct ContractionData {
    Point x;
    Point y;
    double t = 0.0;
    double s = 0.0;
    double a = 0.0;
    double before = 0.0;
    double after = 0.0;
};

const double kContractionOffsets[] = {0.0, 0.5, 1.0};

}  // namespace

CheckReport check_ray_contraction(const Ray& ray, const std::vector<Point>& samples,
                                  const std::vector<double>& a_grid, const std::vector<double>& schedule,
                                  std::optional<double> tol) {
    const Space& space = ray.space();
    const std::size_t pairs = samples.size() / 2;
    std::vector<SampleOutcome<ContractionData>> outcomes(pairs);
    parallel_for(pairs, [&](std::size_t i) {
        auto& out = outcomes[i];
        const Point& x = samples[2 * i];
        const Point& y = samples[2 * i + 1];
        const Ray eta = asymptotic_ray(x, ray, schedule, space.default_tolerance());
        const Ray xi = asymptotic_ray(y, ray, schedule, space.default_tolerance());
        for (double t : kContractionOffsets) {
            for (double s : kContractionOffsets) {
                const double before = space.distance(eta.at(t), xi.at(s));
                for (double a : a_grid) {
                    if (t + a > eta.horizon() || s + a > xi.horizon()) continue;
                    const double after = space.distance(eta.at(t + a), xi.at(s + a));
                    const double margin = (after - before) / std::max(1.0, before);
                    if (margin < out.margin) {
                        out.margin = margin;
                        out.data = {x, y, t, s, a, before, after};
                    }
                }
            }
        }
    });

    CheckReport report;
    report.property = "ray_contraction";
    report.space_spec = space.spec();
    report.n_samples = pairs;
    report.tolerance = tol.value_or(space.default_tolerance());
    if (const auto worst = worst_index(outcomes); worst && std::isfinite(outcomes[*worst].margin)) {
        const auto& d = outcomes[*worst].data;
        report.worst_margin = outcomes[*worst].margin;
        report.witness = Json{{"ray", ray.to_spec()},
                              {"x", point_to_json(d.x)},
                              {"y", point_to_json(d.y)},
                              {"schedule", schedule},
                              {"t", d.t},
                              {"s", d.s},
                              {"a", d.a},
                              {"before", d.before},
                              {"after", d.after},
                              {"margin", report.worst_margin}};
    }
    report.finalize();
    return report;
}

CheckReport check_line_inequality(const Line& line, const SamplerConfig& sampler, double horizon,
                                  std::optional<double> tol) {
    const Space& space = line.forward.space();
    verify_line(line, space.default_tolerance());
    const auto points = sample_region(space, sampler.region(space), sampler.count, sampler.seed);
    struct Data {
        double forward = 0.0;
        double backward = 0.0;
        double widening = 0.0;
    };
    std::vector<SampleOutcome<Data>> outcomes(points.size());
    parallel_for(points.size(), [&](std::size_t i) {
        auto& out = outcomes[i];
        try {
            const BusemannEstimate plus = busemann_value(line.forward, points[i], horizon);
            const BusemannEstimate minus = busemann_value(line.backward, points[i], horizon);
            out.data = {plus.extrapolated(), minus.extrapolated(), std::abs(plus.increment) + std::abs(minus.increment)};
            out.margin = -(out.data.forward + out.data.backward);
        } catch (const Error&) {
            out.skipped = true;
        }
    });

    CheckReport report;
    report.property = "line_inequality";
    report.space_spec = space.spec();
    report.n_samples = points.size();
    report.n_skipped = skipped_count(outcomes);
    double widening = 0.0;
    for (const auto& o : outcomes) {
        if (!o.skipped) widening = std::max(widening, o.data.widening);
    }
    report.tolerance = tol.value_or(space.default_tolerance()) + widening;
    if (const auto worst = worst_index(outcomes)) {
        const auto& o = outcomes[*worst];
        report.worst_margin = o.margin;
        report.witness = Json{{"forward", line.forward.to_spec()},
                              {"backward", line.backward.to_spec()},
                              {"x", point_to_json(points[*worst])},
                              {"horizon", horizon},
                              {"b_forward", o.data.forward},
                              {"b_backward", o.data.backward},
                              {"margin", o.margin}};
    }
    report.details["bracket_widening"] = widening;
    report.finalize();
    return report;
}

}  // namespace curvelab
