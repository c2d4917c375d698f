#include "curvelab/tangent.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "curvelab/errors.hpp"
#include "curvelab/parallel.hpp"

namespace curvelab {

std::vector<double> halving_schedule(std::size_t levels) {
    std::vector<double> schedule(levels + 1);
    for (std::size_t i = 0; i <= levels; ++i) schedule[i] = std::ldexp(1.0, -static_cast<int>(i));
    return schedule;
}

namespace {

double coordinate_scale(const Point& p) {
    double scale = 1.0;
    for (double c : p) scale = std::max(scale, std::abs(c));
    return scale;
}

Point exp_point(const Space& space, const TangentVector& v, double r) {
    if (v.magnitude == 0.0) return v.base;
    return space.shoot(v.base, v.direction, r * v.magnitude);
}

}  // namespace

PretangentDistance pretangent_distance(const Space& space, const TangentVector& v, const TangentVector& w,
                                       const std::vector<double>& r_schedule, double tol) {
    if (v.magnitude < 0.0 || w.magnitude < 0.0) throw DomainError("tangent vector magnitudes must be >= 0");
    if (space.distance(v.base, w.base) != 0.0) throw DomainError("tangent vectors must share a base point");
    if (r_schedule.empty()) throw DomainError("empty r schedule");
    PretangentDistance out;
    if (v.magnitude == 0.0 && w.magnitude == 0.0) return out;

    const double reach_v = v.magnitude > 0.0 ? space.ray_horizon(v.base, v.direction) : kInfinity;
    const double reach_w = w.magnitude > 0.0 ? space.ray_horizon(w.base, w.direction) : kInfinity;
    const double floor = 1e3 * std::numeric_limits<double>::epsilon() * coordinate_scale(v.base);
    double previous_r = kInfinity;
    for (double r : r_schedule) {
        if (!(r > 0.0) || !(r < previous_r)) throw DomainError("r schedule must be positive and descending");
        previous_r = r;
        if (r * v.magnitude > reach_v || r * w.magnitude > reach_w) continue;
        const double d = space.distance(exp_point(space, v, r), exp_point(space, w, r));
        if (d < floor) {
            if (out.ratios.empty() && d == 0.0) out.r_min = r;
            break;
        }
        const double ratio = d / r;
        if (!out.ratios.empty()) {
            const double drop = out.ratios.back() - ratio;
            if (drop > out.worst_decrease) out.worst_decrease = drop;
            if (drop > tol * std::max(1.0, ratio)) out.monotone = false;
        }
        out.ratios.push_back(ratio);
        out.r_min = r;
        // Converged: smaller scales would only add rounding noise.
        const std::size_t n = out.ratios.size();
        if (n >= 2 && std::abs(out.ratios[n - 1] - out.ratios[n - 2]) <= tol * std::max(1.0, ratio)) break;
    }
    if (out.ratios.empty()) {
        if (out.r_min > 0.0) return out;  // the geodesics coincide
        throw DomainError("pretangent_distance: no usable scale in the schedule");
    }
    out.value = out.monotone ? out.ratios.back() : *std::max_element(out.ratios.begin(), out.ratios.end());
    const double rounding = 64.0 * std::numeric_limits<double>::epsilon() * coordinate_scale(v.base) / out.r_min;
    const double increment =
        out.ratios.size() >= 2 ? std::abs(out.ratios.back() - out.ratios[out.ratios.size() - 2]) : 0.0;
    out.error = increment + rounding;
    return out;
}

std::vector<std::array<TangentVector, 2>> sample_tangent_pairs(const Space& space, const Point& x,
                                                               const SamplerConfig& sampler) {
    if (!space.has_directions()) throw InputError(space.kind() + ": tangent vectors need direction descriptors");
    const auto points = sample_region(space, x, sampler.radius, 2 * sampler.count, sampler.seed);
    auto vector_to = [&](const Point& y) {
        const double s = space.distance(x, y);
        return TangentVector{x, s > 0.0 ? space.normalize_direction(x, space.initial_direction(x, y)) : Direction{}, s};
    };
    std::vector<std::array<TangentVector, 2>> pairs;
    for (std::size_t i = 0; i < sampler.count; ++i) {
        TangentVector v = vector_to(points[2 * i]);
        TangentVector w = vector_to(points[2 * i + 1]);
        if (v.magnitude == 0.0 || w.magnitude == 0.0) continue;
        pairs.push_back({std::move(v), std::move(w)});
    }
    return pairs;
}

namespace {

Json tangent_to_json(const TangentVector& v) {
    return {{"direction", point_to_json(v.direction)}, {"magnitude", v.magnitude}};
}

TangentVector tangent_from_json(const Point& base, const Json& j) {
    return {base, point_from_json(j.at("direction")), j.at("magnitude").get<double>()};
}

double homogeneity_margin(const Space& space, const TangentVector& v, const TangentVector& w, double lambda) {
    const double plain = pretangent_distance(space, v, w).value;
    const double stretched = pretangent_distance(space, v.scaled(lambda), w.scaled(lambda)).value;
    return -std::abs(stretched - lambda * plain) / std::max(1.0, lambda * plain);
}

double lipschitz_margin(const Space& space, const TangentVector& v, const TangentVector& w) {
    const double tangent = pretangent_distance(space, v, w).value;
    const double actual = space.distance(exp_point(space, v, 1.0), exp_point(space, w, 1.0));
    return (tangent - actual) / std::max(1.0, tangent);
}

template <class Margin>
CheckReport tangent_check(const Space& space, const Point& x, const SamplerConfig& sampler,
                          const std::string& property, double tol, Json extra, Margin margin_of) {
    const auto pairs = sample_tangent_pairs(space, x, sampler);
    std::vector<SampleOutcome<char>> outcomes(pairs.size());
    parallel_for(pairs.size(), [&](std::size_t i) {
        try {
            outcomes[i].margin = margin_of(pairs[i][0], pairs[i][1]);
        } catch (const Error&) {
            outcomes[i].skipped = true;
        }
    });
    CheckReport report;
    report.property = property;
    report.space_spec = space.spec();
    report.n_samples = sampler.count;
    report.n_skipped = skipped_count(outcomes) + (sampler.count - pairs.size());
    report.tolerance = tol;
    if (const auto worst = worst_index(outcomes)) {
        report.worst_margin = outcomes[*worst].margin;
        Json w = std::move(extra);
        w["x"] = point_to_json(x);
        w["v"] = tangent_to_json(pairs[*worst][0]);
        w["w"] = tangent_to_json(pairs[*worst][1]);
        w["margin"] = report.worst_margin;
        report.witness = std::move(w);
    }
    report.finalize();
    return report;
}

}  // namespace

CheckReport check_homogeneity(const Space& space, const Point& x, const SamplerConfig& sampler, double lambda,
                              std::optional<double> tol) {
    if (!(lambda > 0.0)) throw DomainError("homogeneity needs lambda > 0");
    return tangent_check(space, x, sampler, "homogeneity", tol.value_or(space.default_tolerance()),
                         Json{{"lambda", lambda}}, [&](const TangentVector& v, const TangentVector& w) {
                             return homogeneity_margin(space, v, w, lambda);
                         });
}

CheckReport check_exponential_lipschitz(const Space& space, const Point& x, const SamplerConfig& sampler,
                                        std::optional<double> tol) {
    return tangent_check(space, x, sampler, "exponential_lipschitz", tol.value_or(space.default_tolerance()),
                         Json::object(), [&](const TangentVector& v, const TangentVector& w) {
                             return lipschitz_margin(space, v, w);
                         });
}

double replay_homogeneity(const Space& space, const Json& witness) {
    const Point x = point_from_json(witness.at("x"));
    return homogeneity_margin(space, tangent_from_json(x, witness.at("v")), tangent_from_json(x, witness.at("w")),
                              witness.at("lambda").get<double>());
}

double replay_exponential_lipschitz(const Space& space, const Json& witness) {
    const Point x = point_from_json(witness.at("x"));
    return lipschitz_margin(space, tangent_from_json(x, witness.at("v")), tangent_from_json(x, witness.at("w")));
}

}  // namespace curvelab
