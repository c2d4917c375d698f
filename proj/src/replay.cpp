#include <cmath>

#include "curvelab/busemann.hpp"
#include "curvelab/comparison.hpp"
#include "curvelab/convexity.hpp"
#include "curvelab/errors.hpp"
#include "curvelab/model_spaces.hpp"
#include "curvelab/scenario.hpp"
#include "curvelab/smoothness.hpp"
#include "curvelab/splitting.hpp"
#include "curvelab/tangent.hpp"

namespace curvelab {

namespace {

Line line_from_witness(const Space& space, const Json& w) {
    return Line{Ray::parse(space, w.at("forward").get<std::string>()),
                Ray::parse(space, w.at("backward").get<std::string>())};
}

double replay_line_inequality(const Space& space, const Json& w) {
    const Line line = line_from_witness(space, w);
    const Point x = point_from_json(w.at("x"));
    const double horizon = w.at("horizon").get<double>();
    return -(busemann_value(line.forward, x, horizon).extrapolated() +
             busemann_value(line.backward, x, horizon).extrapolated());
}

double replay_splitting_distortion(const Space& space, const Json& w) {
    const Line line = line_from_witness(space, w);
    const double horizon = w.at("horizon").get<double>();
    const Point x = point_from_json(w.at("x"));
    const Point y = point_from_json(w.at("y"));
    const SplitCoordinates a = splitting_map(line, x, horizon, space.default_tolerance());
    const SplitCoordinates b = splitting_map(line, y, horizon, space.default_tolerance());
    const double d = space.distance(x, y);
    const double d_product = space.distance(a.foot, b.foot) + std::abs(a.height - b.height);
    return std::min(3.0 - d_product / d, 1.0 - d / d_product);
}

double replay_moving_isometry(const Space& space, const Json& w) {
    const Line line = line_from_witness(space, w);
    const auto schedule = doubling_schedule(w.at("horizon").get<double>());
    const Line ex = parallel_line_through(line, point_from_json(w.at("x")), schedule, space.default_tolerance());
    const Line ey = parallel_line_through(line, point_from_json(w.at("y")), schedule, space.default_tolerance());
    const double t = w.at("t").get<double>();
    const double s = w.at("s").get<double>();
    const double a = w.at("a").get<double>();
    const double before = space.distance(ex.at(t), ey.at(s));
    const double after = space.distance(ex.at(t + a), ey.at(s + a));
    return -std::abs(after - before) / std::max(1.0, before);
}

double replay_ray_contraction(const Space& space, const Json& w) {
    const Ray ray = Ray::parse(space, w.at("ray").get<std::string>());
    const auto schedule = w.at("schedule").get<std::vector<double>>();
    const Ray eta = asymptotic_ray(point_from_json(w.at("x")), ray, schedule, space.default_tolerance());
    const Ray xi = asymptotic_ray(point_from_json(w.at("y")), ray, schedule, space.default_tolerance());
    const double t = w.at("t").get<double>();
    const double s = w.at("s").get<double>();
    const double a = w.at("a").get<double>();
    const double before = space.distance(eta.at(t), xi.at(s));
    const double after = space.distance(eta.at(t + a), xi.at(s + a));
    return (after - before) / std::max(1.0, before);
}

double replay_modulus_consistency(const Json& w) {
    const double p = w.at("p").get<double>();
    return modulus_from_constant(w.at("c_hat").get<double>() * (1.0 + 1e-6), p, w.at("eps").get<double>()) -
           w.at("rho_hat").get<double>();
}

}  // namespace

double replay_report(const CheckReport& report) {
    if (report.witness.is_null()) throw InputError(report.property + ": report carries no witness");
    const Json& w = report.witness;
    if (report.property == "modulus_consistency") return replay_modulus_consistency(w);
    const SpacePtr space = make_space(report.space_spec);
    if (report.property == "busemann_concavity") return replay_busemann_concavity(*space, w);
    if (report.property == "curvature_bound") return replay_curvature_bound(*space, w);
    if (report.property == "bonnet_myers") return replay_bonnet_myers(*space, w);
    if (report.property == "boundary_sphere_diameter") return replay_boundary_sphere_diameter(*space, w);
    if (report.property == "function_convexity") {
        return replay_function_convexity(*space, make_field(w.at("field").get<std::string>(), *space), w);
    }
    if (report.property == "homogeneity") return replay_homogeneity(*space, w);
    if (report.property == "exponential_lipschitz") return replay_exponential_lipschitz(*space, w);
    if (report.property == "line_inequality") return replay_line_inequality(*space, w);
    if (report.property == "splitting_distortion") return replay_splitting_distortion(*space, w);
    if (report.property == "moving_isometry") return replay_moving_isometry(*space, w);
    if (report.property == "ray_contraction") return replay_ray_contraction(*space, w);
    throw InputError(report.property + ": no replay rule (estimator-based check)");
}

std::vector<ReplayLine> replay_document(const Json& document, double tol) {
    std::vector<Json> reports;
    if (document.is_array()) {
        for (const auto& r : document) reports.push_back(r);
    } else if (document.contains("runs")) {
        for (const auto& run : document.at("runs")) {
            if (run.contains("report")) reports.push_back(run.at("report"));
        }
    } else {
        reports.push_back(document);
    }
    std::vector<ReplayLine> lines;
    for (const auto& j : reports) {
        const CheckReport report = CheckReport::from_json(j);
        ReplayLine line;
        line.property = report.property;
        line.recorded = report.worst_margin;
        try {
            line.replayed = replay_report(report);
            line.reproduced = std::abs(line.replayed - line.recorded) <= tol * std::max(1.0, std::abs(line.recorded));
        } catch (const Error& e) {
            line.note = e.what();
        }
        lines.push_back(std::move(line));
    }
    return lines;
}

}  // namespace curvelab
