#include "curvelab/report.hpp"

#include <cmath>

#include "curvelab/errors.hpp"

namespace curvelab {

std::string to_string(Verdict v) {
    switch (v) {
        case Verdict::pass: return "pass";
        case Verdict::fail: return "fail";
        case Verdict::degraded: return "degraded";
    }
    return "fail";
}

Verdict verdict_from_string(const std::string& s) {
    if (s == "pass") return Verdict::pass;
    if (s == "fail") return Verdict::fail;
    if (s == "degraded") return Verdict::degraded;
    throw ParseError("unknown verdict '" + s + "'");
}

void CheckReport::finalize() {
    if (worst_margin < -tolerance) {
        verdict = Verdict::fail;
    } else if (n_samples > 0 && 10 * n_skipped > n_samples) {
        verdict = Verdict::degraded;
    } else {
        verdict = Verdict::pass;
    }
}

namespace {

Json number_or_null(double x) { return std::isfinite(x) ? Json(x) : Json(nullptr); }

double number_from(const Json& j, double fallback) { return j.is_null() ? fallback : j.get<double>(); }

}  // namespace

Json CheckReport::to_json() const {
    Json j;
    j["property"] = property;
    j["space_spec"] = space_spec;
    j["k"] = k ? Json(*k) : Json(nullptr);
    j["n_samples"] = n_samples;
    j["n_skipped"] = n_skipped;
    j["worst_margin"] = number_or_null(worst_margin);
    j["tolerance"] = tolerance;
    j["witness"] = witness;
    j["verdict"] = to_string(verdict);
    if (!details.empty()) j["details"] = details;
    return j;
}

CheckReport CheckReport::from_json(const Json& j) {
    CheckReport r;
    r.property = j.at("property").get<std::string>();
    r.space_spec = j.at("space_spec").get<std::string>();
    if (j.contains("k") && !j.at("k").is_null()) r.k = j.at("k").get<double>();
    r.n_samples = j.value("n_samples", std::size_t{0});
    r.n_skipped = j.value("n_skipped", std::size_t{0});
    r.worst_margin = number_from(j.value("worst_margin", Json(nullptr)), kInfinity);
    r.tolerance = j.value("tolerance", 0.0);
    r.witness = j.value("witness", Json(nullptr));
    r.verdict = verdict_from_string(j.value("verdict", std::string("pass")));
    r.details = j.value("details", Json::object());
    return r;
}

Json point_to_json(const Point& p) {
    Json arr = Json::array();
    for (double c : p) arr.push_back(c);
    return arr;
}

Point point_from_json(const Json& j) {
    if (!j.is_array()) throw ParseError("point must be a JSON array of numbers");
    Point p;
    p.reserve(j.size());
    for (const auto& c : j) p.push_back(c.get<double>());
    return p;
}

}  // namespace curvelab
