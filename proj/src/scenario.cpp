#include "curvelab/scenario.hpp"

#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <ostream>
#include <set>
#include <sstream>

#include "curvelab/busemann.hpp"
#include "curvelab/comparison.hpp"
#include "curvelab/convexity.hpp"
#include "curvelab/errors.hpp"
#include "curvelab/measure.hpp"
#include "curvelab/model_spaces.hpp"
#include "curvelab/smoothness.hpp"
#include "curvelab/splitting.hpp"
#include "curvelab/tangent.hpp"

namespace curvelab {

namespace {

// Typed access to a JSON object that remembers which keys were read, so that
// leftovers can be rejected as typos.
class Params {
public:
    Params(const Json& object, std::string where) : object_(object), where_(std::move(where)) {
        if (!object_.is_object()) throw ParseError(where_ + ": expected an object");
    }

    bool has(const std::string& key) const { return object_.contains(key); }

    template <class T>
    T get(const std::string& key) {
        used_.insert(key);
        if (!object_.contains(key)) throw ParseError(where_ + ": missing field '" + key + "'");
        return convert<T>(object_.at(key), key);
    }

    template <class T>
    T get(const std::string& key, T fallback) {
        used_.insert(key);
        if (!object_.contains(key)) return fallback;
        return convert<T>(object_.at(key), key);
    }

    template <class T>
    std::optional<T> optional(const std::string& key) {
        used_.insert(key);
        if (!object_.contains(key) || object_.at(key).is_null()) return std::nullopt;
        return convert<T>(object_.at(key), key);
    }

    Json raw(const std::string& key) {
        used_.insert(key);
        return object_.contains(key) ? object_.at(key) : Json();
    }

    void finish() const {
        for (const auto& item : object_.items()) {
            if (!used_.count(item.key())) throw ParseError(where_ + ": unknown field '" + item.key() + "'");
        }
    }

private:
    template <class T>
    T convert(const Json& value, const std::string& key) const {
        try {
            return value.get<T>();
        } catch (const Json::exception&) {
            throw ParseError(where_ + ": field '" + key + "' has the wrong type");
        }
    }

    const Json& object_;
    std::string where_;
    std::set<std::string> used_;
};

struct Context {
    const Scenario& scenario;
    SpacePtr space;
    Params params;
    RunResult& result;
};

SamplerConfig read_sampler(Context& c, std::size_t default_count = 1000) {
    SamplerConfig s;
    s.seed = c.scenario.seed;
    const Json raw = c.params.raw("sampler");
    if (raw.is_null()) {
        s.count = default_count;
        return s;
    }
    Params p(raw, c.scenario.name + ".sampler");
    s.center = p.optional<Point>("center");
    s.radius = p.get<double>("radius", 1.0);
    s.count = p.get<std::size_t>("count", default_count);
    p.finish();
    if (s.center) c.space->validate(*s.center);
    return s;
}

std::optional<Region> read_region(Context& c) {
    const Json raw = c.params.raw("region");
    if (raw.is_null()) return std::nullopt;
    Params p(raw, c.scenario.name + ".region");
    Region r{p.get<Point>("center"), p.get<double>("radius")};
    p.finish();
    c.space->validate(r.center);
    return r;
}

Point read_point(Context& c, const std::string& key) {
    if (!c.params.has(key)) return c.space->origin();
    Point p = c.params.get<Point>(key);
    c.space->validate(p);
    return p;
}

Line read_line(Context& c, double horizon) {
    const Ray forward = Ray::parse(*c.space, c.params.get<std::string>("line"));
    return make_line(*c.space, forward.base(), forward.direction(), std::min(horizon, forward.horizon()),
                     c.space->default_tolerance());
}

using Runner = std::function<CheckReport(Context&)>;

const std::map<std::string, Runner>& runners() {
    static const std::map<std::string, Runner> table = {
        {"busemann_concavity",
         [](Context& c) {
             const auto t_grid = c.params.get<std::size_t>("t_grid", 33);
             return check_busemann_concavity(*c.space, read_sampler(c), t_grid, c.scenario.tolerance);
         }},
        {"curvature_bound",
         [](Context& c) {
             const double k = c.params.get<double>("k");
             const auto t_grid = c.params.get<std::size_t>("t_grid", 33);
             return check_curvature_bound(*c.space, k, read_sampler(c), t_grid, c.scenario.tolerance);
         }},
        {"bonnet_myers",
         [](Context& c) {
             const double k = c.params.get<double>("k");
             const auto n = c.params.get<std::size_t>("n", 400);
             const auto refine = c.params.get<std::size_t>("refine_iters", 400);
             return check_bonnet_myers(*c.space, k, c.scenario.tolerance, n, c.scenario.seed, refine, read_region(c));
         }},
        {"boundary_sphere_diameter",
         [](Context& c) {
             const Point x = read_point(c, "x");
             const double s = c.params.get<double>("s");
             const auto n = c.params.get<std::size_t>("n", 2000);
             return check_boundary_sphere_diameter(*c.space, x, s, n, c.scenario.seed, c.scenario.tolerance,
                                                   read_region(c));
         }},
        {"function_convexity",
         [](Context& c) {
             const ScalarField f = make_field(c.params.get<std::string>("field"), *c.space);
             const auto mode = convexity_mode_from_string(c.params.get<std::string>("mode", std::string("convex")));
             const auto t_grid = c.params.get<std::size_t>("t_grid", 33);
             return check_function_convexity(*c.space, f, mode, read_sampler(c), t_grid, c.scenario.tolerance);
         }},
        {"smoothness",
         [](Context& c) {
             const double p = c.params.get<double>("p", 2.0);
             const auto eps = c.params.get<std::vector<double>>("eps_grid", log_grid(1e-3, 1.0, 13));
             const auto triples = sample_smoothness_triples(*c.space, read_sampler(c, 10000));
             const ModulusTable table = estimate_modulus(triples, eps, c.space->spec());
             const double c_hat = estimate_p_constant(triples, p);
             CheckReport report = check_modulus_consistency(table, c_hat, p);
             report.details["c_hat"] = c_hat;
             c.result.table = table.to_json();
             c.result.csv = table.to_csv();
             return report;
         }},
        {"line_inequality",
         [](Context& c) {
             const double horizon = c.params.get<double>("horizon", 1e4);
             const Line line = read_line(c, horizon);
             return check_line_inequality(line, read_sampler(c, 200), horizon, c.scenario.tolerance);
         }},
        {"ray_contraction",
         [](Context& c) {
             const double horizon = c.params.get<double>("horizon", 1e4);
             const Ray ray = Ray::parse(*c.space, c.params.get<std::string>("ray"));
             const auto a_grid = c.params.get<std::vector<double>>("a_grid", {0.5, 1.0, 2.0});
             const SamplerConfig s = read_sampler(c, 100);
             const auto samples = sample_region(*c.space, s.region(*c.space), 2 * s.count, s.seed);
             return check_ray_contraction(ray, samples, a_grid, doubling_schedule(std::min(horizon, ray.horizon())),
                                          c.scenario.tolerance);
         }},
        {"splitting_distortion",
         [](Context& c) {
             const double horizon = c.params.get<double>("horizon", 1e4);
             const Line line = read_line(c, horizon);
             return splitting_distortion(line, read_sampler(c, 1000), horizon, c.scenario.tolerance);
         }},
        {"moving_isometry",
         [](Context& c) {
             const double horizon = c.params.get<double>("horizon", 1e4);
             const Line line = read_line(c, horizon);
             const auto a_grid = c.params.get<std::vector<double>>("a_grid", {0.0, 0.5, 1.0, 2.0});
             return check_moving_isometry(line, read_sampler(c, 200), a_grid, horizon, c.scenario.tolerance);
         }},
        {"homogeneity",
         [](Context& c) {
             const Point x = read_point(c, "x");
             const double lambda = c.params.get<double>("lambda");
             return check_homogeneity(*c.space, x, read_sampler(c, 200), lambda, c.scenario.tolerance);
         }},
        {"exponential_lipschitz",
         [](Context& c) {
             const Point x = read_point(c, "x");
             return check_exponential_lipschitz(*c.space, x, read_sampler(c, 200), c.scenario.tolerance);
         }},
        {"mcp",
         [](Context& c) {
             const Point x = read_point(c, "x");
             const auto region = read_region(c);
             if (!region) throw ParseError(c.scenario.name + ": mcp needs a region");
             const int n = c.params.get<int>("n", c.space->intrinsic_dimension());
             const auto t_grid = c.params.get<std::vector<double>>("t_grid", {0.25, 0.5, 0.75});
             return mcp_check(*c.space, x, ball_region(*c.space, region->center, region->radius), t_grid, n,
                              c.scenario.tolerance.value_or(0.05), c.scenario.seed);
         }},
        {"bishop_gromov",
         [](Context& c) {
             const Point x = read_point(c, "x");
             const auto radii = c.params.get<std::vector<double>>("radii");
             const int n = c.params.get<int>("n", c.space->intrinsic_dimension());
             BishopGromovResult result =
                 bishop_gromov_table(*c.space, x, radii, n, c.scenario.seed, c.scenario.tolerance.value_or(0.02));
             c.result.table = result.report.details.at("rows");
             c.result.csv = result.to_csv();
             return result.report;
         }},
        {"doubling",
         [](Context& c) {
             const Point x = read_point(c, "x");
             const auto radii = c.params.get<std::vector<double>>("radii");
             const int n = c.params.get<int>("n", c.space->intrinsic_dimension());
             return check_doubling(*c.space, x, radii, n, c.scenario.seed, c.scenario.tolerance.value_or(0.05));
         }},
        {"poincare",
         [](Context& c) {
             const Point x = read_point(c, "x");
             const double r = c.params.get<double>("r");
             const int n = c.params.get<int>("n", c.space->intrinsic_dimension());
             const ScalarField u = make_field(c.params.get<std::string>("field"), *c.space);
             const auto mc = c.params.get<std::size_t>("mc_samples", 20000);
             return poincare_check(*c.space, x, r, n, u, mc, c.scenario.seed, c.scenario.tolerance.value_or(0.05));
         }},
        {"hausdorff",
         [](Context& c) {
             const int n = c.params.get<int>("n", c.space->intrinsic_dimension());
             const auto region = read_region(c);
             const auto expected = c.params.optional<double>("expected");
             const MeasureRegion omega = region ? ball_region(*c.space, region->center, region->radius)
                                                : ball_region(*c.space, c.space->origin(), c.space->diameter());
             if (!region && !c.space->bounded()) throw ParseError(c.scenario.name + ": unbounded space needs a region");
             const MeasureEstimate est = hausdorff_estimate(*c.space, omega, n, {}, c.scenario.seed);
             c.result.table = est.to_json();
             c.result.csv = est.to_csv();
             CheckReport report;
             report.property = "hausdorff";
             report.space_spec = c.space->spec();
             report.n_samples = est.sample_count;
             report.tolerance = c.scenario.tolerance.value_or(0.05);
             report.details["value"] = est.value;
             report.details["converged"] = est.converged;
             if (expected) {
                 report.worst_margin = -std::abs(est.value - *expected) / std::abs(*expected);
                 report.witness = Json{{"expected", *expected}, {"value", est.value}};
             }
             report.finalize();
             return report;
         }},
    };
    return table;
}

Scenario parse_one(const Json& j, const std::string& fallback_name, bool top_level) {
    Params p(j, fallback_name);
    if (top_level) {
        const int version = p.get<int>("schema_version");
        if (version != kScenarioSchemaVersion) throw ParseError("unsupported schema_version " + std::to_string(version));
    }
    Scenario s;
    s.name = p.get<std::string>("name", fallback_name);
    s.space = p.get<std::string>("space");
    s.checker = p.get<std::string>("checker");
    if (!runners().count(s.checker)) throw ParseError(s.name + ": unknown checker '" + s.checker + "'");
    s.params = p.get<Json>("params", Json::object());
    if (!s.params.is_object()) throw ParseError(s.name + ": params must be an object");
    s.seed = p.get<std::uint64_t>("seed", 1);
    s.tolerance = p.optional<double>("tolerance");
    const Json output = p.raw("output");
    if (!output.is_null()) {
        Params o(output, s.name + ".output");
        s.report_path = o.optional<std::string>("report");
        s.csv_path = o.optional<std::string>("csv");
        o.finish();
    }
    p.finish();
    return s;
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw InputError("cannot write '" + path + "'");
    out << content;
    if (!out) throw InputError("failed writing '" + path + "'");
}

}  // namespace

std::vector<std::string> checker_names() {
    std::vector<std::string> names;
    for (const auto& [name, runner] : runners()) names.push_back(name);
    return names;
}

std::vector<Scenario> parse_scenarios(const Json& document) {
    if (!document.is_object()) throw ParseError("scenario document must be a JSON object");
    if (!document.contains("runs")) return {parse_one(document, "scenario", true)};
    Params p(document, "document");
    const int version = p.get<int>("schema_version");
    if (version != kScenarioSchemaVersion) throw ParseError("unsupported schema_version " + std::to_string(version));
    const Json runs = p.get<Json>("runs");
    p.finish();
    if (!runs.is_array() || runs.empty()) throw ParseError("runs must be a non-empty array");
    std::vector<Scenario> out;
    for (std::size_t i = 0; i < runs.size(); ++i) out.push_back(parse_one(runs[i], "run" + std::to_string(i), false));
    return out;
}

std::vector<Scenario> load_scenarios(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InputError("cannot open scenario file '" + path + "'");
    Json document;
    try {
        document = Json::parse(in);
    } catch (const Json::parse_error& e) {
        throw ParseError(path + ": " + e.what());
    }
    auto scenarios = parse_scenarios(document);
    // Polygon files named by a relative path are looked up next to the scenario file.
    const std::filesystem::path dir = std::filesystem::path(path).parent_path();
    for (auto& sc : scenarios) {
        const std::string prefix = "hilbert:";
        if (sc.space.rfind(prefix, 0) != 0) continue;
        const std::filesystem::path polygon = sc.space.substr(prefix.size());
        if (polygon.is_absolute() || std::filesystem::exists(polygon)) continue;
        if (std::filesystem::exists(dir / polygon)) sc.space = prefix + (dir / polygon).string();
    }
    return scenarios;
}

RunResult run_scenario(const Scenario& scenario) {
    RunResult result;
    result.scenario = scenario;
    try {
        Context context{scenario, make_space(scenario.space), Params(scenario.params, scenario.name + ".params"),
                        result};
        const Runner& runner = runners().at(scenario.checker);
        CheckReport report = runner(context);
        context.params.finish();
        result.report = std::move(report);
    } catch (const Error& e) {
        result.error = e.what();
    } catch (const Json::exception& e) {
        result.error = std::string("malformed parameter: ") + e.what();
    }
    return result;
}

Json emit_report(const std::vector<RunResult>& results) {
    Json runs = Json::array();
    std::size_t pass = 0, fail = 0, degraded = 0, errors = 0;
    for (const auto& r : results) {
        Json block;
        block["name"] = r.scenario.name;
        block["checker"] = r.scenario.checker;
        block["seed"] = r.scenario.seed;
        if (r.report) {
            block["report"] = r.report->to_json();
            switch (r.report->verdict) {
                case Verdict::pass: ++pass; break;
                case Verdict::fail: ++fail; break;
                case Verdict::degraded: ++degraded; break;
            }
        } else {
            block["error"] = r.error;
            ++errors;
        }
        if (!r.table.is_null()) block["table"] = r.table;
        runs.push_back(std::move(block));
    }
    Json doc;
    doc["schema_version"] = kScenarioSchemaVersion;
    doc["runs"] = std::move(runs);
    doc["summary"] = {{"pass", pass}, {"fail", fail}, {"degraded", degraded}, {"error", errors}};
    return doc;
}

int exit_status(const std::vector<RunResult>& results) {
    bool failed = false;
    for (const auto& r : results) {
        if (!r.report) return 1;
        failed = failed || r.report->verdict == Verdict::fail;
    }
    return failed ? 2 : 0;
}

int run_scenario_file(const std::string& path, const std::optional<std::string>& report_path, std::ostream& log) {
    std::vector<Scenario> scenarios;
    try {
        scenarios = load_scenarios(path);
    } catch (const Error& e) {
        log << "error: " << e.what() << '\n';
        return 1;
    }
    std::vector<RunResult> results;
    for (const auto& s : scenarios) {
        results.push_back(run_scenario(s));
        const RunResult& r = results.back();
        if (r.report) {
            log << s.name << ": " << s.checker << " on " << s.space << " -> " << to_string(r.report->verdict)
                << " (worst margin " << r.report->worst_margin << ", tolerance " << r.report->tolerance << ")\n";
        } else {
            log << s.name << ": error: " << r.error << '\n';
        }
    }
    const Json doc = emit_report(results);
    try {
        for (const auto& r : results) {
            if (r.scenario.report_path) write_file(*r.scenario.report_path, emit_report({r}).dump(2) + "\n");
            if (r.scenario.csv_path && !r.csv.empty()) write_file(*r.scenario.csv_path, r.csv);
        }
        if (report_path) write_file(*report_path, doc.dump(2) + "\n");
    } catch (const Error& e) {
        log << "error: " << e.what() << '\n';
        return 1;
    }
    const Json& summary = doc.at("summary");
    log << "summary: " << summary.at("pass").get<std::size_t>() << " pass, " << summary.at("fail").get<std::size_t>()
        << " fail, " << summary.at("degraded").get<std::size_t>() << " degraded, "
        << summary.at("error").get<std::size_t>() << " error\n";
    return exit_status(results);
}

}  // namespace curvelab
