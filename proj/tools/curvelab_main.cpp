#include <CLI11.hpp>

#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>

#include "curvelab/errors.hpp"
#include "curvelab/model_spaces.hpp"
#include "curvelab/oracles.hpp"
#include "curvelab/scenario.hpp"
#include "curvelab/splitting.hpp"

namespace {

using namespace curvelab;

int run_replay(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        std::cerr << "error: cannot open '" << path << "'\n";
        return 1;
    }
    Json document;
    try {
        document = Json::parse(in);
    } catch (const Json::parse_error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    int status = 0;
    std::cout << std::setprecision(17);
    for (const auto& line : replay_document(document)) {
        if (!line.note.empty()) {
            std::cout << line.property << ": skipped (" << line.note << ")\n";
            continue;
        }
        std::cout << line.property << ": recorded " << line.recorded << " replayed " << line.replayed << " -> "
                  << (line.reproduced ? "reproduced" : "MISMATCH") << '\n';
        if (!line.reproduced) status = 1;
    }
    return status;
}

int run_spaces() {
    for (const auto& info : space_registry()) std::cout << std::left << std::setw(30) << info.pattern << info.description << '\n';
    std::cout << "\ncheckers:";
    for (const auto& name : checker_names()) std::cout << ' ' << name;
    std::cout << '\n';
    return 0;
}

int run_oracle(const std::string& name) {
    const auto all = oracles::registry();
    if (name.empty()) {
        for (const auto& o : all) std::cout << std::left << std::setw(22) << o.name << o.description << '\n';
        return 0;
    }
    for (const auto& o : all) {
        if (o.name == name) {
            std::cout << std::setprecision(17) << o.evaluate() << '\n';
            return 0;
        }
    }
    std::cerr << "error: unknown oracle '" << name << "'\n";
    return 1;
}

struct SplitOptions {
    std::string space;
    std::string line;
    std::size_t count = 200;
    double radius = 1.0;
    double horizon = 1e4;
    std::uint64_t seed = 1;
    std::string output;
};

int run_split(const SplitOptions& o) {
    const SpacePtr space = make_space(o.space);
    const Ray forward = Ray::parse(*space, o.line);
    const double horizon = std::min(o.horizon, forward.horizon());
    const Line line = make_line(*space, forward.base(), forward.direction(), horizon, space->default_tolerance());
    const auto points = sample_region(*space, forward.base(), o.radius, o.count, o.seed);
    std::ostringstream csv;
    csv << std::setprecision(17);
    const std::size_t dim = space->coordinate_count();
    for (std::size_t i = 0; i < dim; ++i) csv << "x" << i << ',';
    for (std::size_t i = 0; i < dim; ++i) csv << "foot" << i << ',';
    csv << "height\n";
    for (const auto& x : points) {
        try {
            const SplitCoordinates c = splitting_map(line, x, horizon, space->default_tolerance());
            for (double v : x) csv << v << ',';
            for (double v : c.foot) csv << v << ',';
            csv << c.height << '\n';
        } catch (const Error& e) {
            std::cerr << "warning: skipped a sample: " << e.what() << '\n';
        }
    }
    if (o.output.empty()) {
        std::cout << csv.str();
    } else {
        std::ofstream out(o.output);
        if (!out) throw InputError("cannot write '" + o.output + "'");
        out << csv.str();
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"curvelab: sampled checks of curvature conditions on model metric spaces"};
    app.require_subcommand(1);

    std::string scenario_path;
    std::string report_path;
    auto* check = app.add_subcommand("check", "run a scenario file");
    check->add_option("scenario", scenario_path, "scenario JSON file")->required();
    check->add_option("-o,--report", report_path, "write the combined report JSON here");

    std::string replay_path;
    auto* replay = app.add_subcommand("replay", "re-evaluate the witnesses of a report file");
    replay->add_option("report", replay_path, "report JSON file")->required();

    auto* spaces = app.add_subcommand("spaces", "list space specs and checkers");

    std::string oracle_name;
    auto* oracle = app.add_subcommand("oracle", "evaluate a named reference oracle (no name: list them)");
    oracle->add_option("name", oracle_name, "oracle name");

    SplitOptions split_options;
    auto* split = app.add_subcommand("split", "emit foot/height CSV of the splitting map");
    split->add_option("--space", split_options.space, "space spec")->required();
    split->add_option("--line", split_options.line, "forward ray spec <coords>@<direction>:<horizon>")->required();
    split->add_option("--count", split_options.count, "number of sample points");
    split->add_option("--radius", split_options.radius, "sampling radius around the line base");
    split->add_option("--horizon", split_options.horizon, "Busemann horizon");
    split->add_option("--seed", split_options.seed, "sampling seed");
    split->add_option("-o,--output", split_options.output, "CSV path (default stdout)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? 0 : 1;
    }

    try {
        if (*check) {
            return run_scenario_file(scenario_path,
                                     report_path.empty() ? std::nullopt : std::optional<std::string>(report_path),
                                     std::cout);
        }
        if (*replay) return run_replay(replay_path);
        if (*spaces) return run_spaces();
        if (*oracle) return run_oracle(oracle_name);
        if (*split) return run_split(split_options);
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 1;
}
