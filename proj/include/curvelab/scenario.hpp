#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "curvelab/report.hpp"

namespace curvelab {

inline constexpr int kScenarioSchemaVersion = 1;

struct Scenario {
    std::string name;
    std::string space;
    std::string checker;
    Json params = Json::object();
    std::uint64_t seed = 1;
    std::optional<double> tolerance;
    std::optional<std::string> report_path;
    std::optional<std::string> csv_path;
};

std::vector<std::string> checker_names();

// A document is either one scenario or {"schema_version", "runs": [...]}.
// Unknown fields, unknown checkers and malformed parameters raise ParseError.
std::vector<Scenario> parse_scenarios(const Json& document);
std::vector<Scenario> load_scenarios(const std::string& path);

struct RunResult {
    Scenario scenario;
    std::optional<CheckReport> report;
    Json table;          // checker-specific table, null when none
    std::string csv;     // CSV rendering of the table, empty when none
    std::string error;   // set when the run raised
};

RunResult run_scenario(const Scenario& scenario);

// {"schema_version", "runs": [...], "summary": {pass, fail, degraded, error}}.
Json emit_report(const std::vector<RunResult>& results);

// 1 when any run errored, else 2 when any report failed, else 0.
int exit_status(const std::vector<RunResult>& results);

// Runs every scenario of the file, writes the requested outputs and a summary
// line to `log`; returns exit_status.
int run_scenario_file(const std::string& path, const std::optional<std::string>& report_path, std::ostream& log);

// Recomputes the witness margin of a report. Throws InputError for checkers
// without a replay rule.
double replay_report(const CheckReport& report);

struct ReplayLine {
    std::string property;
    double recorded = 0.0;
    double replayed = 0.0;
    bool reproduced = false;
    std::string note;
};

// Accepts a single report, an emit_report document, or a list of reports.
std::vector<ReplayLine> replay_document(const Json& document, double tol = 1e-9);

}  // namespace curvelab
