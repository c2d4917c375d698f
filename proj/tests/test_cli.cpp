#include <gtest/gtest.h>

#include <cstdlib>
#include <sstream>

#include "curvelab/errors.hpp"
#include "curvelab/scenario.hpp"
#include "test_support.hpp"

namespace curvelab {
namespace {

using testing::source_path;

Json single(const std::string& space, const std::string& checker, Json params = Json::object()) {
    return Json{{"schema_version", 1}, {"space", space}, {"checker", checker}, {"params", std::move(params)}};
}

std::vector<RunResult> run_all(const std::vector<Scenario>& scenarios) {
    std::vector<RunResult> results;
    for (const auto& s : scenarios) results.push_back(run_scenario(s));
    return results;
}

TEST(Scenario, ParsesSingleAndBatchDocuments) {
    const auto one = parse_scenarios(single("sphere:1", "curvature_bound", {{"k", 1}}));
    ASSERT_EQ(one.size(), 1u);
    EXPECT_EQ(one[0].space, "sphere:1");
    EXPECT_EQ(one[0].checker, "curvature_bound");

    const auto batch = load_scenarios(source_path("scenarios/batch.json"));
    EXPECT_EQ(batch.size(), 5u);
}

TEST(Scenario, RejectsUnknownFieldsAndCheckers) {
    Json doc = single("euclidean:2", "curvature_bound");
    doc["colour"] = "red";
    EXPECT_THROW(parse_scenarios(doc), ParseError);
    EXPECT_THROW(parse_scenarios(single("euclidean:2", "nonsense")), ParseError);
    Json wrong_version = single("euclidean:2", "curvature_bound");
    wrong_version["schema_version"] = 99;
    EXPECT_THROW(parse_scenarios(wrong_version), ParseError);
}

TEST(Scenario, ExitCodes) {
    std::ostringstream log;
    EXPECT_EQ(run_scenario_file(source_path("scenarios/sphere_curvature.json"), std::nullopt, log), 0);
    EXPECT_EQ(run_scenario_file(source_path("scenarios/hilbert_ellipse_concavity.json"), std::nullopt, log), 2);
    EXPECT_EQ(run_scenario_file(source_path("scenarios/nonsense.json"), std::nullopt, log), 1);
    EXPECT_EQ(run_scenario_file(source_path("scenarios/missing.json"), std::nullopt, log), 1);
}

TEST(Scenario, FailingRunCarriesWitness) {
    const auto results = run_all(load_scenarios(source_path("scenarios/hilbert_ellipse_concavity.json")));
    ASSERT_EQ(results.size(), 1u);
    ASSERT_TRUE(results[0].report.has_value());
    EXPECT_EQ(results[0].report->verdict, Verdict::fail);
    EXPECT_FALSE(results[0].report->witness.is_null());
    EXPECT_EQ(exit_status(results), 2);
}

TEST(Scenario, BadSpaceIsAnErrorRun) {
    const auto results = run_all(parse_scenarios(single("klein-bottle:2", "curvature_bound")));
    ASSERT_EQ(results.size(), 1u);
    EXPECT_FALSE(results[0].error.empty());
    EXPECT_EQ(exit_status(results), 1);
}

TEST(Scenario, SummaryCountsBatch) {
    const auto results = run_all(load_scenarios(source_path("scenarios/batch.json")));
    const Json report = emit_report(results);
    EXPECT_EQ(report.at("schema_version").get<int>(), kScenarioSchemaVersion);
    EXPECT_EQ(report.at("runs").size(), 5u);
    const Json& summary = report.at("summary");
    EXPECT_EQ(summary.at("pass").get<int>(), 4);
    EXPECT_EQ(summary.at("fail").get<int>(), 1);
    EXPECT_EQ(summary.at("degraded").get<int>(), 0);
    EXPECT_EQ(summary.at("error").get<int>(), 0);
}

TEST(Replay, ReproducesRecordedMargins) {
    const auto results = run_all(load_scenarios(source_path("scenarios/batch.json")));
    const auto lines = replay_document(emit_report(results));
    ASSERT_EQ(lines.size(), 5u);
    for (const auto& line : lines) {
        if (!line.note.empty()) continue;
        EXPECT_TRUE(line.reproduced) << line.property;
        EXPECT_NEAR(line.replayed, line.recorded, 1e-9) << line.property;
    }
}

TEST(Replay, SingleReportRoundTrip) {
    const auto results = run_all(load_scenarios(source_path("scenarios/hilbert_ellipse_concavity.json")));
    ASSERT_TRUE(results[0].report.has_value());
    const CheckReport restored = CheckReport::from_json(results[0].report->to_json());
    EXPECT_NEAR(replay_report(restored), results[0].report->worst_margin, 1e-9);
}

TEST(Replay, MeasureChecksHaveNoReplayRule) {
    const auto results = run_all(load_scenarios(source_path("scenarios/sphere_measure.json")));
    for (const auto& r : results) {
        ASSERT_TRUE(r.report.has_value());
        EXPECT_THROW(replay_report(*r.report), InputError);
    }
    for (const auto& line : replay_document(emit_report(results))) EXPECT_FALSE(line.note.empty());
}

TEST(Determinism, OutputIndependentOfThreadCount) {
    const auto scenarios = load_scenarios(source_path("scenarios/batch.json"));
    const char* previous = std::getenv("CURVELAB_THREADS");
    const std::string saved = previous ? previous : "";
    setenv("CURVELAB_THREADS", "1", 1);
    const std::string serial = emit_report(run_all(scenarios)).dump();
    setenv("CURVELAB_THREADS", "8", 1);
    const std::string parallel = emit_report(run_all(scenarios)).dump();
    if (previous) setenv("CURVELAB_THREADS", saved.c_str(), 1);
    else unsetenv("CURVELAB_THREADS");
    EXPECT_EQ(serial, parallel);
}

}  // namespace
}  // namespace curvelab
