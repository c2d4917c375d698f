#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "curvelab/point.hpp"
#include "curvelab/space.hpp"

namespace curvelab {

using Json = nlohmann::ordered_json;

enum class Verdict { pass, fail, degraded };

std::string to_string(Verdict v);
Verdict verdict_from_string(const std::string& s);

struct CheckReport {
    std::string property;
    std::string space_spec;
    std::optional<double> k;
    std::size_t n_samples = 0;
    std::size_t n_skipped = 0;
    double worst_margin = kInfinity;
    double tolerance = 0.0;
    Json witness;                    // null when nothing was tested
    Verdict verdict = Verdict::pass;
    Json details = Json::object();   // checker-specific statistics

    // fail iff worst_margin < -tolerance; otherwise degraded when more than
    // 10% of the samples were skipped.
    void finalize();
    bool passed() const { return verdict == Verdict::pass; }

    Json to_json() const;
    static CheckReport from_json(const Json& j);
};

Json point_to_json(const Point& p);
Point point_from_json(const Json& j);

// Per-sample outcome slot filled by parallel evaluation.
template <class Data>
struct SampleOutcome {
    bool skipped = false;
    double margin = kInfinity;
    Data data{};
};

// Lowest index attaining the minimal margin among non-skipped outcomes.
template <class Data>
std::optional<std::size_t> worst_index(const std::vector<SampleOutcome<Data>>& outcomes) {
    std::optional<std::size_t> best;
    for (std::size_t i = 0; i < outcomes.size(); ++i) {
        if (outcomes[i].skipped) continue;
        if (!best || outcomes[i].margin < outcomes[*best].margin) best = i;
    }
    return best;
}

template <class Data>
std::size_t skipped_count(const std::vector<SampleOutcome<Data>>& outcomes) {
    std::size_t n = 0;
    for (const auto& o : outcomes) n += o.skipped ? 1 : 0;
    return n;
}

}  // namespace curvelab
