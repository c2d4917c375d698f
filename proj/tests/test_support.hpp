#pragma once

#include <string>
#include <vector>

#include "curvelab/model_spaces.hpp"
#include "curvelab/sampling.hpp"

namespace curvelab::testing {

inline SamplerConfig sampler(std::size_t count, double radius, std::uint64_t seed = 1,
                             std::optional<Point> center = {}) {
    SamplerConfig s;
    s.count = count;
    s.radius = radius;
    s.seed = seed;
    s.center = std::move(center);
    return s;
}

// Spaces exercised by the generic metric properties, with a sampling radius each.
struct SpaceCase {
    std::string spec;
    double radius;
};

inline std::vector<SpaceCase> property_spaces() {
    return {
        {"euclidean:3", 2.0},
        {"lp:2:1.5", 2.0},
        {"lp:3:4", 1.0},
        {"sphere:1", 2.0},
        {"sphere:2", 3.0},
        {"circle:5", 2.0},
        {"cone:circle:5", 1.5},
        {"cone:circle:7", 1.5},
        {"product:l2:euclidean:1,sphere:1", 1.5},
        {"product:l3:[lp:2:1.5],circle:4", 1.0},
        {"hilbert:ellipse:2:1", 1.0},
        {"hilbert:interval:-1:1", 1.0},
        {"scaled:2:sphere:1", 2.0},
    };
}

inline std::string source_path(const std::string& relative) { return std::string(CURVELAB_SOURCE_DIR) + "/" + relative; }

}  // namespace curvelab::testing
