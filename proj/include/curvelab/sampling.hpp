#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "curvelab/space.hpp"

namespace curvelab {

// Closed ball used to restrict samplers and searches.
struct Region {
    Point center;
    double radius = 1.0;
};

struct SamplerConfig {
    std::optional<Point> center;  // the space origin when empty
    double radius = 1.0;
    std::size_t count = 1000;
    std::uint64_t seed = 1;

    Region region(const Space& space) const;
};

// n points of the closed ball, by rejection from the space's proposal chart.
// Throws SamplingError when fewer than 1% of at least 100 proposals land.
std::vector<Point> sample_region(const Space& space, const Point& center, double radius,
                                 std::size_t n, std::uint64_t seed);

std::vector<Point> sample_region(const Space& space, const Region& region, std::size_t n,
                                 std::uint64_t seed);

}  // namespace curvelab
