#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "curvelab/errors.hpp"
#include "curvelab/model_spaces.hpp"
#include "curvelab/scenario.hpp"
#include "curvelab/tangent.hpp"
#include "test_support.hpp"

namespace curvelab {
namespace {

using testing::sampler;
constexpr double kPi = std::numbers::pi;

TangentVector planar(double angle, double magnitude = 1.0) {
    return {{0, 0}, {std::cos(angle), std::sin(angle)}, magnitude};
}

TangentVector at_pole(double angle, double magnitude = 1.0) {
    return {{0, 0, 1}, {std::cos(angle), std::sin(angle), 0}, magnitude};
}

TEST(Schedule, Halving) {
    const auto s = halving_schedule();
    ASSERT_EQ(s.size(), 21u);
    EXPECT_EQ(s.front(), 1.0);
    EXPECT_EQ(s.back(), std::ldexp(1.0, -20));
}

TEST(Pretangent, EuclideanChord) {
    const auto space = make_space("euclidean:2");
    for (double alpha : {kPi / 6, kPi / 2, 2 * kPi / 3}) {
        const PretangentDistance d = pretangent_distance(*space, planar(0), planar(alpha));
        EXPECT_NEAR(d.value, std::sqrt(2 - 2 * std::cos(alpha)), 1e-12);
        for (double ratio : d.ratios) EXPECT_NEAR(ratio, d.value, 1e-12);
    }
}

TEST(Pretangent, SphereLimit) {
    const auto space = make_space("sphere:1");
    const PretangentDistance d = pretangent_distance(*space, at_pole(0), at_pole(kPi / 2));
    EXPECT_NEAR(d.value, std::sqrt(2.0), d.error);
    EXPECT_LT(d.error, 1e-8);
    EXPECT_TRUE(d.monotone);
}

TEST(Pretangent, EqualVectors) {
    const auto space = make_space("sphere:1");
    EXPECT_EQ(pretangent_distance(*space, at_pole(0.3), at_pole(0.3)).value, 0.0);
}

TEST(Pretangent, FlatConeAtApexUsesConeAngle) {
    // Directions 2 apart on a circle of length 5: the unrolled angle is 2.
    const auto cone = make_space("cone:circle:5");
    const TangentVector v{cone->origin(), cone->initial_direction(cone->origin(), {0.0, 1.0}), 1.0};
    const TangentVector w{cone->origin(), cone->initial_direction(cone->origin(), {2.0, 1.0}), 1.0};
    EXPECT_NEAR(pretangent_distance(*cone, v, w).value, 2 * std::sin(1.0), 1e-12);
}

TEST(Pretangent, SharedBaseRequired) {
    const auto space = make_space("euclidean:2");
    TangentVector w = planar(1.0);
    w.base = {1, 0};
    EXPECT_THROW(pretangent_distance(*space, planar(0), w), DomainError);
}

TEST(Pretangent, RatioMonotoneInConcaveSpaces) {
    for (const char* spec : {"lp:2:1.5", "sphere:1", "cone:circle:5"}) {
        const auto space = make_space(spec);
        const Point x = space->kind() == "cone" ? Point{1.0, 1.0} : space->origin();
        for (const auto& pair : sample_tangent_pairs(*space, x, sampler(30, 1.0))) {
            EXPECT_TRUE(pretangent_distance(*space, pair[0], pair[1]).monotone) << spec;
        }
    }
}

TEST(Pretangent, TriangleInequality) {
    const auto space = make_space("sphere:1");
    const auto pairs = sample_tangent_pairs(*space, space->origin(), sampler(30, 1.5));
    for (std::size_t i = 0; i + 1 < pairs.size(); ++i) {
        const TangentVector& u = pairs[i][0];
        const TangentVector& v = pairs[i][1];
        const TangentVector& w = pairs[i + 1][0];
        const double uv = pretangent_distance(*space, u, v).value;
        const double vw = pretangent_distance(*space, v, w).value;
        const double uw = pretangent_distance(*space, u, w).value;
        EXPECT_LE(uw, uv + vw + 1e-8);
    }
}

TEST(Homogeneity, Examples) {
    const auto plane = make_space("euclidean:2");
    EXPECT_NEAR(check_homogeneity(*plane, {0, 0}, sampler(50, 1.0), 2.0).worst_margin, 0.0, 1e-12);
    const auto sphere = make_space("sphere:1");
    const CheckReport half = check_homogeneity(*sphere, sphere->origin(), sampler(50, 1.0), 0.5);
    EXPECT_EQ(half.verdict, Verdict::pass);
    EXPECT_NEAR(replay_report(half), half.worst_margin, 1e-9);
    EXPECT_EQ(check_homogeneity(*sphere, sphere->origin(), sampler(20, 1.0), 1.0).worst_margin, 0.0);
}

TEST(ExponentialLipschitz, Examples) {
    const auto plane = make_space("euclidean:2");
    EXPECT_NEAR(check_exponential_lipschitz(*plane, {0, 0}, sampler(50, 1.0)).worst_margin, 0.0, 1e-12);
    const auto sphere = make_space("sphere:1");
    const CheckReport r = check_exponential_lipschitz(*sphere, sphere->origin(), sampler(50, 1.0));
    EXPECT_GT(r.worst_margin, 0.0);
    EXPECT_NEAR(replay_report(r), r.worst_margin, 1e-9);
    const auto cone = make_space("cone:circle:5");
    EXPECT_EQ(check_exponential_lipschitz(*cone, cone->origin(), sampler(50, 1.0)).verdict, Verdict::pass);
}

TEST(TangentPairs, NeedDirections) {
    const auto heis = make_space("heisenberg");
    if (!heis->has_directions()) {
        EXPECT_THROW(sample_tangent_pairs(*heis, heis->origin(), sampler(5, 1.0)), InputError);
    }
}

}  // namespace
}  // namespace curvelab
