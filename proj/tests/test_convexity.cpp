#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "curvelab/convexity.hpp"
#include "curvelab/errors.hpp"
#include "curvelab/model_spaces.hpp"
#include "test_support.hpp"

namespace curvelab {
namespace {

using testing::sampler;
constexpr double kPi = std::numbers::pi;

TEST(FunctionConvexity, NormIsConvex) {
    const auto space = make_space("euclidean:2");
    const CheckReport r =
        check_function_convexity(*space, make_field("norm", *space), ConvexityMode::convex, sampler(1000, 2.0));
    EXPECT_EQ(r.verdict, Verdict::pass);
}

TEST(FunctionConvexity, ClampedNormQuasiButNotStrictly) {
    const auto space = make_space("euclidean:2");
    const ScalarField f = make_field("clamped_norm", *space);
    EXPECT_EQ(check_function_convexity(*space, f, ConvexityMode::quasi, sampler(1000, 3.0)).verdict, Verdict::pass);
    const CheckReport strict = check_function_convexity(*space, f, ConvexityMode::strictly_quasi, sampler(1000, 3.0));
    EXPECT_EQ(strict.verdict, Verdict::fail);
    // The witness geodesic lies in the flat region |x| >= 1.
    EXPECT_GE(f.value(point_from_json(strict.witness.at("x"))), 1.0 - 1e-12);
    EXPECT_NEAR(replay_function_convexity(*space, f, strict.witness), strict.worst_margin, 1e-9);
}

TEST(FunctionConvexity, ConstantIsVacuouslyProperlyQuasi) {
    for (const char* spec : {"euclidean:2", "sphere:1", "cone:circle:5"}) {
        const auto space = make_space(spec);
        const CheckReport r = check_function_convexity(*space, make_field("constant", *space),
                                                       ConvexityMode::properly_quasi, sampler(200, 1.0));
        EXPECT_EQ(r.verdict, Verdict::pass) << spec;
    }
}

TEST(FunctionConvexity, ArctanCompositionStaysQuasi) {
    const auto space = make_space("euclidean:2");
    const ScalarField base = make_field("distance:1,0", *space);
    const ScalarField composed{"arctan(distance)", [base](const Point& p) { return std::atan(base.value(p)); }, {}};
    EXPECT_EQ(check_function_convexity(*space, base, ConvexityMode::quasi, sampler(500, 2.0)).verdict, Verdict::pass);
    EXPECT_EQ(check_function_convexity(*space, composed, ConvexityMode::quasi, sampler(500, 2.0)).verdict,
              Verdict::pass);
}

TEST(FunctionConvexity, ConvexImpliesProperlyQuasi) {
    const auto space = make_space("lp:2:1.5");
    const ScalarField f = make_field("distance:0.5,0.5", *space);
    EXPECT_EQ(check_function_convexity(*space, f, ConvexityMode::convex, sampler(500, 2.0)).verdict, Verdict::pass);
    EXPECT_EQ(check_function_convexity(*space, f, ConvexityMode::properly_quasi, sampler(500, 2.0)).verdict,
              Verdict::pass);
}

TEST(FunctionConvexity, ModeNamesRoundTrip) {
    for (auto m : {ConvexityMode::convex, ConvexityMode::quasi, ConvexityMode::strictly_quasi,
                   ConvexityMode::properly_quasi}) {
        EXPECT_EQ(convexity_mode_from_string(to_string(m)), m);
    }
    EXPECT_THROW(convexity_mode_from_string("concave"), ParseError);
}

TEST(Sublevels, SymmetricIntervals) {
    const auto line = make_space("euclidean:1");
    const SublevelFamily family = make_family("balls:0", line.get());
    const SublevelValue v = function_from_sublevels(family, {2.0}, {0.0, 8.0}, 1e-10);
    EXPECT_NEAR(v.value, std::atan(2.0), 1e-9);
    EXPECT_FALSE(v.flagged);
}

TEST(Sublevels, FirstFamilyIsFlatOnAnInterval) {
    const SublevelFamily family = make_family("interval-c1");
    for (double x : {1.2, 1.5, 1.9, 2.0}) {
        EXPECT_NEAR(function_from_sublevels(family, {x}, {0.0, 8.0}, 1e-10).value, std::atan(1.0), 1e-9) << x;
    }
    EXPECT_NEAR(function_from_sublevels(family, {0.5}, {0.0, 8.0}, 1e-10).value, std::atan(0.5), 1e-9);
    EXPECT_NEAR(function_from_sublevels(family, {3.0}, {0.0, 8.0}, 1e-10).value, std::atan(2.0), 1e-9);
}

TEST(Sublevels, ThirdFamilyFiniteButNotStrict) {
    const SublevelFamily family = make_family("interval-c3");
    const SublevelValue v = function_from_sublevels(family, {-5.0}, {-10.0, 10.0}, 1e-10);
    // x lies in every member, so the infimal index is -inf and f = arctan(-inf).
    EXPECT_TRUE(std::isfinite(v.value));
    EXPECT_NEAR(v.value, -kPi / 2, 1e-12);
    // f is constant on the whole half-line x <= 0, so strict quasi-convexity fails there.
    const SublevelValue w = function_from_sublevels(family, {-1.0}, {-10.0, 10.0}, 1e-10);
    EXPECT_EQ(v.value, w.value);
    EXPECT_LT(function_from_sublevels(family, {-1.0}, {-10.0, 10.0}, 1e-10).value,
              function_from_sublevels(family, {1.0}, {-10.0, 10.0}, 1e-10).value);
}

TEST(Sublevels, FamilyValidators) {
    std::vector<Point> pts;
    for (int i = -20; i <= 20; ++i) pts.push_back({0.25 * i});
    const auto line = make_space("euclidean:1");
    const FamilyValidation ok = validate_family(make_family("balls:0", line.get()), pts, 0.0, 4.0);
    EXPECT_TRUE(ok.nondecreasing && ok.right_continuous && ok.interior_left_continuous);
    const FamilyValidation c1 = validate_family(make_family("interval-c1"), pts, 0.0, 4.0);
    EXPECT_TRUE(c1.nondecreasing);
    EXPECT_FALSE(c1.right_continuous && c1.interior_left_continuous);
    const FamilyValidation c3 = validate_family(make_family("interval-c3"), pts, -4.0, 4.0);
    EXPECT_FALSE(c3.escapes_interior);
}

TEST(Sublevels, ReproducesFieldThroughArctan) {
    const auto space = make_space("euclidean:2");
    const ScalarField f = make_field("distance:0.3,-0.2", *space);
    const SublevelFamily family = sublevel_family_of(f);
    for (const auto& p : sample_region(*space, space->origin(), 2.0, 50, 3)) {
        EXPECT_NEAR(function_from_sublevels(family, p, {0.0, 8.0}, 1e-10).value, std::atan(f.value(p)), 2e-10);
    }
}

TEST(ConvexityRadius, Examples) {
    const auto plane = make_space("euclidean:2");
    EXPECT_NEAR(convexity_radius_estimate(*plane, {0, 0}, 5.0, 20, 200, 1), 5.0, 1e-12);
    const auto sphere = make_space("sphere:1");
    EXPECT_NEAR(convexity_radius_estimate(*sphere, {0, 0, 1}, 3.0, 60, 400, 1), kPi / 2, 0.1);
    const auto cone = make_space("cone:circle:5");
    EXPECT_NEAR(convexity_radius_estimate(*cone, cone->origin(), 2.0, 20, 300, 1), 2.0, 1e-12);
}

TEST(Fields, CoordinateSlopeOnlyOnEuclidean) {
    const auto plane = make_space("euclidean:2");
    const ScalarField f = make_field("coordinate:1", *plane);
    EXPECT_EQ(f.value({3.0, -2.0}), -2.0);
    ASSERT_TRUE(f.slope);
    EXPECT_EQ(f.slope({0.0, 0.0}), 1.0);
    EXPECT_THROW(make_field("bogus", *plane), ParseError);
}

}  // namespace
}  // namespace curvelab
