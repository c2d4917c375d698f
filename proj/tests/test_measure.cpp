#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "curvelab/convexity.hpp"
#include "curvelab/errors.hpp"
#include "curvelab/measure.hpp"
#include "curvelab/model_spaces.hpp"
#include "curvelab/oracles.hpp"
#include "test_support.hpp"

namespace curvelab {
namespace {

constexpr double kPi = std::numbers::pi;

TEST(FarthestPoint, RadiiNonIncreasingAndExact) {
    const auto space = make_space("euclidean:1");
    const std::vector<Point> pts{{0.0}, {1.0}, {0.5}, {0.25}, {0.75}};
    const auto radii = farthest_point_radii(*space, pts, 0.0);
    const std::vector<double> expected{1.0, 0.5, 0.25, 0.25, 0.0};
    ASSERT_EQ(radii.size(), expected.size());
    for (std::size_t i = 0; i < radii.size(); ++i) EXPECT_DOUBLE_EQ(radii[i], expected[i]);
}

TEST(FarthestPoint, MatchesQuadraticTraversal) {
    const auto space = make_space("sphere:1");
    const auto pts = sample_region(*space, space->origin(), 1.5, 3000, 3);
    // Plain Gonzalez traversal as reference.
    std::vector<double> nearest(pts.size(), kInfinity);
    std::vector<double> reference;
    std::size_t centre = 0;
    for (int step = 0; step < 200; ++step) {
        double worst = 0.0;
        std::size_t next = centre;
        for (std::size_t i = 0; i < pts.size(); ++i) {
            nearest[i] = std::min(nearest[i], space->distance(pts[centre], pts[i]));
            if (nearest[i] > worst) {
                worst = nearest[i];
                next = i;
            }
        }
        reference.push_back(worst);
        centre = next;
    }
    const auto radii = farthest_point_radii(*space, pts, reference.back());
    ASSERT_GE(radii.size(), reference.size());
    for (std::size_t i = 0; i < reference.size(); ++i) EXPECT_EQ(radii[i], reference[i]) << i;
}

TEST(NetCounts, NonIncreasingInDelta) {
    const auto space = make_space("euclidean:2");
    const auto pts = cube_region(2).sample(4000, 5);
    const auto counts = net_counts(*space, pts, {0.05, 0.1, 0.2, 0.4});
    for (std::size_t i = 1; i < counts.size(); ++i) EXPECT_LE(counts[i], counts[i - 1]);
}

TEST(Hausdorff, UnitSquare) {
    const auto space = make_space("euclidean:2");
    const MeasureEstimate e = hausdorff_estimate(*space, cube_region(2), 2, {}, 3);
    EXPECT_NEAR(e.value, 1.0, 0.05);
    EXPECT_EQ(e.to_csv().rfind("delta,count,estimate\n", 0), 0u);
}

TEST(Hausdorff, FullSphere) {
    const auto space = make_space("sphere:1");
    const MeasureEstimate e = hausdorff_estimate(*space, ball_region(*space, space->origin(), kPi), 2);
    EXPECT_NEAR(e.value / oracles::sphere_cap_area(kPi), 1.0, 0.05);
}

TEST(Hausdorff, DimensionOvershootVanishes) {
    const auto space = make_space("euclidean:2");
    const MeasureEstimate e = hausdorff_estimate(*space, cube_region(2), 3, {0.4, 0.2, 0.1, 0.05});
    for (std::size_t i = 1; i < e.estimates.size(); ++i) EXPECT_LT(e.estimates[i], e.estimates[i - 1]);
    EXPECT_LT(e.estimates.back(), 0.2 * e.estimates.front());
}

TEST(Hausdorff, ScalesLikeLambdaToTheN) {
    const auto plane = make_space("euclidean:2");
    const auto doubled = make_space("scaled:2:euclidean:2");
    const MeasureEstimate base = hausdorff_estimate(*plane, ball_region(*plane, {0, 0}, 1.0), 2);
    const MeasureEstimate big = hausdorff_estimate(*doubled, ball_region(*doubled, {0, 0}, 2.0), 2);
    EXPECT_NEAR(big.value / base.value, 4.0, 1e-9);
}

TEST(Hausdorff, CalibrationCached) {
    EXPECT_EQ(cube_calibration(2), cube_calibration(2));
    EXPECT_THROW(cube_calibration(0), DomainError);
}

TEST(DimensionScan, SquareIsTwoDimensional) {
    const auto space = make_space("euclidean:2");
    const auto rows = dimension_scan(*space, cube_region(2));
    ASSERT_EQ(rows.size(), 4u);
    EXPECT_EQ(rows[0].trend, "infinite");
    EXPECT_EQ(rows[1].trend, "finite");
    EXPECT_EQ(rows[2].trend, "zero");
}

TEST(Mcp, EuclideanHomothety) {
    const auto space = make_space("euclidean:2");
    const CheckReport r = mcp_check(*space, {0, 0}, ball_region(*space, {3, 0}, 1.0), {0.5}, 2, 0.05);
    EXPECT_NEAR(r.worst_margin, 0.0, 0.05);
    EXPECT_EQ(r.verdict, Verdict::pass);
}

TEST(Mcp, SphereCap) {
    const auto space = make_space("sphere:1");
    const Point north = space->origin();
    const Point away{std::sin(1.5), 0, std::cos(1.5)};
    const CheckReport r = mcp_check(*space, north, ball_region(*space, away, 0.5), {0.5}, 2, 0.05);
    EXPECT_EQ(r.verdict, Verdict::pass);
}

TEST(Mcp, HyperbolicFailsForSmallT) {
    const auto space = make_space("hilbert:ellipse:1:1");
    const CheckReport r =
        mcp_check(*space, {0, 0}, ball_region(*space, {0.9, 0}, 0.5), {0.25}, 2, 0.05);
    EXPECT_EQ(r.verdict, Verdict::fail);
    EXPECT_FALSE(r.witness.is_null());
}

TEST(BishopGromov, ConstantOnPlaneDecreasingOnSphere) {
    const auto plane = make_space("euclidean:2");
    const BishopGromovResult flat = bishop_gromov_table(*plane, {0, 0}, {0.5, 1.0, 2.0}, 2);
    for (const auto& row : flat.rows) EXPECT_NEAR(row.ratio, flat.rows.front().ratio, 1e-9);
    const auto sphere = make_space("sphere:1");
    const BishopGromovResult round = bishop_gromov_table(*sphere, sphere->origin(), {1.0, 2.0, 3.0}, 2);
    for (std::size_t i = 1; i < round.rows.size(); ++i) EXPECT_LT(round.rows[i].ratio, round.rows[i - 1].ratio);
    EXPECT_EQ(round.report.verdict, Verdict::pass);
}

TEST(Doubling, SphereBound) {
    const auto sphere = make_space("sphere:1");
    EXPECT_EQ(check_doubling(*sphere, sphere->origin(), {0.5, 1.0}, 2).verdict, Verdict::pass);
}

TEST(Poincare, EuclideanRatioMatchesClosedForm) {
    const auto space = make_space("euclidean:2");
    const CheckReport r = poincare_check(*space, {0, 0}, 1.0, 2, make_field("coordinate:0", *space), 40000, 1, 0.0);
    EXPECT_EQ(r.verdict, Verdict::pass);
    EXPECT_NEAR(r.details.at("ratio").get<double>(), oracles::euclidean_poincare_ratio(), 0.05 * 0.0472);
}

TEST(Poincare, ConstantFieldHasZeroLeftSide) {
    const auto space = make_space("euclidean:2");
    const ScalarField constant{"one", [](const Point&) { return 1.0; }, [](const Point&) { return 0.0; }};
    const CheckReport r = poincare_check(*space, {0, 0}, 1.0, 2, constant, 1000, 1, 0.0);
    EXPECT_EQ(r.witness.at("lhs").get<double>(), 0.0);
}

TEST(Poincare, SphereDistanceField) {
    const auto space = make_space("sphere:1");
    const CheckReport r =
        poincare_check(*space, space->origin(), 0.5, 2, make_field("distance:0,0,1", *space), 20000, 1, 0.0);
    EXPECT_EQ(r.verdict, Verdict::pass);
}

TEST(Poincare, NeedsSlope) {
    const auto space = make_space("euclidean:2");
    const ScalarField f{"noslope", [](const Point& p) { return p[0]; }, {}};
    EXPECT_THROW(poincare_check(*space, {0, 0}, 1.0, 2, f, 10, 1, 0.0), InputError);
}

}  // namespace
}  // namespace curvelab
