#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "curvelab/comparison.hpp"
#include "curvelab/errors.hpp"
#include "curvelab/model_spaces.hpp"
#include "curvelab/oracles.hpp"
#include "curvelab/scenario.hpp"
#include "test_support.hpp"

namespace curvelab {
namespace {

using testing::sampler;
constexpr double kPi = std::numbers::pi;

TEST(ComparisonTriangle, EquilateralFlat) {
    EXPECT_NEAR(comparison_triangle(1, 1, 1, 0).apex_angle, kPi / 3, 1e-15);
}

TEST(ComparisonTriangle, SphericalOctant) {
    const auto tri = comparison_triangle(kPi / 2, kPi / 2, kPi / 2, 1);
    EXPECT_NEAR(tri.apex_angle, kPi / 2, 1e-14);
    EXPECT_EQ(tri.model, ModelSurface::sphere);
}

TEST(ComparisonTriangle, ExistenceGuards) {
    for (double k : {-1.0, 0.0, 1.0}) EXPECT_THROW(comparison_triangle(3, 1, 5, k), ExistenceError);
    // Perimeter beyond 2*pi/sqrt(k).
    EXPECT_THROW(comparison_triangle(3, 3, 3, 1), ExistenceError);
}

TEST(ComparisonTDistance, Examples) {
    const auto iso = comparison_triangle(2, 2, 1.5, 0);
    EXPECT_NEAR(comparison_t_distance(iso, 0.5), 0.75, 1e-15);
    EXPECT_EQ(comparison_t_distance(iso, 0.0), 0.0);
    EXPECT_NEAR(comparison_t_distance(iso, 1.0), 1.5, 1e-15);
    const auto octant = comparison_triangle(kPi / 2, kPi / 2, kPi / 2, 1);
    EXPECT_NEAR(comparison_t_distance(octant, 1.0), kPi / 2, 1e-14);
}

TEST(ComparisonTDistance, MatchesExplicitConstructionOracle) {
    const struct {
        double a, b, c, k;
    } cases[] = {{1.0, 1.5, 0.7, 1.0}, {2.0, 0.5, 1.8, 1.0}, {1.0, 1.5, 0.7, -1.0}, {3.0, 2.0, 4.0, -0.5},
                 {1.0, 1.5, 0.7, 0.0}, {0.3, 0.2, 0.45, 4.0}};
    for (const auto& c : cases) {
        const auto tri = comparison_triangle(c.a, c.b, c.c, c.k);
        for (double t : {0.1, 0.3, 0.5, 0.8}) {
            EXPECT_NEAR(comparison_t_distance(tri, t), oracles::spherical_t_distance(c.a, c.b, c.c, c.k, t), 1e-12)
                << c.a << ' ' << c.b << ' ' << c.c << ' ' << c.k << " t=" << t;
        }
    }
}

TEST(ComparisonTDistance, MonotoneInT) {
    for (double k : {-1.0, 0.0, 1.0}) {
        const auto tri = comparison_triangle(1.2, 0.9, 1.4, k);
        double previous = 0.0;
        for (int i = 1; i <= 64; ++i) {
            const double d = comparison_t_distance(tri, i / 64.0);
            EXPECT_GE(d, previous);
            previous = d;
        }
    }
}

TEST(BusemannConcavity, LpPlanePassesWithEquality) {
    const auto space = make_space("lp:2:1.5");
    const CheckReport r = check_busemann_concavity(*space, sampler(500, 1.0));
    EXPECT_EQ(r.verdict, Verdict::pass);
    EXPECT_NEAR(r.worst_margin, 0.0, 1e-9);
}

TEST(BusemannConcavity, HyperbolicFailsWithReplayableWitness) {
    const auto space = make_space("hilbert:ellipse:1:1");
    const CheckReport r = check_busemann_concavity(*space, sampler(2000, 1.5));
    EXPECT_EQ(r.verdict, Verdict::fail);
    EXPECT_NEAR(replay_busemann_concavity(*space, r.witness), r.worst_margin, 1e-9);
}

TEST(BusemannConcavity, HeisenbergFails) {
    const auto space = make_space("heisenberg");
    const CheckReport r = check_busemann_concavity(*space, sampler(5000, 1.0), 33, 1e-2);
    EXPECT_EQ(r.verdict, Verdict::fail);
    EXPECT_LT(r.worst_margin, -1e-3);
}

TEST(CurvatureBound, EuclideanEquality) {
    const auto space = make_space("euclidean:3");
    const CheckReport r = check_curvature_bound(*space, 0.0, sampler(2000, 2.0));
    EXPECT_NEAR(r.worst_margin, 0.0, 1e-9);
}

TEST(CurvatureBound, UnitSphereAtOne) {
    const auto space = make_space("sphere:1");
    const CheckReport r = check_curvature_bound(*space, 1.0, sampler(2000, 1.0));
    EXPECT_EQ(r.verdict, Verdict::pass);
    EXPECT_EQ(*r.k, 1.0);
}

TEST(CurvatureBound, LargeSphereFailsAtOne) {
    const auto space = make_space("sphere:2");
    const CheckReport r = check_curvature_bound(*space, 1.0, sampler(2000, 2.0));
    EXPECT_EQ(r.verdict, Verdict::fail);
    EXPECT_NEAR(replay_curvature_bound(*space, r.witness), r.worst_margin, 1e-9);
}

TEST(CurvatureBound, SphereSatisfiesWeakerBounds) {
    const auto space = make_space("sphere:1");
    for (double k : {-1.0, 0.0, 0.5}) {
        EXPECT_EQ(check_curvature_bound(*space, k, sampler(500, 1.0)).verdict, Verdict::pass) << k;
    }
}

TEST(CurvatureBound, NonBranchingOfConcaveSpaces) {
    // Two geodesics from x that meet at an interior time coincide on the grid.
    const auto space = make_space("lp:2:1.5");
    const Point x{0, 0};
    const Point y{1.0, 0.5};
    const GeodesicPath g = space->geodesic(x, y);
    const Point through = g.at(0.5);
    const GeodesicPath h = space->geodesic(x, through);
    for (int i = 0; i <= 8; ++i) {
        const double t = i / 8.0;
        EXPECT_NEAR(space->distance(h.at(t), g.at(0.5 * t)), 0.0, 1e-12);
    }
}

TEST(Diameter, UnitSphere) {
    const auto space = make_space("sphere:1");
    const DiameterEstimate d = diameter_estimate(*space, 200, 1, 200);
    EXPECT_NEAR(d.value, kPi, 1e-3);
    EXPECT_LE(d.value, kPi);
}

TEST(Diameter, ConeBallThroughApex) {
    const auto space = make_space("cone:circle:5");
    const DiameterEstimate d = diameter_estimate(*space, 400, 1, 400, Region{space->origin(), 1.0});
    // Base separation is at most 2.5 < pi, so antipodal rim points sit at 2 sin(1.25).
    EXPECT_NEAR(d.value, 2.0 * std::sin(1.25), 1e-3);
}

TEST(Diameter, UnboundedNeedsRegion) {
    const auto space = make_space("euclidean:2");
    EXPECT_THROW(diameter_estimate(*space, 10, 1, 10), UnboundedError);
}

TEST(BonnetMyers, SphereBounds) {
    const auto unit = make_space("sphere:1");
    EXPECT_EQ(check_bonnet_myers(*unit, 1.0).verdict, Verdict::pass);
    const CheckReport fail = check_bonnet_myers(*unit, 4.0);
    EXPECT_EQ(fail.verdict, Verdict::fail);
    EXPECT_NEAR(replay_bonnet_myers(*unit, fail.witness), fail.worst_margin, 1e-9);
    const auto small = make_space("sphere:" + std::to_string(1.0 / std::sqrt(2.0)));
    const CheckReport r = check_bonnet_myers(*small, 2.0);
    EXPECT_EQ(r.verdict, Verdict::pass);
    EXPECT_NEAR(r.worst_margin, 0.0, 1e-3);
}

TEST(BoundarySphere, CapsAndEquator) {
    const auto space = make_space("sphere:1");
    for (double s : {kPi / 4, kPi / 2}) {
        const CheckReport r = check_boundary_sphere_diameter(*space, {0, 0, 1}, s, 2000, 1);
        EXPECT_EQ(r.verdict, Verdict::pass);
        EXPECT_NEAR(r.details.at("shell_diameter").get<double>(), 2 * s, 1e-3);
        EXPECT_NEAR(replay_boundary_sphere_diameter(*space, r.witness), r.worst_margin, 1e-9);
    }
}

TEST(BoundarySphere, VacuousOnSmallDisc) {
    const auto space = make_space("euclidean:2");
    const CheckReport r = check_boundary_sphere_diameter(*space, {0, 0}, kPi / 4, 500, 1, {}, Region{{0, 0}, 1.0});
    EXPECT_EQ(r.verdict, Verdict::pass);
    EXPECT_TRUE(r.witness.is_null());
}

TEST(Replay, WitnessRoundTripThroughJson) {
    const auto space = make_space("sphere:2");
    const CheckReport r = check_curvature_bound(*space, 1.0, sampler(500, 2.0));
    const CheckReport back = CheckReport::from_json(Json::parse(r.to_json().dump()));
    EXPECT_NEAR(replay_report(back), r.worst_margin, 1e-9);
}

}  // namespace
}  // namespace curvelab
