#include <gtest/gtest.h>

#include <iomanip>
#include <sstream>

#include <cmath>
#include <numbers>

#include "curvelab/errors.hpp"
#include "curvelab/model_spaces.hpp"
#include "curvelab/oracles.hpp"
#include "curvelab/sampling.hpp"
#include "test_support.hpp"

namespace curvelab {
namespace {

constexpr double kPi = std::numbers::pi;

TEST(MakeSpace, ParsesRegisteredKinds) {
    EXPECT_EQ(make_space("lp:2:1.5")->spec(), "lp:2:1.5");
    const auto cone = make_space("cone:circle:5.0");
    EXPECT_EQ(cone->kind(), "cone");
    const auto product = make_space("product:l2:euclidean:1,sphere:1");
    EXPECT_EQ(product->coordinate_count(), 4u);
    EXPECT_EQ(product->intrinsic_dimension(), 3);
    EXPECT_EQ(make_space("heisenberg")->intrinsic_dimension(), 4);
}

TEST(MakeSpace, RejectsBadSpecs) {
    EXPECT_THROW(make_space("lp:2:1"), DomainError);
    EXPECT_THROW(make_space("lp:2:inf"), ParseError);
    EXPECT_THROW(make_space("product:l1:euclidean:1,euclidean:1"), DomainError);
    EXPECT_THROW(make_space("torus:3"), ParseError);
    EXPECT_THROW(make_space("cone:euclidean:2"), DomainError);
    EXPECT_THROW(make_space("sphere:-1"), DomainError);
    EXPECT_THROW(make_space("euclidean:0"), ParseError);
}

TEST(MakeSpace, NonConvexPolygonRejected) {
    EXPECT_THROW(PolygonBody({{0, 0}, {2, 0}, {1, 0.2}, {2, 2}, {0, 2}}), DomainError);
}

TEST(ConeDistance, Examples) {
    EXPECT_NEAR(cone_distance(kPi, 1, 1), 2.0, 1e-15);
    EXPECT_NEAR(cone_distance(0, 1, 3), 2.0, 1e-15);
    EXPECT_NEAR(cone_distance(kPi / 2, 1, 1), std::sqrt(2.0), 1e-15);
    // Base distances beyond pi are clamped.
    EXPECT_NEAR(cone_distance(3.5, 1, 2), 3.0, 1e-15);
    EXPECT_THROW(cone_distance(1.0, -1.0, 1.0), DomainError);
}

TEST(ConeSpace, ApexCanonicalised) {
    const auto cone = make_space("cone:circle:5");
    EXPECT_EQ(cone->canonical({1.3, 0.0}), cone->canonical({4.0, 0.0}));
    EXPECT_EQ(cone->distance({1.3, 0.0}, {4.0, 0.0}), 0.0);
}

TEST(ConeSpace, MatchesUnrollOracle) {
    const auto cone = make_space("cone:circle:5");
    const auto pts = sample_region(*cone, cone->origin(), 2.0, 200, 8);
    for (std::size_t i = 0; i + 1 < pts.size(); i += 2) {
        EXPECT_NEAR(cone->distance(pts[i], pts[i + 1]), oracles::cone_unrolled_distance(5.0, pts[i], pts[i + 1]),
                    1e-12);
        const Point m = cone->midpoint(pts[i], pts[i + 1]);
        const Point expected = oracles::cone_unrolled_midpoint(5.0, pts[i], pts[i + 1]);
        EXPECT_NEAR(cone->distance(m, expected), 0.0, 1e-9);
    }
}

TEST(ConeSpace, FullAngleConeIsThePlane) {
    std::ostringstream spec;
    spec << std::setprecision(17) << "cone:circle:" << 2 * kPi;
    const auto cone = make_space(spec.str());
    const auto pts = sample_region(*cone, cone->origin(), 3.0, 200, 9);
    for (std::size_t i = 0; i + 1 < pts.size(); i += 2) {
        const auto planar = [](const Point& p) {
            return std::array<double, 2>{p[1] * std::cos(p[0]), p[1] * std::sin(p[0])};
        };
        const auto a = planar(pts[i]);
        const auto b = planar(pts[i + 1]);
        EXPECT_NEAR(cone->distance(pts[i], pts[i + 1]), std::hypot(a[0] - b[0], a[1] - b[1]), 1e-9);
    }
}

TEST(HilbertDistance, IntervalCrossRatio) {
    const IntervalBody body(-1, 1);
    EXPECT_NEAR(hilbert_distance(body, {0.0}, {0.5}), 0.5 * std::log(3.0), 1e-12);
    EXPECT_EQ(hilbert_distance(body, {0.3}, {0.3}), 0.0);
}

TEST(HilbertDistance, SquareReflectionSymmetry) {
    const auto body = PolygonBody::load(testing::source_path("scenarios/square.poly"));
    for (double a : {0.1, 0.5, 0.9}) {
        EXPECT_NEAR(hilbert_distance(body, {-a, 0}, {0, 0}), hilbert_distance(body, {a, 0}, {0, 0}), 1e-14);
    }
}

TEST(HilbertDistance, EllipseIsKleinModel) {
    const auto space = make_space("hilbert:ellipse:2:1");
    const auto pts = sample_region(*space, space->origin(), 2.0, 200, 4);
    for (std::size_t i = 0; i + 1 < pts.size(); i += 2) {
        EXPECT_NEAR(space->distance(pts[i], pts[i + 1]), oracles::klein_distance(2, 1, pts[i], pts[i + 1]), 1e-6);
    }
}

TEST(HilbertDistance, PolygonApproximatesEllipse) {
    const auto polygon = make_space("hilbert:" + testing::source_path("scenarios/ellipse.poly"));
    const double d = polygon->distance({0, 0}, {0.5, 0.2});
    EXPECT_NEAR(d, oracles::klein_distance(2, 1, {0, 0}, {0.5, 0.2}), 0.02);
}

TEST(Heisenberg, HorizontalAndDilation) {
    EXPECT_NEAR(heisenberg_distance({0, 0, 0}, {1, 0, 0}), 1.0, 1e-9);
    const Point q{0.3, -0.4, 0.25};
    const double base = heisenberg_distance({0, 0, 0}, q);
    EXPECT_NEAR(heisenberg_distance({0, 0, 0}, heisenberg_dilate(2.0, q)), 2.0 * base, 2e-9);
}

TEST(Heisenberg, LeftInvariant) {
    const Point g{0.2, 0.7, -0.1};
    const Point p{0.1, 0.0, 0.3};
    const Point q{-0.4, 0.5, 0.0};
    EXPECT_NEAR(heisenberg_distance(heisenberg_multiply(g, p), heisenberg_multiply(g, q)), heisenberg_distance(p, q),
                1e-9);
    const Point e = heisenberg_multiply(g, heisenberg_inverse(g));
    for (double c : e) EXPECT_NEAR(c, 0.0, 1e-15);
}

TEST(Heisenberg, VerticalGoldenValue) {
    // 2*sqrt(pi), reproduced by the discrete path oracle at 10^4 segments.
    const double oracle = oracles::heisenberg_discrete_length({0, 0, 1}, 10000);
    EXPECT_NEAR(oracle, 3.5449077601224284, 1e-12);
    EXPECT_NEAR(heisenberg_distance({0, 0, 0}, {0, 0, 1}), oracle, 1e-6);
}

TEST(Heisenberg, GenericTargetsMatchDiscreteOracle) {
    for (const Point& target : {Point{1.0, 0.0, 0.3}, Point{0.2, -0.5, -0.4}}) {
        const double oracle = oracles::heisenberg_discrete_length(target, 4000);
        EXPECT_NEAR(heisenberg_distance({0, 0, 0}, target), oracle, 1e-3 * oracle);
    }
}

TEST(Product, DistanceIsNormOfFactorDistances) {
    const auto product = make_space("product:l3:euclidean:2,sphere:1");
    const auto plane = make_space("euclidean:2");
    const auto sphere = make_space("sphere:1");
    const auto pts = sample_region(*product, product->origin(), 2.0, 100, 6);
    for (std::size_t i = 0; i + 1 < pts.size(); i += 2) {
        const Point& p = pts[i];
        const Point& q = pts[i + 1];
        const double a = plane->distance({p[0], p[1]}, {q[0], q[1]});
        const double b = sphere->distance({p[2], p[3], p[4]}, {q[2], q[3], q[4]});
        EXPECT_NEAR(product->distance(p, q), std::cbrt(a * a * a + b * b * b), 1e-12);
    }
}

TEST(Product, GeodesicsSynchronised) {
    const auto product = make_space("product:l2:euclidean:1,sphere:1");
    const Point p{0.0, 0.0, 0.0, 1.0};
    const Point q{2.0, 1.0, 0.0, 0.0};
    const Point m = product->midpoint(p, q);
    EXPECT_NEAR(m[0], 1.0, 1e-12);
    EXPECT_NEAR(std::atan2(m[1], m[3]), kPi / 4, 1e-12);
}

TEST(Scaled, MultipliesDistances) {
    const auto scaled = make_space("scaled:2:sphere:1");
    EXPECT_NEAR(scaled->distance({0, 0, 1}, {1, 0, 0}), kPi, 1e-14);
    EXPECT_NEAR(scaled->diameter(), 2 * kPi, 1e-14);
}

TEST(Sphere, DiameterAndCoordinates) {
    const auto sphere = make_space("sphere:2");
    EXPECT_NEAR(sphere->diameter(), 2 * kPi, 1e-15);
    EXPECT_THROW(sphere->validate({0, 0, 2}), DomainError);
    EXPECT_NO_THROW(sphere->validate({0, 0, 1}));
}

TEST(Registry, ListsEveryKind) {
    const auto kinds = space_registry();
    EXPECT_GE(kinds.size(), 7u);
}

}  // namespace
}  // namespace curvelab
