#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "curvelab/errors.hpp"
#include "curvelab/geodesic.hpp"
#include "curvelab/model_spaces.hpp"
#include "curvelab/parallel.hpp"
#include "curvelab/random.hpp"
#include "curvelab/ray.hpp"
#include "curvelab/report.hpp"
#include "curvelab/sampling.hpp"
#include "test_support.hpp"

namespace curvelab {
namespace {

using testing::property_spaces;
constexpr double kPi = std::numbers::pi;

TEST(Distance, EuclideanPythagoras) {
    const auto space = make_space("euclidean:2");
    EXPECT_DOUBLE_EQ(space->distance({0, 0}, {3, 4}), 5.0);
}

TEST(Distance, SpherePoleToEquator) {
    const auto space = make_space("sphere:1");
    EXPECT_NEAR(space->distance({0, 0, 1}, {1, 0, 0}), kPi / 2, 1e-15);
}

TEST(Distance, HeisenbergHorizontalSegment) {
    const auto space = make_space("heisenberg");
    EXPECT_NEAR(space->distance({0, 0, 0}, {1, 0, 0}), 1.0, 1e-9);
}

TEST(Distance, InvalidCoordinatesThrow) {
    EXPECT_THROW(make_space("sphere:1")->distance({1, 1, 1}, {0, 0, 1}), DomainError);
    EXPECT_THROW(make_space("euclidean:2")->distance({0, 0, 0}, {1, 1}), DomainError);
    EXPECT_THROW(make_space("cone:circle:5")->distance({0.5, -1}, {1, 1}), DomainError);
}

TEST(Geodesic, LpPlaneIsAffine) {
    const auto space = make_space("lp:2:1.5");
    const GeodesicPath path = space->geodesic({0, 0}, {1, 2});
    for (double t : {0.0, 0.25, 0.5, 0.9, 1.0}) {
        const Point p = path.at(t);
        EXPECT_NEAR(p[0], t, 1e-12);
        EXPECT_NEAR(p[1], 2 * t, 1e-12);
    }
}

TEST(Geodesic, SphereGreatCircle) {
    const auto space = make_space("sphere:1");
    const Point a{1, 0, 0};
    const Point b{0, 1, 0};
    const GeodesicPath path = space->geodesic(a, b);
    const Point m = path.at(1.0 / 3.0);
    EXPECT_NEAR(m[0], std::cos(kPi / 6), 1e-12);
    EXPECT_NEAR(m[1], std::sin(kPi / 6), 1e-12);
    EXPECT_NEAR(m[2], 0.0, 1e-12);
}

TEST(Geodesic, EndpointsReproducedExactly) {
    for (const auto& c : property_spaces()) {
        const auto space = make_space(c.spec);
        const auto pts = sample_region(*space, space->origin(), c.radius, 10, 3);
        for (std::size_t i = 0; i + 1 < pts.size(); i += 2) {
            const GeodesicPath path = space->geodesic(pts[i], pts[i + 1]);
            EXPECT_EQ(path.at(0.0), path.start()) << c.spec;
            EXPECT_EQ(path.at(1.0), path.end()) << c.spec;
        }
    }
}

TEST(Geodesic, HeisenbergVerticalTargetMatchesDiscreteOptimum) {
    // Frozen output of the discrete horizontal-path optimizer at 10^4 segments.
    const double golden = 3.5449077601224284;
    const auto space = make_space("heisenberg");
    const Point target{0, 0, 1};
    EXPECT_NEAR(space->distance(space->origin(), target), golden, 1e-6);
    const GeodesicPath path = space->geodesic(space->origin(), target);
    const double length = path.length();
    for (double t : {0.25, 0.5, 0.75}) {
        EXPECT_NEAR(space->distance(space->origin(), path.at(t)), t * length, 1e-3 * length);
    }
}

TEST(NumericGeodesic, EuclideanStraightLine) {
    const auto space = make_space("euclidean:2");
    const GeodesicPath path = numeric_geodesic(*space, {0, 0}, {2, 1});
    EXPECT_LE(path.residual(), 1e-12);
    for (double t : {0.1, 0.5, 0.8}) {
        EXPECT_NEAR(path.at(t)[0], 2 * t, 1e-12);
        EXPECT_NEAR(path.at(t)[1], t, 1e-12);
    }
}

TEST(NumericGeodesic, FlatConeMatchesUnrolledChord) {
    const auto space = make_space("cone:circle:5");
    const Point p{0.2, 1.0};
    const Point q{1.4, 2.0};
    const GeodesicPath path = numeric_geodesic(*space, p, q, {32, 2000, 1e-12});
    const double chord = std::sqrt(1.0 + 4.0 - 4.0 * std::cos(1.2));
    EXPECT_NEAR(space->distance(p, q), chord, 1e-12);
    EXPECT_NEAR(space->distance(path.at(0.5), space->midpoint(p, q)), 0.0, 1e-5);
}

TEST(NumericGeodesic, HilbertSquareChord) {
    const auto space = make_space("hilbert:" + testing::source_path("scenarios/square.poly"));
    const Point p{0, 0};
    const Point q{0.5, 0.2};
    const GeodesicPath path = numeric_geodesic(*space, p, q, {16, 2000, 1e-12});
    const double d = space->distance(p, q);
    for (double t : {0.25, 0.5, 0.75}) {
        const Point on_chord{0.5 * t, 0.2 * t};
        // Chords are geodesics: distances along them add up.
        EXPECT_NEAR(space->distance(p, on_chord) + space->distance(on_chord, q), d, 1e-12);
        EXPECT_NEAR(space->distance(p, path.at(t)), t * d, 1e-6);
    }
}

TEST(NumericGeodesic, ZeroSegmentsRejected) {
    const auto space = make_space("euclidean:2");
    EXPECT_THROW(numeric_geodesic(*space, {0, 0}, {1, 1}, {1, 10, 1e-9}), DomainError);
}

TEST(Midpoint, Examples) {
    const auto plane = make_space("euclidean:2");
    const Point m = plane->midpoint({0, 0}, {2, 2});
    EXPECT_NEAR(m[0], 1.0, 1e-15);
    EXPECT_NEAR(m[1], 1.0, 1e-15);

    const auto sphere = make_space("sphere:1");
    const Point s = sphere->midpoint({0, 0, 1}, {1, 0, 0});
    EXPECT_NEAR(s[0], std::sin(kPi / 4), 1e-12);
    EXPECT_NEAR(s[1], 0.0, 1e-12);
    EXPECT_NEAR(s[2], std::cos(kPi / 4), 1e-12);

    const auto cone = make_space("cone:circle:5");
    const Point a{1.0, 1.0};
    const Point b{2.0, 1.0};
    const Point c = cone->midpoint(a, b);
    EXPECT_NEAR(cone->distance(a, c), cone->distance(c, b), 1e-12);
    EXPECT_NEAR(cone->distance(a, c), 0.5 * cone->distance(a, b), 1e-12);
}

TEST(SampleRegion, SeedDeterminesList) {
    const auto space = make_space("euclidean:3");
    EXPECT_EQ(sample_region(*space, space->origin(), 1.0, 50, 7), sample_region(*space, space->origin(), 1.0, 50, 7));
    EXPECT_NE(sample_region(*space, space->origin(), 1.0, 50, 7), sample_region(*space, space->origin(), 1.0, 50, 8));
}

TEST(SampleRegion, PrefixStable) {
    const auto space = make_space("sphere:1");
    const auto longer = sample_region(*space, space->origin(), 1.0, 40, 3);
    const auto shorter = sample_region(*space, space->origin(), 1.0, 10, 3);
    EXPECT_TRUE(std::equal(shorter.begin(), shorter.end(), longer.begin()));
}

TEST(SampleRegion, FullSphereCoverage) {
    const auto space = make_space("sphere:1");
    const auto pts = sample_region(*space, space->origin(), kPi, 1000, 1);
    // Every probe direction has a sample within 0.5.
    const auto probes = sample_region(*space, space->origin(), kPi, 2000, 99);
    double worst = 0.0;
    for (const auto& q : probes) {
        double best = kInfinity;
        for (const auto& p : pts) best = std::min(best, space->distance(p, q));
        worst = std::max(worst, best);
    }
    EXPECT_LT(worst, 0.5);
}

TEST(SampleRegion, ConeBallAroundApex) {
    const auto space = make_space("cone:circle:5");
    for (const auto& p : sample_region(*space, space->origin(), 0.7, 500, 2)) {
        EXPECT_LE(p.back(), 0.7);
        EXPECT_LE(space->distance(space->origin(), p), 0.7);
    }
}

TEST(SampleRegion, BadRadiusRejected) {
    const auto space = make_space("euclidean:2");
    EXPECT_THROW(sample_region(*space, space->origin(), 0.0, 5, 1), DomainError);
}

TEST(Properties, MetricAxiomsOnSampledTriples) {
    for (const auto& c : property_spaces()) {
        const auto space = make_space(c.spec);
        const auto pts = sample_region(*space, space->origin(), c.radius, 90, 11);
        for (std::size_t i = 0; i + 2 < pts.size(); i += 3) {
            const Point& x = pts[i];
            const Point& y = pts[i + 1];
            const Point& z = pts[i + 2];
            const double xy = space->distance(x, y);
            const double yz = space->distance(y, z);
            const double xz = space->distance(x, z);
            const double scale = std::max({1.0, xy, yz, xz});
            EXPECT_GE(xy, 0.0);
            EXPECT_EQ(space->distance(x, x), 0.0) << c.spec;
            EXPECT_NEAR(xy, space->distance(y, x), 1e-12 * scale) << c.spec;
            EXPECT_LE(xz, xy + yz + 1e-9 * scale) << c.spec;
        }
    }
}

TEST(Properties, GeodesicsHaveConstantSpeed) {
    for (const auto& c : property_spaces()) {
        const auto space = make_space(c.spec);
        const auto pts = sample_region(*space, space->origin(), c.radius, 20, 5);
        for (std::size_t i = 0; i + 1 < pts.size(); i += 2) {
            const GeodesicPath path = space->geodesic(pts[i], pts[i + 1]);
            const double length = space->distance(pts[i], pts[i + 1]);
            for (int a = 0; a <= 8; ++a) {
                for (int b = a + 1; b <= 8; ++b) {
                    const double ta = a / 8.0;
                    const double tb = b / 8.0;
                    EXPECT_NEAR(space->distance(path.at(ta), path.at(tb)), (tb - ta) * length,
                                1e-6 * std::max(1.0, length))
                        << c.spec;
                }
            }
        }
    }
}

TEST(Ray, UnitSpeedOnAnalyticSpaces) {
    const auto plane = make_space("lp:2:1.5");
    const Ray ray(*plane, {0.5, 0.5}, plane->normalize_direction({0.5, 0.5}, {1.0, 2.0}), kInfinity);
    for (double t : {0.5, 3.0, 100.0}) EXPECT_NEAR(plane->distance(ray.base(), ray.at(t)), t, 1e-6 * t);

    const auto sphere = make_space("sphere:1");
    const Direction dir = sphere->initial_direction({0, 0, 1}, {1, 0, 0});
    const Ray arc(*sphere, {0, 0, 1}, dir, sphere->ray_horizon({0, 0, 1}, dir));
    EXPECT_NEAR(arc.horizon(), kPi, 1e-12);
    EXPECT_NEAR(sphere->distance(arc.base(), arc.at(2.0)), 2.0, 1e-12);
}

TEST(Ray, SpecRoundTrip) {
    const auto space = make_space("euclidean:2");
    const Ray ray(*space, {1.0, -2.0}, {0.6, 0.8}, 1e4);
    const Ray back = Ray::parse(*space, ray.to_spec());
    EXPECT_EQ(back.base(), ray.base());
    EXPECT_EQ(back.direction(), ray.direction());
    EXPECT_EQ(back.horizon(), ray.horizon());
    EXPECT_THROW(Ray::parse(*space, "1,2"), ParseError);
}

TEST(Line, GluedEuclideanLine) {
    const auto space = make_space("euclidean:2");
    const Line line = make_line(*space, {0, 0}, {1, 0}, 100.0, 1e-9);
    EXPECT_NEAR(line.at(-3.0)[0], -3.0, 1e-15);
    EXPECT_NEAR(space->distance(line.at(-5.0), line.at(7.0)), 12.0, 1e-12);
}

TEST(Line, SphereIsNotALine) {
    const auto space = make_space("sphere:1");
    EXPECT_THROW(make_line(*space, {0, 0, 1}, {1, 0, 0}, 10.0, 1e-6), Error);
}

TEST(Report, VerdictRule) {
    CheckReport r;
    r.n_samples = 100;
    r.tolerance = 1e-6;
    r.worst_margin = -2e-6;
    r.finalize();
    EXPECT_EQ(r.verdict, Verdict::fail);
    r.worst_margin = -1e-6;
    r.finalize();
    EXPECT_EQ(r.verdict, Verdict::pass);
    r.n_skipped = 11;
    r.finalize();
    EXPECT_EQ(r.verdict, Verdict::degraded);
}

TEST(Report, JsonRoundTrip) {
    CheckReport r;
    r.property = "curvature_bound";
    r.space_spec = "sphere:1";
    r.k = 1.0;
    r.n_samples = 5;
    r.worst_margin = 0.25;
    r.tolerance = 1e-6;
    r.witness = Json{{"x", point_to_json({1.0, 2.0})}};
    r.finalize();
    const CheckReport back = CheckReport::from_json(r.to_json());
    EXPECT_EQ(back.to_json().dump(), r.to_json().dump());
}

TEST(Parallel, ResultsIndependentOfWorkerCount) {
    const auto space = make_space("sphere:1");
    const auto pts = sample_region(*space, space->origin(), 2.0, 2000, 4);
    auto run = [&](const char* threads) {
        setenv("CURVELAB_THREADS", threads, 1);
        std::vector<double> out(pts.size() - 1);
        parallel_for(out.size(), [&](std::size_t i) { out[i] = space->distance(pts[i], pts[i + 1]); });
        return out;
    };
    const auto serial = run("1");
    const auto wide = run("8");
    unsetenv("CURVELAB_THREADS");
    EXPECT_EQ(serial, wide);
}

TEST(Parallel, LowestFailingIndexPropagates) {
    setenv("CURVELAB_THREADS", "4", 1);
    try {
        parallel_for(100, [](std::size_t i) {
            if (i % 10 == 7) throw DomainError("index " + std::to_string(i));
        });
        FAIL() << "expected an exception";
    } catch (const DomainError& e) {
        EXPECT_STREQ(e.what(), "index 7");
    }
    unsetenv("CURVELAB_THREADS");
}

TEST(Random, DerivedSeedsDiffer) {
    EXPECT_NE(derive_seed(1, 1), derive_seed(1, 2));
    EXPECT_EQ(derive_seed(5, 3), derive_seed(5, 3));
    Rng a(42);
    Rng b(42);
    for (int i = 0; i < 5; ++i) EXPECT_EQ(a.uniform(), b.uniform());
}

}  // namespace
}  // namespace curvelab
