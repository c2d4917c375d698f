#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "curvelab/convexity.hpp"
#include "curvelab/report.hpp"
#include "curvelab/space.hpp"

namespace curvelab {

// A bounded set given by a sampler of (roughly uniform) points. `size` is the
// length scale that covering scales are measured against.
struct MeasureRegion {
    std::string name;
    double size = 1.0;
    std::function<std::vector<Point>(std::size_t count, std::uint64_t seed)> sample;
};

MeasureRegion ball_region(const Space& space, const Point& center, double radius);
// [0, side]^n inside euclidean:n.
MeasureRegion cube_region(std::size_t n, double side = 1.0);

// Relative covering scales (multiples of the region size) used by default for
// dimension n: six geometric steps, finer in low dimension.
std::vector<double> default_delta_fractions(int n);

struct MeasureEstimate {
    int dimension = 0;
    double value = 0.0;                 // linear extrapolation of `estimates` to delta = 0
    double calibration = 1.0;
    std::vector<double> deltas;
    std::vector<std::size_t> counts;    // net size at each delta
    std::vector<double> estimates;      // calibration * count * (delta/2)^n
    std::size_t sample_count = 0;
    bool converged = true;              // successive estimates within 10%

    std::string to_csv() const;
    Json to_json() const;
};

// Farthest-point ordering of `points`: covering radii after each prefix.
// radii[k] is the covering radius of the first k+1 centres.
std::vector<double> farthest_point_radii(const Space& space, const std::vector<Point>& points,
                                         double stop_radius);

// Net sizes N(delta) for delta in `deltas` (covering radius delta/2).
std::vector<std::size_t> net_counts(const Space& space, const std::vector<Point>& points,
                                    const std::vector<double>& deltas);

// Calibration factor for dimension n: the reciprocal of the extrapolated raw
// estimate of the unit n-cube. Computed once per n and cached.
double cube_calibration(int n);

// Estimates of H^n(region). `delta_fractions` are multiples of region.size;
// empty means default_delta_fractions(n). Points are drawn until the sample
// is 32 times the finest net (capped at 2^18).
MeasureEstimate hausdorff_estimate(const Space& space, const MeasureRegion& region, int n,
                                   const std::vector<double>& delta_fractions = {}, std::uint64_t seed = 1);

// Same estimator on a fixed point set standing in for a region of the given size.
MeasureEstimate hausdorff_estimate_points(const Space& space, const std::vector<Point>& points, double size, int n,
                                          const std::vector<double>& delta_fractions = {});

struct DimensionScanRow {
    int n = 0;
    double slope = 0.0;           // d log(raw) / d log(delta), about n - dim
    std::string trend;            // "zero", "finite" or "infinite"
    MeasureEstimate estimate;
};

// Raw estimates for n = 1..4 (uncalibrated; only the trend in delta matters).
std::vector<DimensionScanRow> dimension_scan(const Space& space, const MeasureRegion& region, std::uint64_t seed = 1);

// margin = min over t of (H(Omega_t)/t^n - H(Omega)) / H(Omega), where Omega_t
// is the image of the sample net of Omega under y -> geodesic(x, y)(t).
CheckReport mcp_check(const Space& space, const Point& x, const MeasureRegion& omega,
                      const std::vector<double>& t_grid, int n, double tol, std::uint64_t seed = 1);

struct BishopGromovRow {
    double radius = 0.0;
    double measure = 0.0;
    double ratio = 0.0;  // measure / radius^n
};

struct BishopGromovResult {
    std::vector<BishopGromovRow> rows;
    CheckReport report;  // non-increasing ratio column, relative margin
    std::string to_csv() const;
};

BishopGromovResult bishop_gromov_table(const Space& space, const Point& x, const std::vector<double>& radii, int n,
                                       std::uint64_t seed = 1, double tol = 0.02);

// margin = min over r of (2^n (1+tol) H(B_r) - H(B_2r)) / H(B_2r).
CheckReport check_doubling(const Space& space, const Point& x, const std::vector<double>& radii, int n,
                           std::uint64_t seed = 1, double tol = 0.05);

// LHS = int_{B_r} |u - u_B|, RHS = int_{B_3r} g_u, both as Monte Carlo means
// times estimated measures. margin = (2^(n+1) r RHS (1+tol) - LHS) / (2^(n+1) r RHS).
// details.ratio = LHS / (r RHS).
CheckReport poincare_check(const Space& space, const Point& x, double r, int n, const ScalarField& u,
                           std::size_t mc_samples, std::uint64_t seed = 1, double tol = 0.05);

}  // namespace curvelab
