#include "curvelab/measure.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>
#include <sstream>

#include "curvelab/errors.hpp"
#include "curvelab/model_spaces.hpp"
#include "curvelab/parallel.hpp"
#include "curvelab/sampling.hpp"
#include "format.hpp"

namespace curvelab {

namespace {

constexpr std::size_t kPilotSamples = 2048;
constexpr std::size_t kMaxSamples = std::size_t{1} << 18;
constexpr std::size_t kOversample = 32;

std::vector<double> geometric(double hi, double lo, std::size_t points) {
    std::vector<double> out(points);
    for (std::size_t i = 0; i < points; ++i) {
        out[i] = hi * std::pow(lo / hi, static_cast<double>(i) / static_cast<double>(points - 1));
    }
    return out;
}

// Least-squares line through (x_i, y_i); returns {intercept, slope}.
std::pair<double, double> fit_line(const std::vector<double>& x, const std::vector<double>& y) {
    const double n = static_cast<double>(x.size());
    double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        sx += x[i];
        sy += y[i];
        sxx += x[i] * x[i];
        sxy += x[i] * y[i];
    }
    const double denom = n * sxx - sx * sx;
    if (denom == 0.0) return {sy / n, 0.0};
    const double slope = (n * sxy - sx * sy) / denom;
    return {(sy - slope * sx) / n, slope};
}

std::vector<double> scaled_deltas(const std::vector<double>& fractions, double size) {
    std::vector<double> deltas;
    for (double f : fractions) {
        if (!(f > 0.0)) throw DomainError("delta fractions must be positive");
        deltas.push_back(f * size);
    }
    std::sort(deltas.begin(), deltas.end(), std::greater<>());
    return deltas;
}

MeasureEstimate estimate_from_points(const Space& space, const std::vector<Point>& points, double size, int n,
                                     const std::vector<double>& fractions, double calibration) {
    if (n < 1) throw DomainError("measure dimension must be >= 1");
    MeasureEstimate est;
    est.dimension = n;
    est.calibration = calibration;
    est.deltas = scaled_deltas(fractions.empty() ? default_delta_fractions(n) : fractions, size);
    est.counts = net_counts(space, points, est.deltas);
    est.sample_count = points.size();
    for (std::size_t i = 0; i < est.deltas.size(); ++i) {
        est.estimates.push_back(calibration * static_cast<double>(est.counts[i]) * std::pow(0.5 * est.deltas[i], n));
        if (i > 0) {
            const double a = est.estimates[i - 1];
            const double b = est.estimates[i];
            if (std::abs(a - b) >= 0.1 * std::max(std::abs(a), std::abs(b))) est.converged = false;
        }
    }
    est.value = est.deltas.size() >= 2 ? std::max(0.0, fit_line(est.deltas, est.estimates).first) : est.estimates[0];
    return est;
}

struct DenseSample {
    std::vector<Point> points;
    MeasureEstimate estimate;
};

// Grows the sample until it is kOversample times the finest net.
DenseSample dense_sample(const Space& space, const MeasureRegion& region, int n, const std::vector<double>& fractions,
                         std::uint64_t seed, double calibration) {
    std::size_t count = kPilotSamples;
    while (true) {
        DenseSample out;
        out.points = region.sample(count, seed);
        out.estimate = estimate_from_points(space, out.points, region.size, n, fractions, calibration);
        const std::size_t finest = out.estimate.counts.back();
        if (kOversample * finest <= count || count >= kMaxSamples) return out;
        count = std::min(kMaxSamples, std::max(2 * count, kOversample * finest));
    }
}

}  // namespace

std::vector<double> default_delta_fractions(int n) {
    static const double finest[] = {0.01, 0.04, 0.15, 0.3};
    const double lo = finest[std::clamp(n, 1, 4) - 1];
    return geometric(5.0 * lo, lo, 6);
}

MeasureRegion ball_region(const Space& space, const Point& center, double radius) {
    space.validate(center);
    MeasureRegion region;
    std::ostringstream name;
    name << "ball(" << detail::format_number(radius) << ")";
    region.name = name.str();
    region.size = radius;
    region.sample = [&space, center, radius](std::size_t count, std::uint64_t seed) {
        return sample_region(space, center, radius, count, seed);
    };
    return region;
}

MeasureRegion cube_region(std::size_t n, double side) {
    if (n == 0 || !(side > 0.0)) throw DomainError("cube_region needs n >= 1 and side > 0");
    MeasureRegion region;
    region.name = "cube" + std::to_string(n);
    region.size = side;
    region.sample = [n, side](std::size_t count, std::uint64_t seed) {
        Rng rng(seed);
        std::vector<Point> out(count, Point(n));
        for (auto& p : out) {
            for (auto& c : p) c = side * rng.uniform();
        }
        return out;
    };
    return region;
}

std::vector<double> farthest_point_radii(const Space& space, const std::vector<Point>& points, double stop_radius) {
    std::vector<double> radii;
    if (points.empty()) return radii;
    // Gonzalez traversal with each point filed under its nearest centre. A new
    // centre c can only capture points of a cell whose centre a has
    // d(a, c) < 2 * (cell radius), so other cells are skipped.
    struct Cell {
        std::size_t centre;
        std::vector<std::size_t> members;
        double radius = 0.0;
        std::size_t farthest = 0;
    };
    std::vector<double> nearest(points.size(), kInfinity);
    std::vector<Cell> cells;
    auto refresh = [&nearest](Cell& cell) {
        cell.radius = 0.0;
        cell.farthest = cell.centre;
        for (std::size_t i : cell.members) {
            if (nearest[i] > cell.radius || (nearest[i] == cell.radius && i < cell.farthest)) {
                cell.radius = nearest[i];
                cell.farthest = i;
            }
        }
    };

    Cell first{0, {}, 0.0, 0};
    first.members.resize(points.size());
    for (std::size_t i = 0; i < points.size(); ++i) {
        first.members[i] = i;
        nearest[i] = space.distance(points[0], points[i]);
    }
    nearest[0] = 0.0;
    refresh(first);
    cells.push_back(std::move(first));

    while (true) {
        const Cell* worst = &cells.front();
        for (const Cell& cell : cells) {
            if (cell.radius > worst->radius || (cell.radius == worst->radius && cell.farthest < worst->farthest)) {
                worst = &cell;
            }
        }
        const double radius = worst->radius;
        radii.push_back(radius);
        if (radius <= stop_radius || radii.size() == points.size()) break;

        const std::size_t centre = worst->farthest;
        Cell fresh{centre, {}, 0.0, centre};
        for (Cell& cell : cells) {
            if (!(cell.radius > 0.0) || !(space.distance(points[cell.centre], points[centre]) < 2.0 * cell.radius)) {
                continue;
            }
            std::size_t kept = 0;
            for (std::size_t i : cell.members) {
                const double d = i == centre ? 0.0 : space.distance(points[centre], points[i]);
                if (d < nearest[i]) {
                    nearest[i] = d;
                    fresh.members.push_back(i);
                } else {
                    cell.members[kept++] = i;
                }
            }
            cell.members.resize(kept);
            refresh(cell);
        }
        std::sort(fresh.members.begin(), fresh.members.end());
        refresh(fresh);
        cells.push_back(std::move(fresh));
    }
    return radii;
}

std::vector<std::size_t> net_counts(const Space& space, const std::vector<Point>& points,
                                    const std::vector<double>& deltas) {
    if (deltas.empty()) throw DomainError("empty delta schedule");
    const double finest = *std::min_element(deltas.begin(), deltas.end());
    const auto radii = farthest_point_radii(space, points, 0.5 * finest);
    std::vector<std::size_t> counts;
    for (double delta : deltas) {
        const auto hit = std::find_if(radii.begin(), radii.end(), [delta](double r) { return r <= 0.5 * delta; });
        counts.push_back(static_cast<std::size_t>(hit - radii.begin()) + 1);
    }
    return counts;
}

double cube_calibration(int n) {
    if (n < 1) throw DomainError("measure dimension must be >= 1");
    static std::mutex mutex;
    static std::map<int, double> cache;
    const std::lock_guard lock(mutex);
    if (const auto it = cache.find(n); it != cache.end()) return it->second;
    const auto space = NormedSpace::euclidean(static_cast<std::size_t>(n));
    const MeasureRegion cube = cube_region(static_cast<std::size_t>(n));
    const double raw = dense_sample(*space, cube, n, {}, 1, 1.0).estimate.value;
    if (!(raw > 0.0)) throw ConsistencyError("cube calibration produced a non-positive estimate");
    cache[n] = 1.0 / raw;
    return cache[n];
}

MeasureEstimate hausdorff_estimate(const Space& space, const MeasureRegion& region, int n,
                                   const std::vector<double>& delta_fractions, std::uint64_t seed) {
    if (!region.sample) throw InputError("measure region has no sampler");
    return dense_sample(space, region, n, delta_fractions, seed, cube_calibration(n)).estimate;
}

MeasureEstimate hausdorff_estimate_points(const Space& space, const std::vector<Point>& points, double size, int n,
                                          const std::vector<double>& delta_fractions) {
    return estimate_from_points(space, points, size, n, delta_fractions, cube_calibration(n));
}

std::vector<DimensionScanRow> dimension_scan(const Space& space, const MeasureRegion& region, std::uint64_t seed) {
    const std::vector<double> fractions = geometric(0.4, 0.1, 5);
    const DenseSample sample = dense_sample(space, region, 2, fractions, seed, 1.0);
    std::vector<DimensionScanRow> rows;
    for (int n = 1; n <= 4; ++n) {
        DimensionScanRow row;
        row.n = n;
        row.estimate = estimate_from_points(space, sample.points, region.size, n, fractions, 1.0);
        std::vector<double> logs_delta;
        std::vector<double> logs_value;
        for (std::size_t i = 0; i < row.estimate.deltas.size(); ++i) {
            logs_delta.push_back(std::log(row.estimate.deltas[i]));
            logs_value.push_back(std::log(row.estimate.estimates[i]));
        }
        row.slope = fit_line(logs_delta, logs_value).second;
        row.trend = row.slope > 0.5 ? "zero" : (row.slope < -0.5 ? "infinite" : "finite");
        rows.push_back(std::move(row));
    }
    return rows;
}

CheckReport mcp_check(const Space& space, const Point& x, const MeasureRegion& omega,
                      const std::vector<double>& t_grid, int n, double tol, std::uint64_t seed) {
    const double calibration = cube_calibration(n);
    const DenseSample base = dense_sample(space, omega, n, {}, seed, calibration);
    const double whole = base.estimate.value;
    if (!(whole > 0.0)) throw ConsistencyError("mcp_check: region has zero estimated measure");

    CheckReport report;
    report.property = "mcp";
    report.space_spec = space.spec();
    report.n_samples = t_grid.size();
    report.tolerance = tol;
    Json rows = Json::array();
    for (double t : t_grid) {
        if (!(t > 0.0 && t < 1.0)) throw DomainError("mcp_check: t must lie in (0, 1)");
        std::vector<Point> pushed(base.points.size());
        parallel_for(pushed.size(), [&](std::size_t i) { pushed[i] = space.geodesic(x, base.points[i]).at(t); });
        const MeasureEstimate contracted =
            estimate_from_points(space, pushed, t * omega.size, n, default_delta_fractions(n), calibration);
        const double rescaled = contracted.value / std::pow(t, n);
        const double margin = (rescaled - whole) / whole;
        rows.push_back({{"t", t}, {"measure", contracted.value}, {"rescaled", rescaled}, {"margin", margin}});
        if (margin < report.worst_margin) {
            report.worst_margin = margin;
            report.witness = Json{{"x", point_to_json(x)},
                                  {"region", omega.name},
                                  {"t", t},
                                  {"measure_region", whole},
                                  {"measure_contracted", contracted.value},
                                  {"margin", margin}};
        }
    }
    report.details["rows"] = rows;
    report.finalize();
    return report;
}

std::string BishopGromovResult::to_csv() const {
    std::ostringstream out;
    out << "r,measure,ratio\n";
    for (const auto& row : rows) {
        out << detail::format_number(row.radius) << ',' << detail::format_number(row.measure) << ','
            << detail::format_number(row.ratio) << '\n';
    }
    return out.str();
}

BishopGromovResult bishop_gromov_table(const Space& space, const Point& x, const std::vector<double>& radii, int n,
                                       std::uint64_t seed, double tol) {
    if (radii.size() < 2) throw DomainError("bishop_gromov_table needs at least two radii");
    BishopGromovResult result;
    for (std::size_t i = 0; i < radii.size(); ++i) {
        if (!(radii[i] > 0.0) || (i > 0 && !(radii[i] > radii[i - 1]))) {
            throw DomainError("radii must be positive and ascending");
        }
        const double measure = hausdorff_estimate(space, ball_region(space, x, radii[i]), n, {}, seed).value;
        result.rows.push_back({radii[i], measure, measure / std::pow(radii[i], n)});
    }
    CheckReport& report = result.report;
    report.property = "bishop_gromov";
    report.space_spec = space.spec();
    report.n_samples = radii.size();
    report.tolerance = tol;
    for (std::size_t i = 1; i < result.rows.size(); ++i) {
        const double margin = (result.rows[i - 1].ratio - result.rows[i].ratio) / result.rows[i - 1].ratio;
        if (margin < report.worst_margin) {
            report.worst_margin = margin;
            report.witness = Json{{"x", point_to_json(x)},
                                  {"r_small", result.rows[i - 1].radius},
                                  {"r_large", result.rows[i].radius},
                                  {"ratio_small", result.rows[i - 1].ratio},
                                  {"ratio_large", result.rows[i].ratio},
                                  {"margin", margin}};
        }
    }
    Json rows = Json::array();
    for (const auto& row : result.rows) rows.push_back({{"r", row.radius}, {"measure", row.measure}, {"ratio", row.ratio}});
    report.details["rows"] = rows;
    report.finalize();
    return result;
}

CheckReport check_doubling(const Space& space, const Point& x, const std::vector<double>& radii, int n,
                           std::uint64_t seed, double tol) {
    CheckReport report;
    report.property = "doubling";
    report.space_spec = space.spec();
    report.n_samples = radii.size();
    report.tolerance = 0.0;
    const double bound = std::pow(2.0, n) * (1.0 + tol);
    for (double r : radii) {
        const double small = hausdorff_estimate(space, ball_region(space, x, r), n, {}, seed).value;
        const double large = hausdorff_estimate(space, ball_region(space, x, 2.0 * r), n, {}, seed).value;
        const double margin = (bound * small - large) / large;
        if (margin < report.worst_margin) {
            report.worst_margin = margin;
            report.witness = Json{{"x", point_to_json(x)},
                                  {"r", r},
                                  {"measure_r", small},
                                  {"measure_2r", large},
                                  {"doubling_ratio", large / small},
                                  {"margin", margin}};
        }
    }
    report.details["bound"] = bound;
    report.finalize();
    return report;
}

CheckReport poincare_check(const Space& space, const Point& x, double r, int n, const ScalarField& u,
                           std::size_t mc_samples, std::uint64_t seed, double tol) {
    if (!u.slope) throw InputError("poincare_check: field '" + u.name + "' has no slope oracle");
    if (!(r > 0.0) || mc_samples == 0) throw DomainError("poincare_check needs r > 0 and samples");
    const double inner_measure = hausdorff_estimate(space, ball_region(space, x, r), n, {}, seed).value;
    const double outer_measure = hausdorff_estimate(space, ball_region(space, x, 3.0 * r), n, {}, seed).value;

    const auto inner = sample_region(space, x, r, mc_samples, derive_seed(seed, 1));
    const auto outer = sample_region(space, x, 3.0 * r, mc_samples, derive_seed(seed, 2));
    std::vector<double> values(inner.size());
    std::vector<double> slopes(outer.size());
    parallel_for(inner.size(), [&](std::size_t i) { values[i] = u.value(inner[i]); });
    parallel_for(outer.size(), [&](std::size_t i) { slopes[i] = u.slope(outer[i]); });
    double mean = 0.0;
    for (double v : values) mean += v;
    mean /= static_cast<double>(values.size());
    double deviation = 0.0;
    for (double v : values) deviation += std::abs(v - mean);
    deviation /= static_cast<double>(values.size());
    double slope_mean = 0.0;
    for (double g : slopes) slope_mean += g;
    slope_mean /= static_cast<double>(slopes.size());

    const double lhs = inner_measure * deviation;
    const double rhs = outer_measure * slope_mean;
    const double bound = std::pow(2.0, n + 1) * r * rhs;

    CheckReport report;
    report.property = "poincare";
    report.space_spec = space.spec();
    report.n_samples = mc_samples;
    report.tolerance = 0.0;
    report.worst_margin = bound > 0.0 ? (bound * (1.0 + tol) - lhs) / bound : (lhs == 0.0 ? 0.0 : -kInfinity);
    report.witness = Json{{"x", point_to_json(x)}, {"r", r},     {"field", u.name},
                          {"lhs", lhs},            {"rhs", rhs}, {"margin", report.worst_margin}};
    report.details["ratio"] = rhs > 0.0 ? lhs / (r * rhs) : 0.0;
    report.details["constant"] = std::pow(2.0, n + 1);
    report.details["measure_r"] = inner_measure;
    report.details["measure_3r"] = outer_measure;
    report.finalize();
    return report;
}

std::string MeasureEstimate::to_csv() const {
    std::ostringstream out;
    out << "delta,count,estimate\n";
    for (std::size_t i = 0; i < deltas.size(); ++i) {
        out << detail::format_number(deltas[i]) << ',' << counts[i] << ',' << detail::format_number(estimates[i])
            << '\n';
    }
    return out.str();
}

Json MeasureEstimate::to_json() const {
    Json rows = Json::array();
    for (std::size_t i = 0; i < deltas.size(); ++i) {
        rows.push_back({{"delta", deltas[i]}, {"count", counts[i]}, {"estimate", estimates[i]}});
    }
    return {{"dimension", dimension}, {"value", value},         {"calibration", calibration},
            {"samples", sample_count}, {"converged", converged}, {"schedule", rows}};
}

}  // namespace curvelab
