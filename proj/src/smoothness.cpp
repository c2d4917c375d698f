#include "curvelab/smoothness.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "curvelab/errors.hpp"
#include "curvelab/parallel.hpp"
#include "format.hpp"

namespace curvelab {

std::vector<double> log_grid(double lo, double hi, std::size_t points) {
    if (!(lo > 0.0) || !(hi > lo) || points < 2) throw DomainError("log_grid needs 0 < lo < hi and 2+ points");
    std::vector<double> grid(points);
    const double step = std::log(hi / lo) / static_cast<double>(points - 1);
    for (std::size_t i = 0; i < points; ++i) grid[i] = lo * std::exp(step * static_cast<double>(i));
    grid.back() = hi;
    return grid;
}

std::vector<SmoothnessTriple> sample_smoothness_triples(const Space& space, const SamplerConfig& sampler,
                                                        double eps_min, double eps_max) {
    if (!(eps_min > 0.0) || !(eps_max >= eps_min)) throw DomainError("need 0 < eps_min <= eps_max");
    const auto pairs = sample_region(space, sampler.region(space), 2 * sampler.count, sampler.seed);
    std::vector<SampleOutcome<SmoothnessTriple>> slots(sampler.count);
    const double log_span = std::log(eps_max / eps_min);

    parallel_for(sampler.count, [&](std::size_t i) {
        auto& slot = slots[i];
        SmoothnessTriple& tri = slot.data;
        tri.x = pairs[2 * i];
        tri.y = pairs[2 * i + 1];
        try {
            const std::uint64_t stream = derive_seed(sampler.seed, i + 1);
            Rng rng(stream);
            const double eps = eps_min * std::exp(log_span * rng.uniform());
            tri.leg_y = space.distance(tri.x, tri.y);
            if (tri.leg_y == 0.0) {
                slot.skipped = true;
                return;
            }
            // z from the outer half of B(y, eps*leg): the scale is set by eps, and
            // bases far below it only add cancellation noise to the ratios.
            const double reach = eps * tri.leg_y;
            for (std::uint64_t attempt = 1; attempt <= 64; ++attempt) {
                tri.z = sample_region(space, tri.y, reach, 1, derive_seed(stream, attempt)).front();
                tri.base = space.distance(tri.y, tri.z);
                if (tri.base >= 0.5 * reach) break;
            }
            tri.leg_z = space.distance(tri.x, tri.z);
            if (tri.leg_z == 0.0 || tri.base < 0.5 * reach) {
                slot.skipped = true;
                return;
            }
            tri.median = space.distance(tri.x, space.midpoint(tri.y, tri.z));
        } catch (const Error&) {
            slot.skipped = true;
        }
    });

    std::vector<SmoothnessTriple> out;
    out.reserve(slots.size());
    for (auto& s : slots) {
        if (!s.skipped) out.push_back(std::move(s.data));
    }
    return out;
}

ModulusTable estimate_modulus(const std::vector<SmoothnessTriple>& triples, const std::vector<double>& eps_grid,
                              const std::string& space_spec) {
    if (eps_grid.empty()) throw DomainError("empty eps grid");
    for (std::size_t i = 0; i < eps_grid.size(); ++i) {
        if (!(eps_grid[i] > 0.0) || (i > 0 && !(eps_grid[i] > eps_grid[i - 1]))) {
            throw DomainError("eps grid must be positive and ascending");
        }
    }
    ModulusTable table;
    table.space_spec = space_spec;
    table.eps = eps_grid;
    table.rho_hat.assign(eps_grid.size(), 0.0);
    table.counts.assign(eps_grid.size(), 0);
    for (const auto& tri : triples) {
        const double ratio = tri.ratio();
        const auto bin = std::lower_bound(eps_grid.begin(), eps_grid.end(), ratio);
        if (bin == eps_grid.end()) continue;
        const auto i = static_cast<std::size_t>(bin - eps_grid.begin());
        ++table.counts[i];
        const double rho = std::clamp(1.0 - tri.median / tri.short_leg(), 0.0, 1.0);
        table.rho_hat[i] = std::max(table.rho_hat[i], rho);
    }
    table.empty.resize(eps_grid.size());
    for (std::size_t i = 0; i < eps_grid.size(); ++i) {
        table.empty[i] = table.counts[i] == 0;
        if (i > 0) table.rho_hat[i] = std::max(table.rho_hat[i], table.rho_hat[i - 1]);
    }
    return table;
}

ModulusTable estimate_modulus(const Space& space, const std::vector<double>& eps_grid, const SamplerConfig& sampler) {
    const double lo = eps_grid.empty() ? 1e-3 : std::min(1e-3, eps_grid.front());
    const double hi = eps_grid.empty() ? 1.0 : std::max(lo, eps_grid.back());
    return estimate_modulus(sample_smoothness_triples(space, sampler, lo, hi), eps_grid, space.spec());
}

double estimate_p_constant(const std::vector<SmoothnessTriple>& triples, double p) {
    if (!(p > 1.0 && p <= 2.0)) throw DomainError("p must lie in (1, 2]");
    double c_hat = 0.0;
    for (const auto& tri : triples) {
        if (tri.base == 0.0) continue;
        const double excess =
            0.5 * std::pow(tri.leg_y, p) + 0.5 * std::pow(tri.leg_z, p) - std::pow(tri.median, p);
        c_hat = std::max(c_hat, 4.0 * excess / std::pow(tri.base, p));
    }
    return c_hat;
}

double estimate_p_constant(const Space& space, double p, const SamplerConfig& sampler) {
    return estimate_p_constant(sample_smoothness_triples(space, sampler), p);
}

double modulus_from_constant(double c, double p, double eps) {
    if (!(c >= 0.0) || !(p > 1.0 && p <= 2.0) || !(eps > 0.0)) {
        throw DomainError("modulus_from_constant needs C >= 0, p in (1, 2], eps > 0");
    }
    return std::min(0.25 * c * std::pow(eps, p), 1.0);
}

std::string modulus_trend(const ModulusTable& table) {
    // Least-squares exponent of rho_hat ~ eps^q over bins with rho_hat > 0.
    double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
    std::size_t n = 0;
    for (std::size_t i = 0; i < table.eps.size(); ++i) {
        if (table.empty[i] || !(table.rho_hat[i] > 0.0)) continue;
        const double x = std::log(table.eps[i]);
        const double y = std::log(table.rho_hat[i]);
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
        ++n;
    }
    if (n < 2) return "consistent-with";
    const double denom = static_cast<double>(n) * sxx - sx * sx;
    if (!(denom > 0.0)) return "consistent-with";
    const double exponent = (static_cast<double>(n) * sxy - sx * sy) / denom;
    return exponent > 1.0 + 1e-6 ? "consistent-with" : "violates at finite eps";
}

CheckReport check_modulus_consistency(const ModulusTable& table, double c_hat, double p) {
    CheckReport report;
    report.property = "modulus_consistency";
    report.space_spec = table.space_spec;
    report.tolerance = 0.0;
    for (std::size_t i = 0; i < table.eps.size(); ++i) {
        report.n_samples += table.counts[i];
        const double margin = modulus_from_constant(c_hat * (1.0 + 1e-6), p, table.eps[i]) - table.rho_hat[i];
        if (margin < report.worst_margin) {
            report.worst_margin = margin;
            report.witness = Json{{"eps", table.eps[i]}, {"rho_hat", table.rho_hat[i]}, {"c_hat", c_hat}, {"p", p}};
        }
    }
    report.details["trend"] = modulus_trend(table);
    report.finalize();
    return report;
}

std::string ModulusTable::to_csv() const {
    std::ostringstream out;
    out << "eps,rho_hat,n\n";
    for (std::size_t i = 0; i < eps.size(); ++i) {
        out << detail::format_number(eps[i]) << ',' << detail::format_number(rho_hat[i]) << ',' << counts[i] << '\n';
    }
    return out.str();
}

Json ModulusTable::to_json() const {
    Json rows = Json::array();
    for (std::size_t i = 0; i < eps.size(); ++i) {
        rows.push_back({{"eps", eps[i]}, {"rho_hat", rho_hat[i]}, {"n", counts[i]}, {"empty", static_cast<bool>(empty[i])}});
    }
    return {{"space", space_spec}, {"table", rows}, {"trend", modulus_trend(*this)}};
}

}  // namespace curvelab
