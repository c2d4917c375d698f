#pragma once

#include <array>
#include <string>
#include <vector>

#include "curvelab/report.hpp"
#include "curvelab/sampling.hpp"
#include "curvelab/space.hpp"

namespace curvelab {

// Hinge (x; y, z) with its midpoint m of [y, z] and the side lengths used by
// both estimators.
struct SmoothnessTriple {
    Point x;
    Point y;
    Point z;
    double leg_y = 0.0;   // d(x, y)
    double leg_z = 0.0;   // d(x, z)
    double base = 0.0;    // d(y, z)
    double median = 0.0;  // d(x, m)

    double short_leg() const { return leg_y < leg_z ? leg_y : leg_z; }
    // Smallest eps for which the triple is admissible.
    double ratio() const { return base / short_leg(); }
};

// x, y drawn from the sampler region; z drawn near y at a log-uniform relative
// radius in [eps_min, eps_max]. Degenerate triples (a zero side) are dropped,
// so fewer than sampler.count triples may come back.
std::vector<SmoothnessTriple> sample_smoothness_triples(const Space& space, const SamplerConfig& sampler,
                                                        double eps_min = 1e-3, double eps_max = 1.0);

struct ModulusTable {
    std::string space_spec;
    std::vector<double> eps;
    std::vector<double> rho_hat;      // cumulative max, so nondecreasing
    std::vector<std::size_t> counts;  // triples whose ratio falls in (eps[i-1], eps[i]]
    std::vector<bool> empty;          // no triple in the bin

    std::string to_csv() const;
    Json to_json() const;
};

ModulusTable estimate_modulus(const Space& space, const std::vector<double>& eps_grid, const SamplerConfig& sampler);
ModulusTable estimate_modulus(const std::vector<SmoothnessTriple>& triples, const std::vector<double>& eps_grid,
                              const std::string& space_spec);

// Sampled lower bound on the p-uniform smoothness constant.
double estimate_p_constant(const Space& space, double p, const SamplerConfig& sampler);
double estimate_p_constant(const std::vector<SmoothnessTriple>& triples, double p);

double modulus_from_constant(double c, double p, double eps);

// "consistent-with" when the log-log least-squares exponent of rho_hat against
// eps exceeds 1 (+1e-6 for rounding) over the bins with rho_hat > 0, "violates at finite eps" otherwise.
std::string modulus_trend(const ModulusTable& table);

// Margin min over the grid of modulus_from_constant(C(1+1e-6), p, eps) - rho_hat(eps).
CheckReport check_modulus_consistency(const ModulusTable& table, double c_hat, double p);

std::vector<double> log_grid(double lo, double hi, std::size_t points);

}  // namespace curvelab
