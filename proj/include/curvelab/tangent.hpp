#pragma once

#include <array>
#include <optional>
#include <vector>

#include "curvelab/report.hpp"
#include "curvelab/sampling.hpp"
#include "curvelab/space.hpp"

namespace curvelab {

// (geodesic from base with the given direction, magnitude).
struct TangentVector {
    Point base;
    Direction direction;
    double magnitude = 0.0;

    TangentVector scaled(double lambda) const { return {base, direction, lambda * magnitude}; }
};

// 1, 1/2, ..., 2^-levels.
std::vector<double> halving_schedule(std::size_t levels = 20);

struct PretangentDistance {
    double value = 0.0;          // ratio at the smallest usable r, or the sup when not monotone
    double error = 0.0;          // last increment plus a rounding allowance
    double r_min = 0.0;
    bool monotone = true;        // ratio nondecreasing as r shrinks
    double worst_decrease = 0.0; // largest drop of the ratio as r shrinks
    std::vector<double> ratios;
};

// sup_r d(gamma(r s), eta(r t)) / r over a descending schedule. Scales whose
// distances fall below 1e3 * machine epsilon * scale are dropped; the walk stops
// once two successive ratios agree within tol.
PretangentDistance pretangent_distance(const Space& space, const TangentVector& v, const TangentVector& w,
                                       const std::vector<double>& r_schedule = halving_schedule(),
                                       double tol = 1e-9);

// Tangent vector pairs at x: directions toward sampled points, magnitudes the
// distances to them (so exp of each vector is the sampled point).
std::vector<std::array<TangentVector, 2>> sample_tangent_pairs(const Space& space, const Point& x,
                                                               const SamplerConfig& sampler);

// margin = -max |d_x(lambda v, lambda w) - lambda d_x(v, w)| / max(1, lambda d_x(v, w)).
CheckReport check_homogeneity(const Space& space, const Point& x, const SamplerConfig& sampler, double lambda,
                              std::optional<double> tol = {});

// margin = min d_x(v, w) - d(exp v, exp w).
CheckReport check_exponential_lipschitz(const Space& space, const Point& x, const SamplerConfig& sampler,
                                        std::optional<double> tol = {});

double replay_homogeneity(const Space& space, const Json& witness);
double replay_exponential_lipschitz(const Space& space, const Json& witness);

}  // namespace curvelab
