#pragma once

#include <array>
#include <optional>
#include <vector>

#include "curvelab/report.hpp"
#include "curvelab/sampling.hpp"
#include "curvelab/space.hpp"

namespace curvelab {

enum class ModelSurface { euclidean, sphere, hyperbolic };

// Triangle with sides a, b from the apex and c opposite it, placed in the
// model surface of constant curvature k.
struct ComparisonTriangle {
    double a = 0.0;
    double b = 0.0;
    double c = 0.0;
    double k = 0.0;
    double apex_angle = 0.0;
    double half_apex_sin2 = 0.0;  // sin^2(apex_angle / 2), kept for accuracy
    ModelSurface model = ModelSurface::euclidean;
};

// Throws ExistenceError when no such triangle exists in the model surface.
ComparisonTriangle comparison_triangle(double a, double b, double c, double k);

// Model distance between the points at fraction t along the two sides from the apex.
double comparison_t_distance(const ComparisonTriangle& tri, double t);

// Triples (x, y1, y2) drawn from the sampler region, 3 points per triple.
std::vector<std::array<Point, 3>> sample_triples(const Space& space, const SamplerConfig& sampler);

std::vector<double> uniform_grid(std::size_t points);

CheckReport check_busemann_concavity(const Space& space, const SamplerConfig& sampler,
                                     std::size_t t_grid = 33, std::optional<double> tol = {});

CheckReport check_curvature_bound(const Space& space, double k, const SamplerConfig& sampler,
                                  std::size_t t_grid = 33, std::optional<double> tol = {});

struct DiameterEstimate {
    double value = 0.0;
    Point p;
    Point q;
};

// Lower bound on the diameter (of the region when given). Unbounded spaces
// need a region; otherwise UnboundedError.
DiameterEstimate diameter_estimate(const Space& space, std::size_t n, std::uint64_t seed,
                                   std::size_t refine_iters, const std::optional<Region>& region = {});

CheckReport check_bonnet_myers(const Space& space, double k, std::optional<double> tol = {},
                               std::size_t n = 400, std::uint64_t seed = 1, std::size_t refine_iters = 400,
                               const std::optional<Region>& region = {});

// Points at distance pi - s (+-1e-3) from x; pass iff their diameter is at most 2s + tol.
CheckReport check_boundary_sphere_diameter(const Space& space, const Point& x, double s, std::size_t n,
                                           std::uint64_t seed, std::optional<double> tol = {},
                                           const std::optional<Region>& region = {});

double replay_busemann_concavity(const Space& space, const Json& witness);
double replay_curvature_bound(const Space& space, const Json& witness);
double replay_bonnet_myers(const Space& space, const Json& witness);
double replay_boundary_sphere_diameter(const Space& space, const Json& witness);

}  // namespace curvelab
