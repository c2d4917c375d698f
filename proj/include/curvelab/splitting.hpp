#pragma once

#include <optional>
#include <vector>

#include "curvelab/busemann.hpp"
#include "curvelab/ray.hpp"
#include "curvelab/report.hpp"
#include "curvelab/sampling.hpp"

namespace curvelab {

// Line through x glued from the rays asymptotic to line.forward and
// line.backward. Throws NotALineError when the glued curve is not a line.
Line parallel_line_through(const Line& line, const Point& x, const std::vector<double>& schedule, double tol);

// Uniqueness probe: builds the parallel from three schedules and returns the
// largest disagreement of the glued lines at parameters -1, 0, 1.
double parallel_line_spread(const Line& line, const Point& x, double horizon, double tol);

struct SplitCoordinates {
    Point foot;
    double height = 0.0;
    double bracket = 0.0;  // half-width of the Busemann bracket behind height
};

// (foot, height) with height the forward Busemann value of x and foot the
// point of the parallel through x at parameter -height.
SplitCoordinates splitting_map(const Line& line, const Point& x, double horizon, double tol);

// Ratios R1 = d~/d and R2 = d/d~ for d~ = d(foot, foot') + |height - height'|.
// margin = min(3 - R1, 1 - R2); details carry max_r1 and max_r2.
CheckReport splitting_distortion(const Line& line, const SamplerConfig& sampler, double horizon,
                                 std::optional<double> tol = {});

// margin = -max |d(eta_x(t+a), eta_y(s+a)) - d(eta_x(t), eta_y(s))| / scale.
CheckReport check_moving_isometry(const Line& line, const SamplerConfig& sampler, const std::vector<double>& a_grid,
                                  double horizon, std::optional<double> tol = {});

}  // namespace curvelab
