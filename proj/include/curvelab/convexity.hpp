#pragma once

#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "curvelab/report.hpp"
#include "curvelab/sampling.hpp"
#include "curvelab/space.hpp"

namespace curvelab {

struct ScalarField {
    std::string name;
    std::function<double(const Point&)> value;
    // Local slope (an upper gradient); empty when unknown.
    std::function<double(const Point&)> slope;
};

enum class ConvexityMode { convex, quasi, strictly_quasi, properly_quasi };

std::string to_string(ConvexityMode mode);
ConvexityMode convexity_mode_from_string(const std::string& s);

// Convex: f(g(t)) <= (1-t) f(g(0)) + t f(g(1)). Quasi: f(g(t)) <= max of the
// endpoint values. The strict modes require the quasi gap at interior grid
// points to be at least tol; properly_quasi only on geodesics where f varies
// by more than sqrt(tol) relative.
CheckReport check_function_convexity(const Space& space, const ScalarField& f, ConvexityMode mode,
                                     const SamplerConfig& sampler, std::size_t t_grid = 33,
                                     std::optional<double> tol = {});

// Nondecreasing family of closed sets indexed by s in [index_min, index_max].
struct SublevelFamily {
    std::string name;
    double index_min = -kInfinity;
    double index_max = kInfinity;
    std::function<bool(double, const Point&)> member;
    std::function<bool(double, const Point&)> interior;  // may be empty
};

// Built-in families: "interval-c1", "interval-c2", "interval-c3" on the line,
// and "balls:<c1,c2,...>" (closed balls of radius s about a point of `space`).
SublevelFamily make_family(const std::string& name, const Space* space = nullptr);

// Sublevel sets {f <= s} of a scalar field.
SublevelFamily sublevel_family_of(const ScalarField& f);

struct SublevelValue {
    double value = 0.0;   // arctan of the infimal index
    double index = 0.0;   // the infimal index itself
    bool flagged = false; // x outside every set (value +inf) or inside every set (value -pi/2)
};

SublevelValue function_from_sublevels(const SublevelFamily& family, const Point& x,
                                      std::pair<double, double> bracket, double tol);

// Sampled checks of the three optional family properties:
// (1) every x escapes the interior of some member;
// (2) the intersection of C_s' over s' > s equals C_s;
// (3) the union of int C_s' over s' < s equals int C_s.
struct FamilyValidation {
    bool nondecreasing = true;
    bool escapes_interior = true;
    bool right_continuous = true;
    bool interior_left_continuous = true;
    Json witness = Json::object();
};

FamilyValidation validate_family(const SublevelFamily& family, const std::vector<Point>& points, double s_lo,
                                 double s_hi, double step = 0.125);

// Largest grid radius r <= r_max for which every probed geodesic between
// points of the closed ball B(x, r) stays in the ball (strict: interior
// points stay in the open ball).
double convexity_radius_estimate(const Space& space, const Point& x, double r_max, std::size_t steps,
                                 std::size_t probes, std::uint64_t seed, bool strict = false);

double replay_function_convexity(const Space& space, const ScalarField& f, const Json& witness);

// Scalar fields addressable by name from scenarios: "norm", "distance:<c1,c2,...>",
// "clamped_norm", "constant", "coordinate:<i>".
ScalarField make_field(const std::string& name, const Space& space);

}  // namespace curvelab
