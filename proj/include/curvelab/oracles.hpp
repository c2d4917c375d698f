#pragma once

#include <functional>
#include <string>
#include <vector>

#include "curvelab/point.hpp"

// Independent reference computations used to freeze golden values. Nothing in
// the library proper depends on these.
namespace curvelab::oracles {

// Length of the shortest horizontal polyline with `segments` equal steps from
// the origin to (x, y, z), among discrete circular arcs (equal turning per
// step); the lift uses z = 1/2 sum(x dy - y dx).
double heisenberg_discrete_length(const Point& target, int segments = 10000);

// Cone over a circle of length L, points (angle, radius): unrolled-plane distance.
double cone_unrolled_distance(double length, const Point& p, const Point& q);
// Unrolled-plane midpoint, returned as (angle, radius) with the angle near p's.
Point cone_unrolled_midpoint(double length, const Point& p, const Point& q);

// Hilbert metric of the ellipse x^2/a^2 + y^2/b^2 < 1 via the Klein model.
double klein_distance(double a, double b, const Point& p, const Point& q);

// Distance between the t-points of the two sides from the apex of a geodesic
// triangle with sides a, b (from the apex) and c, built explicitly: on the
// sphere in R^3 for k > 0, the plane for k = 0, the hyperboloid for k < 0.
double spherical_t_distance(double a, double b, double c, double k, double t);

// int_{B_r} |x_1 - mean| / (r int_{B_3r} 1) in the Euclidean plane.
double euclidean_poincare_ratio();

// Area of a geodesic disc of radius r on the unit sphere.
double sphere_cap_area(double r);

struct NamedOracle {
    std::string name;
    std::string description;
    std::function<double()> evaluate;
};

std::vector<NamedOracle> registry();

}  // namespace curvelab::oracles
