#pragma once

#include <functional>
#include <vector>

#include "curvelab/point.hpp"

namespace curvelab {

class Space;

// Constant-speed curve on [0,1]. Either a closed form or a polyline whose
// vertices are equally spaced in arclength; polylines interpolate through the
// owning space's chart.
class GeodesicPath {
public:
    using Evaluator = std::function<Point(double)>;

    static GeodesicPath analytic(Point start, Point end, double length, Evaluator eval);
    static GeodesicPath constant(const Point& p);
    static GeodesicPath discrete(const Space& space, std::vector<Point> vertices, double length,
                                 double residual);

    Point at(double t) const;
    Point midpoint() const { return at(0.5); }

    const Point& start() const noexcept { return start_; }
    const Point& end() const noexcept { return end_; }
    double length() const noexcept { return length_; }
    bool is_discrete() const noexcept { return space_ != nullptr; }
    double residual() const noexcept { return residual_; }
    const std::vector<Point>& vertices() const noexcept { return vertices_; }

private:
    Point start_;
    Point end_;
    double length_ = 0.0;
    Evaluator eval_;
    const Space* space_ = nullptr;
    std::vector<Point> vertices_;
    double residual_ = 0.0;
};

struct NumericGeodesicOptions {
    int segments = 16;
    int max_iters = 400;
    double tol = 1e-9;
};

// Polyline geodesic by iterated local midpoint relaxation. Throws SolverError
// when the budget runs out with a residual above 10*tol.
GeodesicPath numeric_geodesic(const Space& space, const Point& p, const Point& q,
                              const NumericGeodesicOptions& options = {});

// Point m minimising d(a,m)^2 + d(m,b)^2, searched in chart coordinates from `guess`.
Point local_midpoint(const Space& space, const Point& a, const Point& b, const Point& guess,
                     double tol);

}  // namespace curvelab
