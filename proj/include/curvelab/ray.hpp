#pragma once

#include <algorithm>
#include <string>

#include "curvelab/space.hpp"

namespace curvelab {

// Unit-speed geodesic [0, horizon] -> X. The space must outlive the ray.
class Ray {
public:
    Ray(const Space& space, Point base, Direction dir, double horizon);

    Point at(double t) const;
    const Point& base() const noexcept { return base_; }
    const Direction& direction() const noexcept { return dir_; }
    double horizon() const noexcept { return horizon_; }
    const Space& space() const noexcept { return *space_; }

    // "<coords>@<direction>:<horizon>", comma separated numbers.
    std::string to_spec() const;
    static Ray parse(const Space& space, const std::string& spec);

private:
    const Space* space_;
    Point base_;
    Direction dir_;
    double horizon_;
};

// Two rays with a common base whose concatenation is a unit-speed line.
struct Line {
    Ray forward;
    Ray backward;

    Point at(double t) const { return t >= 0.0 ? forward.at(t) : backward.at(-t); }
    double horizon() const { return std::min(forward.horizon(), backward.horizon()); }
};

// The line through base in direction dir; throws NotALineError when the glued
// curve fails d(backward(t), forward(s)) = t + s on a grid.
Line make_line(const Space& space, const Point& base, const Direction& dir, double horizon,
               double tol);
void verify_line(const Line& line, double tol);

}  // namespace curvelab
