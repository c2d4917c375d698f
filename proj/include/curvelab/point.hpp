#pragma once

#include <vector>

namespace curvelab {

// Coordinates of a point; their meaning is fixed by the owning space.
using Point = std::vector<double>;

// Per-space parametrisation of unit-speed geodesics leaving a base point.
using Direction = std::vector<double>;

}  // namespace curvelab
