#include "curvelab/oracles.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace curvelab::oracles {

namespace {

constexpr double kPi = std::numbers::pi;

struct DiscreteArc {
    double chord_x = 0.0;
    double chord_y = 0.0;
    double lift = 0.0;  // z of the endpoint for unit steps
};

// Unit-step polyline turning by turn/segments per step, starting along +x.
DiscreteArc discrete_arc(double turn, int segments) {
    const double step = turn / segments;
    DiscreteArc arc;
    double x = 0.0;
    double y = 0.0;
    for (int k = 0; k < segments; ++k) {
        const double heading = (k + 0.5) * step;
        const double nx = x + std::cos(heading);
        const double ny = y + std::sin(heading);
        arc.lift += 0.5 * (x * ny - nx * y);
        x = nx;
        y = ny;
    }
    arc.chord_x = x;
    arc.chord_y = y;
    return arc;
}

}  // namespace

double heisenberg_discrete_length(const Point& target, int segments) {
    if (target.size() != 3 || segments < 3) throw std::invalid_argument("need (x, y, z) and 3+ segments");
    const double planar = std::hypot(target[0], target[1]);
    const double z = std::abs(target[2]);
    if (planar == 0.0) {
        // Closed polygon of area z: the regular one is optimal.
        return 2.0 * std::sqrt(segments * std::tan(kPi / segments) * z);
    }
    if (z == 0.0) return planar;
    // The lift of an arc scaled to chord `planar` is planar^2 * lift/|chord|^2,
    // increasing in the total turn on (0, 2 pi).
    auto normalized_lift = [&](double turn) {
        const DiscreteArc arc = discrete_arc(turn, segments);
        const double chord2 = arc.chord_x * arc.chord_x + arc.chord_y * arc.chord_y;
        return arc.lift / chord2;
    };
    const double wanted = z / (planar * planar);
    double lo = 0.0;
    double hi = 2.0 * kPi * (1.0 - 1e-9);
    if (normalized_lift(hi) < wanted) hi = 2.0 * kPi * (1.0 - 1e-14);
    for (int i = 0; i < 200; ++i) {
        const double mid = 0.5 * (lo + hi);
        if (normalized_lift(mid) < wanted) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    const DiscreteArc arc = discrete_arc(0.5 * (lo + hi), segments);
    return segments * planar / std::hypot(arc.chord_x, arc.chord_y);
}

double cone_unrolled_distance(double length, const Point& p, const Point& q) {
    double delta = std::fmod(std::abs(p.at(0) - q.at(0)), length);
    delta = std::min(delta, length - delta);
    const double r1 = p.at(1);
    const double r2 = q.at(1);
    if (delta >= kPi) return r1 + r2;
    return std::sqrt(std::max(0.0, r1 * r1 + r2 * r2 - 2.0 * r1 * r2 * std::cos(delta)));
}

Point cone_unrolled_midpoint(double length, const Point& p, const Point& q) {
    double delta = std::remainder(q.at(0) - p.at(0), length);
    const double r1 = p.at(1);
    const double r2 = q.at(1);
    if (std::abs(delta) >= kPi) {
        // The geodesic runs through the apex.
        if (r1 >= r2) return {p.at(0), 0.5 * (r1 - r2)};
        return {q.at(0), 0.5 * (r2 - r1)};
    }
    const double mx = 0.5 * (r1 + r2 * std::cos(delta));
    const double my = 0.5 * (r2 * std::sin(delta));
    return {p.at(0) + std::atan2(my, mx), std::hypot(mx, my)};
}

double klein_distance(double a, double b, const Point& p, const Point& q) {
    const double px = p.at(0) / a, py = p.at(1) / b;
    const double qx = q.at(0) / a, qy = q.at(1) / b;
    const double num = 1.0 - px * qx - py * qy;
    const double den = std::sqrt((1.0 - px * px - py * py) * (1.0 - qx * qx - qy * qy));
    return std::acosh(std::max(1.0, num / den));
}

double spherical_t_distance(double a, double b, double c, double k, double t) {
    if (k == 0.0) {
        const double cos_gamma = (a * a + b * b - c * c) / (2.0 * a * b);
        const double gamma = std::acos(std::clamp(cos_gamma, -1.0, 1.0));
        return std::hypot(t * b * std::cos(gamma) - t * a, t * b * std::sin(gamma));
    }
    if (k < 0.0) {
        // Hyperboloid model in Minkowski space.
        const double R = 1.0 / std::sqrt(-k);
        const double A = a / R, B = b / R, C = c / R;
        const double cos_gamma = (std::cosh(A) * std::cosh(B) - std::cosh(C)) / (std::sinh(A) * std::sinh(B));
        const double gamma = std::acos(std::clamp(cos_gamma, -1.0, 1.0));
        using V = std::array<double, 3>;
        auto along = [](double s, double heading) {
            return V{std::cosh(s), std::sinh(s) * std::cos(heading), std::sinh(s) * std::sin(heading)};
        };
        const V u = along(t * A, 0.0);
        const V v = along(t * B, gamma);
        const double lorentz = u[0] * v[0] - u[1] * v[1] - u[2] * v[2];
        return R * std::acosh(std::max(1.0, lorentz));
    }
    const double R = 1.0 / std::sqrt(k);
    const double A = a / R, B = b / R, C = c / R;
    // Apex angle from the spherical law of cosines.
    const double cos_gamma = (std::cos(C) - std::cos(A) * std::cos(B)) / (std::sin(A) * std::sin(B));
    const double gamma = std::acos(std::clamp(cos_gamma, -1.0, 1.0));
    using V = std::array<double, 3>;
    auto along = [](double angle, double heading) {
        return V{std::sin(angle) * std::cos(heading), std::sin(angle) * std::sin(heading), std::cos(angle)};
    };
    const V u = along(t * A, 0.0);
    const V v = along(t * B, gamma);
    const double dot = u[0] * v[0] + u[1] * v[1] + u[2] * v[2];
    const V cross{u[1] * v[2] - u[2] * v[1], u[2] * v[0] - u[0] * v[2], u[0] * v[1] - u[1] * v[0]};
    return R * std::atan2(std::sqrt(cross[0] * cross[0] + cross[1] * cross[1] + cross[2] * cross[2]), dot);
}

double euclidean_poincare_ratio() {
    // int_{B_r} |x_1| = 4 r^3 / 3 and |B_3r| = 9 pi r^2; the ratio is scale free.
    return (4.0 / 3.0) / (9.0 * kPi);
}

double sphere_cap_area(double r) { return 2.0 * kPi * (1.0 - std::cos(r)); }

std::vector<NamedOracle> registry() {
    return {
        {"heisenberg-z1", "discrete horizontal length from the origin to (0,0,1), 10^4 segments",
         [] { return heisenberg_discrete_length({0.0, 0.0, 1.0}); }},
        {"heisenberg-arc", "discrete horizontal length from the origin to (1,0,0.25), 10^4 segments",
         [] { return heisenberg_discrete_length({1.0, 0.0, 0.25}); }},
        {"cone5-distance", "unrolled distance on the cone over a circle of length 5 between (0,1) and (2,1)",
         [] { return cone_unrolled_distance(5.0, {0.0, 1.0}, {2.0, 1.0}); }},
        {"klein-center", "Klein-model distance from the centre of the unit disc to (0.5, 0)",
         [] { return klein_distance(1.0, 1.0, {0.0, 0.0}, {0.5, 0.0}); }},
        {"poincare-euclidean", "int_B |x1 - mean| / (r int_3B 1) in the plane",
         [] { return euclidean_poincare_ratio(); }},
        {"sphere-area", "area of the unit sphere", [] { return sphere_cap_area(kPi); }},
    };
}

}  // namespace curvelab::oracles
