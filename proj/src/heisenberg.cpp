#include <cmath>
#include <numbers>

#include "curvelab/errors.hpp"
#include "curvelab/model_spaces.hpp"

namespace curvelab {

Point heisenberg_multiply(const Point& p, const Point& q) {
    return {p[0] + q[0], p[1] + q[1], p[2] + q[2] + 0.5 * (p[0] * q[1] - p[1] * q[0])};
}

Point heisenberg_inverse(const Point& p) { return {-p[0], -p[1], -p[2]}; }

Point heisenberg_dilate(double lambda, const Point& p) {
    return {lambda * p[0], lambda * p[1], lambda * lambda * p[2]};
}

namespace {

constexpr double kPi = std::numbers::pi;

// sin(x)/x
double sinc(double x) {
    if (std::abs(x) < 1e-4) return 1.0 - x * x / 6.0;
    return std::sin(x) / x;
}

// Length over planar chord, 1/sinc(phi/2), for a projection turning by phi.
double stretch(double phi) { return 1.0 / sinc(0.5 * phi); }

// (a - sin a)/a^2, the lifted area coefficient of an arc with turning angle a.
double area_coefficient(double a) {
    if (std::abs(a) < 1e-3) {
        const double a2 = a * a;
        return a / 6.0 * (1.0 - a2 / 20.0 * (1.0 - a2 / 42.0));
    }
    return (a - std::sin(a)) / (a * a);
}

// Ratio |z| / r^2 reached by the geodesic arc with turning angle phi in (0, 2pi):
// (phi - sin phi) / (8 sin^2(phi/2)).
double area_ratio(double phi) {
    if (phi < 1e-3) {
        const double p2 = phi * phi;
        return phi / 12.0 * (1.0 + p2 / 60.0);
    }
    const double h = std::sin(0.5 * phi);
    return (phi - std::sin(phi)) / (8.0 * h * h);
}

// Same ratio written in terms of the deficit e = 2pi - phi, for phi > pi.
double area_ratio_deficit(double e) {
    const double h = std::sin(0.5 * e);
    return (2.0 * kPi - e + std::sin(e)) / (8.0 * h * h);
}

struct ArcSolution {
    double length;   // Carnot-Caratheodory distance
    double turning;  // phi, total turning of the planar projection
};

// Geodesic from the origin to (x, y, z) with planar radius r = |(x, y)|.
ArcSolution solve_arc(double r, double z, double tol) {
    const double a = std::abs(z);
    if (a == 0.0) return {r, 0.0};
    if (r == 0.0) return {2.0 * std::sqrt(kPi * a), 2.0 * kPi};
    const double target = a / (r * r);
    if (target <= kPi / 8.0) {
        // turning in (0, pi]; area_ratio is increasing.
        double lo = 0.0;
        double hi = kPi;
        for (int i = 0; i < 200; ++i) {
            const double mid = 0.5 * (lo + hi);
            if (area_ratio(mid) < target) {
                lo = mid;
            } else {
                hi = mid;
            }
            const double len_lo = r * stretch(lo);
            const double len_hi = r * stretch(hi);
            if (len_hi - len_lo <= tol * 0.5 || hi - lo <= 4e-16 * hi) break;
        }
        const double phi = 0.5 * (lo + hi);
        return {r * stretch(phi), phi};
    }
    // turning in (pi, 2pi): bisect on the deficit e = 2pi - phi, where area_ratio_deficit decreases.
    double lo = 0.0;
    double hi = kPi;
    for (int i = 0; i < 200; ++i) {
        const double mid = 0.5 * (lo + hi);
        if (area_ratio_deficit(mid) > target) {
            lo = mid;
        } else {
            hi = mid;
        }
        const double len_lo = r * (2.0 * kPi - hi) / (2.0 * std::sin(0.5 * hi));
        const double len_hi = r * (2.0 * kPi - lo) / (2.0 * std::sin(0.5 * std::max(lo, 1e-300)));
        if (len_hi - len_lo <= tol * 0.5 || hi - lo <= 4e-16 * hi) break;
    }
    const double e = 0.5 * (lo + hi);
    return {r * (2.0 * kPi - e) / (2.0 * std::sin(0.5 * e)), 2.0 * kPi - e};
}

struct ArcParameters {
    double length;
    double heading;
    double curvature;
};

ArcParameters arc_to(const Point& w, double tol) {
    if (!std::isfinite(w[0]) || !std::isfinite(w[1]) || !std::isfinite(w[2])) {
        throw DomainError("heisenberg: non-finite coordinates");
    }
    const double r = std::hypot(w[0], w[1]);
    const ArcSolution sol = solve_arc(r, w[2], tol);
    if (!std::isfinite(sol.length)) throw SolverError("heisenberg: arc solve failed", sol.length);
    if (sol.length == 0.0) return {0.0, 0.0, 0.0};
    const double sign = w[2] > 0.0 ? 1.0 : (w[2] < 0.0 ? -1.0 : 0.0);
    const double chord_angle = r > 0.0 ? std::atan2(w[1], w[0]) : 0.0;
    return {sol.length, chord_angle - 0.5 * sign * sol.turning, sign * sol.turning / sol.length};
}

}  // namespace

Point heisenberg_arc(double heading, double curvature, double s) {
    const double turning = std::abs(curvature) * s;
    const double sign = curvature > 0.0 ? 1.0 : (curvature < 0.0 ? -1.0 : 0.0);
    const double chord = s * sinc(0.5 * turning);
    const double angle = heading + 0.5 * sign * turning;
    return {chord * std::cos(angle), chord * std::sin(angle), 0.5 * sign * s * s * area_coefficient(turning)};
}

double heisenberg_distance(const Point& p, const Point& q, double tol) {
    if (!(tol > 0.0)) throw DomainError("heisenberg_distance needs tol > 0");
    if (p.size() != 3 || q.size() != 3) throw DomainError("heisenberg: points have 3 coordinates");
    const Point w = heisenberg_multiply(heisenberg_inverse(p), q);
    return arc_to(w, tol).length;
}

double HeisenbergSpace::distance(const Point& p, const Point& q) const {
    require_size(p, 3);
    require_size(q, 3);
    return heisenberg_distance(p, q, tol_);
}

GeodesicPath HeisenbergSpace::geodesic(const Point& p, const Point& q) const {
    require_size(p, 3);
    require_size(q, 3);
    const ArcParameters arc = arc_to(heisenberg_multiply(heisenberg_inverse(p), q), tol_);
    if (arc.length == 0.0) return GeodesicPath::constant(p);
    return GeodesicPath::analytic(p, q, arc.length, [p, arc](double t) {
        return heisenberg_multiply(p, heisenberg_arc(arc.heading, arc.curvature, t * arc.length));
    });
}

Point HeisenbergSpace::propose(const Point& center, double radius, Rng& rng) const {
    // The ball of radius R about the origin fits in |x|,|y| <= R, |z| <= R^2/(2 pi).
    const double height = radius * radius / (2.0 * kPi);
    const Point local{rng.uniform(-radius, radius), rng.uniform(-radius, radius), rng.uniform(-height, height)};
    return heisenberg_multiply(center, local);
}

Direction HeisenbergSpace::initial_direction(const Point& from, const Point& to) const {
    require_size(from, 3);
    require_size(to, 3);
    const ArcParameters arc = arc_to(heisenberg_multiply(heisenberg_inverse(from), to), tol_);
    if (arc.length == 0.0) return {1.0, 0.0, 0.0};
    return {std::cos(arc.heading), std::sin(arc.heading), arc.curvature};
}

Point HeisenbergSpace::shoot(const Point& base, const Direction& dir, double t) const {
    return heisenberg_multiply(base, heisenberg_arc(std::atan2(dir[1], dir[0]), dir[2], t));
}

Direction HeisenbergSpace::reverse_direction(const Point&, const Direction& dir) const {
    return {-dir[0], -dir[1], -dir[2]};
}

Direction HeisenbergSpace::normalize_direction(const Point&, const Direction& dir) const {
    if (dir.size() != 3) throw DomainError("heisenberg: direction has 3 components");
    const double n = std::hypot(dir[0], dir[1]);
    if (n == 0.0) throw DomainError("heisenberg: direction has no horizontal heading");
    return {dir[0] / n, dir[1] / n, dir[2]};
}

double HeisenbergSpace::ray_horizon(const Point&, const Direction& dir) const {
    // Arcs stop minimising after one full turn of their projection.
    return dir[2] == 0.0 ? kInfinity : 2.0 * kPi / std::abs(dir[2]);
}

}  // namespace curvelab
