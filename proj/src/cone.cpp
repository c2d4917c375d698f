#include <algorithm>
#include <cmath>
#include <numbers>

#include "curvelab/errors.hpp"
#include "curvelab/model_spaces.hpp"

namespace curvelab {

double cone_distance(double base_distance, double r, double s) {
    if (!(r >= 0.0) || !(s >= 0.0)) throw DomainError("cone radii must be nonnegative");
    if (!(base_distance >= 0.0)) throw DomainError("base distance must be nonnegative");
    const double half = 0.5 * std::min(std::numbers::pi, base_distance);
    const double h = std::sin(half);
    const double dr = r - s;
    // r^2 + s^2 - 2rs cos(a) rewritten without cancellation for nearby points.
    return std::sqrt(dr * dr + 4.0 * r * s * h * h);
}

ConeSpace::ConeSpace(SpacePtr base) : base_(std::move(base)) {
    if (!base_) throw DomainError("cone needs a base space");
    if (!base_->bounded()) throw DomainError("cone base must be bounded, got " + base_->spec());
    if (!base_->has_directions() || base_->direction_size() != base_->coordinate_count()) {
        throw DomainError("cone base needs direction descriptors shaped like its points");
    }
    base_diameter_ = base_->diameter();
}

std::string ConeSpace::spec() const { return "cone:" + base_->spec(); }

Point ConeSpace::base_part(const Point& p) const { return Point(p.begin(), p.end() - 1); }

Point ConeSpace::make_point(const Point& base_point, double r) const {
    Point p = r > 0.0 ? base_->canonical(base_point) : base_->origin();
    p.push_back(std::max(r, 0.0));
    return p;
}

void ConeSpace::validate(const Point& p) const {
    require_size(p, coordinate_count());
    if (p.back() < 0.0) throw DomainError("cone: radius coordinate must be nonnegative");
    base_->validate(base_part(p));
}

Point ConeSpace::canonical(const Point& p) const { return make_point(base_part(p), p.back()); }

Point ConeSpace::origin() const { return make_point(base_->origin(), 0.0); }

double ConeSpace::distance(const Point& p, const Point& q) const {
    validate(p);
    validate(q);
    const double r = p.back();
    const double s = q.back();
    if (r == 0.0 || s == 0.0) return std::abs(r - s);
    return cone_distance(base_->distance(base_part(p), base_part(q)), r, s);
}

GeodesicPath ConeSpace::geodesic(const Point& p, const Point& q) const {
    const double length = distance(p, q);
    if (length == 0.0) return GeodesicPath::constant(p);
    const double r = p.back();
    const double s = q.back();
    const Point x = base_part(p);
    const Point y = base_part(q);
    auto lift = [base = base_](const Point& b, double radius) {
        Point out = radius > 0.0 ? base->canonical(b) : base->origin();
        out.push_back(std::max(radius, 0.0));
        return out;
    };

    if (r == 0.0) {
        return GeodesicPath::analytic(p, q, length, [lift, y, s](double t) { return lift(y, t * s); });
    }
    if (s == 0.0) {
        return GeodesicPath::analytic(p, q, length, [lift, x, r](double t) { return lift(x, (1.0 - t) * r); });
    }
    const double delta = base_->distance(x, y);
    if (delta >= std::numbers::pi) {
        return GeodesicPath::analytic(p, q, length, [lift, x, y, r, s](double t) {
            const double u = t * (r + s);
            return u <= r ? lift(x, r - u) : lift(y, u - r);
        });
    }
    if (delta == 0.0) {
        return GeodesicPath::analytic(p, q, length, [lift, x, r, s](double t) { return lift(x, r + t * (s - r)); });
    }
    // Unroll the sector spanned by the two rays into the plane.
    const GeodesicPath base_path = base_->geodesic(x, y);
    const double qx = s * std::cos(delta);
    const double qy = s * std::sin(delta);
    return GeodesicPath::analytic(p, q, length, [lift, base_path, r, qx, qy, delta](double t) {
        const double wx = (1.0 - t) * r + t * qx;
        const double wy = t * qy;
        const double angle = std::atan2(wy, wx);
        return lift(base_path.at(std::clamp(angle / delta, 0.0, 1.0)), std::hypot(wx, wy));
    });
}

Point ConeSpace::chart_interpolate(const Point& p, const Point& q, double t) const {
    Point b = base_->chart_interpolate(base_part(p), base_part(q), t);
    b.push_back((1.0 - t) * p.back() + t * q.back());
    return retract(b);
}

Point ConeSpace::retract(const Point& p) const {
    Point b = base_->retract(base_part(p));
    b.push_back(std::max(0.0, p.back()));
    return b;
}

Point ConeSpace::propose(const Point& center, double radius, Rng& rng) const {
    const Point x = base_part(center);
    const double r0 = center.back();
    const double lo = std::max(0.0, r0 - radius);
    const double hi = r0 + radius;
    const double window = radius >= r0 ? base_diameter_ : std::asin(radius / r0);
    Point b = base_->propose(r0 > 0.0 ? x : base_->origin(), window, rng);
    // Radial density proportional to rho^(m-1), the cone volume element.
    const double m = static_cast<double>(base_->intrinsic_dimension() + 1);
    const double lo_m = std::pow(lo, m);
    const double hi_m = std::pow(hi, m);
    const double rho = std::pow(lo_m + rng.uniform() * (hi_m - lo_m), 1.0 / m);
    b.push_back(rho);
    return b;
}

std::size_t ConeSpace::direction_size() const { return 2 + base_->direction_size(); }

// Descriptor layout. Away from the apex: (c, s, base direction) where (c, s) is
// the unit velocity in the unrolled plane, c along the radial ray and s >= 0
// the angular part. At the apex: (1, 0, base point) naming the radial ray.
Direction ConeSpace::initial_direction(const Point& from, const Point& to) const {
    validate(from);
    validate(to);
    const double r = from.back();
    const double s = to.back();
    const Point x = base_part(from);
    const Point y = base_part(to);
    Direction dir{1.0, 0.0};
    if (r == 0.0) {
        const Point target = s > 0.0 ? base_->canonical(y) : base_->origin();
        dir.insert(dir.end(), target.begin(), target.end());
        return dir;
    }
    const Direction base_dir = base_->initial_direction(x, y);
    const double delta = s == 0.0 ? std::numbers::pi : base_->distance(x, y);
    if (delta >= std::numbers::pi || delta == 0.0) {
        dir[0] = (delta == 0.0 && s >= r) ? 1.0 : -1.0;
    } else {
        const double vx = s * std::cos(delta) - r;
        const double vy = s * std::sin(delta);
        const double n = std::hypot(vx, vy);
        dir[0] = vx / n;
        dir[1] = vy / n;
    }
    dir.insert(dir.end(), base_dir.begin(), base_dir.end());
    return dir;
}

Point ConeSpace::shoot(const Point& base, const Direction& dir, double t) const {
    const double r = base.back();
    const Point tail(dir.begin() + 2, dir.end());
    if (r == 0.0) return make_point(tail, t);
    const Point x = base_part(base);
    const double wx = r + t * dir[0];
    const double wy = t * dir[1];
    if (dir[1] <= 0.0) {
        if (wx < 0.0) throw DomainError("cone: radial ray continues past the apex");
        return make_point(x, wx);
    }
    const double angle = std::atan2(wy, wx);
    return make_point(base_->shoot(x, tail, angle), std::hypot(wx, wy));
}

Direction ConeSpace::reverse_direction(const Point& base, const Direction& dir) const {
    if (base.back() == 0.0) throw DomainError("cone: rays from the apex have no reverse");
    Direction out{-dir[0], dir[1]};
    const Point tail(dir.begin() + 2, dir.end());
    const Direction base_dir = dir[1] > 0.0 ? base_->reverse_direction(base_part(base), tail) : tail;
    out.insert(out.end(), base_dir.begin(), base_dir.end());
    return out;
}

Direction ConeSpace::normalize_direction(const Point& base, const Direction& dir) const {
    if (dir.size() != direction_size()) throw DomainError("cone: direction has wrong size");
    const Point tail(dir.begin() + 2, dir.end());
    if (base.back() == 0.0) {
        Direction out{1.0, 0.0};
        const Point target = base_->canonical(base_->retract(tail));
        out.insert(out.end(), target.begin(), target.end());
        return out;
    }
    double c = dir[0];
    double s = dir[1];
    Direction base_dir = tail;
    if (s < 0.0) {
        s = -s;
        base_dir = base_->reverse_direction(base_part(base), base_dir);
    }
    const double n = std::hypot(c, s);
    if (n == 0.0) throw DomainError("cone: zero direction");
    c /= n;
    s /= n;
    if (s > 0.0) base_dir = base_->normalize_direction(base_part(base), base_dir);
    Direction out{c, s};
    out.insert(out.end(), base_dir.begin(), base_dir.end());
    return out;
}

double ConeSpace::ray_horizon(const Point& base, const Direction& dir) const {
    const double r = base.back();
    if (r == 0.0) return kInfinity;
    if (dir[1] <= 0.0) return dir[0] >= 0.0 ? kInfinity : r;
    // The unrolled ray sweeps the angle psi; it stays minimising while the
    // swept angle does not exceed the base diameter (capped at pi).
    const double psi = std::atan2(dir[1], dir[0]);
    const double cap = std::min(std::numbers::pi, base_diameter_);
    if (psi <= cap) return kInfinity;
    return r * std::sin(cap) / std::sin(psi - cap);
}

}  // namespace curvelab
