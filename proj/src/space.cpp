#include "curvelab/space.hpp"

#include <cmath>
#include <sstream>

#include "curvelab/errors.hpp"
#include "curvelab/ray.hpp"

namespace curvelab {

void Space::require_size(const Point& p, std::size_t n) const {
    if (p.size() != n) {
        throw DomainError(kind() + ": expected " + std::to_string(n) + " coordinates, got " +
                          std::to_string(p.size()));
    }
    for (double c : p) {
        if (!std::isfinite(c)) throw DomainError(kind() + ": non-finite coordinate");
    }
}

void Space::validate(const Point& p) const { require_size(p, coordinate_count()); }

GeodesicPath Space::geodesic(const Point& p, const Point& q) const {
    return numeric_geodesic(*this, p, q);
}

Point Space::chart_interpolate(const Point& p, const Point& q, double t) const {
    Point m(p.size());
    for (std::size_t i = 0; i < p.size(); ++i) m[i] = (1.0 - t) * p[i] + t * q[i];
    return retract(m);
}

bool Space::bounded() const { return std::isfinite(diameter()); }

Direction Space::initial_direction(const Point&, const Point&) const {
    throw DomainError(kind() + ": no direction parametrisation");
}

Point Space::shoot(const Point&, const Direction&, double) const {
    throw DomainError(kind() + ": no direction parametrisation");
}

Direction Space::reverse_direction(const Point&, const Direction&) const {
    throw DomainError(kind() + ": no direction parametrisation");
}

Direction Space::normalize_direction(const Point&, const Direction& dir) const { return dir; }

double Space::ray_horizon(const Point&, const Direction&) const { return 0.0; }

// ---------------------------------------------------------------------------

Ray::Ray(const Space& space, Point base, Direction dir, double horizon)
    : space_(&space), base_(std::move(base)), dir_(std::move(dir)), horizon_(horizon) {
    space.validate(base_);
    if (!(horizon_ > 0.0)) throw DomainError("ray horizon must be positive");
    const double cap = space.ray_horizon(base_, dir_);
    if (horizon_ > cap * (1.0 + 1e-12)) {
        std::ostringstream msg;
        msg << space.kind() << ": ray horizon " << horizon_ << " exceeds the reliable range " << cap;
        throw DomainError(msg.str());
    }
}

Point Ray::at(double t) const {
    if (t < 0.0 || t > horizon_ * (1.0 + 1e-12)) {
        throw DomainError("ray parameter outside [0, horizon]");
    }
    if (t == 0.0) return base_;
    return space_->shoot(base_, dir_, t);
}

namespace {

std::string join_numbers(const std::vector<double>& v) {
    std::ostringstream out;
    out.precision(17);
    for (std::size_t i = 0; i < v.size(); ++i) out << (i ? "," : "") << v[i];
    return out.str();
}

std::vector<double> split_numbers(const std::string& s) {
    std::vector<double> out;
    std::stringstream in(s);
    std::string item;
    while (std::getline(in, item, ',')) {
        try {
            std::size_t used = 0;
            out.push_back(std::stod(item, &used));
            if (used != item.size()) throw ParseError("trailing characters in '" + item + "'");
        } catch (const std::logic_error&) {
            throw ParseError("bad number '" + item + "'");
        }
    }
    return out;
}

}  // namespace

std::string Ray::to_spec() const {
    std::ostringstream out;
    out.precision(17);
    out << join_numbers(base_) << '@' << join_numbers(dir_) << ':' << horizon_;
    return out.str();
}

Ray Ray::parse(const Space& space, const std::string& spec) {
    const auto at = spec.find('@');
    const auto colon = spec.rfind(':');
    if (at == std::string::npos || colon == std::string::npos || colon < at) {
        throw ParseError("ray spec must look like <coords>@<direction>:<horizon>");
    }
    Point base = split_numbers(spec.substr(0, at));
    Direction dir = split_numbers(spec.substr(at + 1, colon - at - 1));
    double horizon = 0.0;
    try {
        horizon = std::stod(spec.substr(colon + 1));
    } catch (const std::logic_error&) {
        throw ParseError("bad ray horizon in '" + spec + "'");
    }
    return Ray(space, std::move(base), space.normalize_direction(base, dir), horizon);
}

Line make_line(const Space& space, const Point& base, const Direction& dir, double horizon,
               double tol) {
    const Direction forward = space.normalize_direction(base, dir);
    Line line{Ray(space, base, forward, horizon),
              Ray(space, base, space.reverse_direction(base, forward), horizon)};
    verify_line(line, tol);
    return line;
}

void verify_line(const Line& line, double tol) {
    const Space& space = line.forward.space();
    const double horizon = line.horizon();
    const double fractions[] = {1e-3, 0.125, 0.5, 1.0};
    for (double a : fractions) {
        for (double b : fractions) {
            const double t = a * horizon;
            const double s = b * horizon;
            const double d = space.distance(line.backward.at(t), line.forward.at(s));
            if (std::abs(d - (t + s)) > tol * (t + s)) {
                std::ostringstream msg;
                msg.precision(12);
                msg << "glued curve is not a line: d(backward(" << t << "), forward(" << s
                    << ")) = " << d << " but expected " << t + s;
                throw NotALineError(msg.str());
            }
        }
    }
}

}  // namespace curvelab
