#include "curvelab/sampling.hpp"

#include <cmath>
#include <sstream>

#include "curvelab/errors.hpp"

namespace curvelab {

double Rng::uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

double Rng::uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

double Rng::normal() {
    if (has_spare_) {
        has_spare_ = false;
        return spare_;
    }
    constexpr double two_pi = 6.283185307179586476925;
    const double u1 = 1.0 - uniform();  // (0, 1]
    const double u2 = uniform();
    const double radius = std::sqrt(-2.0 * std::log(u1));
    spare_ = radius * std::sin(two_pi * u2);
    has_spare_ = true;
    return radius * std::cos(two_pi * u2);
}

std::size_t Rng::index(std::size_t n) {
    const auto i = static_cast<std::size_t>(uniform() * static_cast<double>(n));
    return i < n ? i : n - 1;
}

namespace {

std::uint64_t splitmix(std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
}

}  // namespace

std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream) {
    return splitmix(seed ^ splitmix(stream + 0x632BE59BD9B4E019ULL));
}

Region SamplerConfig::region(const Space& space) const {
    return Region{center ? *center : space.origin(), radius};
}

std::vector<Point> sample_region(const Space& space, const Point& center, double radius,
                                 std::size_t n, std::uint64_t seed) {
    if (!(radius > 0.0)) throw DomainError("sample_region needs radius > 0");
    space.validate(center);
    Rng rng(seed);
    std::vector<Point> out;
    out.reserve(n);
    std::size_t attempts = 0;
    while (out.size() < n) {
        ++attempts;
        Point candidate = space.propose(center, radius, rng);
        bool inside = false;
        try {
            space.validate(candidate);
            inside = space.distance(center, candidate) <= radius;
        } catch (const DomainError&) {
            inside = false;
        }
        if (inside) out.push_back(space.canonical(candidate));
        if (attempts >= 100 && static_cast<double>(out.size()) < 0.01 * static_cast<double>(attempts)) {
            std::ostringstream msg;
            msg << space.spec() << ": proposal chart accepts " << out.size() << " of " << attempts
                << " candidates for radius " << radius;
            throw SamplingError(msg.str());
        }
    }
    return out;
}

std::vector<Point> sample_region(const Space& space, const Region& region, std::size_t n,
                                 std::uint64_t seed) {
    return sample_region(space, region.center, region.radius, n, seed);
}

}  // namespace curvelab
