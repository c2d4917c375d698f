#include <cmath>
#include <string_view>

#include "curvelab/errors.hpp"
#include "curvelab/model_spaces.hpp"

namespace curvelab {

namespace {

double parse_real(std::string_view text, std::string_view what) {
    const std::string s(text);
    try {
        std::size_t used = 0;
        const double value = std::stod(s, &used);
        if (used == s.size() && std::isfinite(value)) return value;
    } catch (const std::logic_error&) {
    }
    throw ParseError("bad " + std::string(what) + " '" + s + "'");
}

std::size_t parse_count(std::string_view text, std::string_view what) {
    const std::string s(text);
    try {
        std::size_t used = 0;
        const long value = std::stol(s, &used);
        if (used == s.size() && value > 0) return static_cast<std::size_t>(value);
    } catch (const std::logic_error&) {
    }
    throw ParseError("bad " + std::string(what) + " '" + s + "'");
}

// Split on `sep` outside square brackets.
std::vector<std::string> split_top_level(std::string_view text, char sep) {
    std::vector<std::string> parts;
    int depth = 0;
    std::string current;
    for (char c : text) {
        if (c == '[') ++depth;
        if (c == ']') --depth;
        if (depth < 0) throw ParseError("unbalanced brackets in '" + std::string(text) + "'");
        if (c == sep && depth == 0) {
            parts.push_back(current);
            current.clear();
        } else {
            current.push_back(c);
        }
    }
    if (depth != 0) throw ParseError("unbalanced brackets in '" + std::string(text) + "'");
    parts.push_back(current);
    return parts;
}

std::string strip_brackets(const std::string& s) {
    if (s.size() >= 2 && s.front() == '[' && s.back() == ']') return s.substr(1, s.size() - 2);
    return s;
}

std::pair<std::string_view, std::string_view> head_tail(std::string_view spec) {
    const auto colon = spec.find(':');
    if (colon == std::string_view::npos) return {spec, {}};
    return {spec.substr(0, colon), spec.substr(colon + 1)};
}

}  // namespace

SpacePtr make_space(const std::string& spec) {
    const auto [head, rest] = head_tail(spec);
    if (head == "euclidean") {
        return NormedSpace::euclidean(parse_count(rest, "dimension"));
    }
    if (head == "lp") {
        const auto [dim, exponent] = head_tail(rest);
        if (exponent.empty()) throw ParseError("lp spec is lp:<n>:<p>");
        return std::make_shared<NormedSpace>(parse_count(dim, "dimension"), parse_real(exponent, "exponent"));
    }
    if (head == "sphere") return std::make_shared<SphereSpace>(parse_real(rest, "sphere radius"));
    if (head == "circle") return std::make_shared<CircleSpace>(parse_real(rest, "circle length"));
    if (head == "cone") {
        if (rest.empty()) throw ParseError("cone spec is cone:<base spec>");
        return std::make_shared<ConeSpace>(make_space(std::string(rest)));
    }
    if (head == "scaled") {
        const auto [factor, inner] = head_tail(rest);
        if (inner.empty()) throw ParseError("scaled spec is scaled:<factor>:<spec>");
        return std::make_shared<ScaledSpace>(parse_real(factor, "scale factor"), make_space(std::string(inner)));
    }
    if (head == "product") {
        const auto [norm, list] = head_tail(rest);
        if (norm.size() < 2 || norm.front() != 'l' || list.empty()) {
            throw ParseError("product spec is product:l<q>:<spec>,<spec>");
        }
        std::vector<SpacePtr> factors;
        for (const auto& part : split_top_level(list, ',')) factors.push_back(make_space(strip_brackets(part)));
        return std::make_shared<ProductSpace>(std::move(factors), parse_real(norm.substr(1), "product exponent"));
    }
    if (head == "hilbert") {
        const auto [shape, params] = head_tail(rest);
        if (shape == "ellipse") {
            const auto [a, b] = head_tail(params);
            auto body = std::make_shared<EllipseBody>(parse_real(a, "semi-axis"), parse_real(b, "semi-axis"));
            return std::make_shared<HilbertSpace>(std::move(body), spec);
        }
        if (shape == "interval") {
            const auto [lo, hi] = head_tail(params);
            auto body = std::make_shared<IntervalBody>(parse_real(lo, "interval end"), parse_real(hi, "interval end"));
            return std::make_shared<HilbertSpace>(std::move(body), spec);
        }
        if (rest.empty()) throw ParseError("hilbert spec is hilbert:<polygon-file>");
        auto body = std::make_shared<PolygonBody>(PolygonBody::load(std::string(rest)));
        return std::make_shared<HilbertSpace>(std::move(body), spec);
    }
    if (head == "heisenberg" && rest.empty()) return std::make_shared<HeisenbergSpace>();
    throw ParseError("unknown space spec '" + spec + "'");
}

std::vector<SpaceKindInfo> space_registry() {
    return {
        {"euclidean:<n>", "Euclidean n-space"},
        {"lp:<n>:<p>", "l^p norm on R^n, p in (1, inf)"},
        {"sphere:<radius>", "round 2-sphere, points as unit vectors in R^3"},
        {"circle:<length>", "metric circle of the given total length"},
        {"cone:<base>", "Euclidean cone over a bounded base, e.g. cone:circle:5"},
        {"product:l<q>:<spec>,<spec>", "l^q product of factors; bracket nested products"},
        {"hilbert:<polygon-file>", "Hilbert geometry of a convex polygon (one 'x y' per line, CCW)"},
        {"hilbert:ellipse:<a>:<b>", "Hilbert geometry of an ellipse (Klein model)"},
        {"hilbert:interval:<lo>:<hi>", "Hilbert geometry of an interval"},
        {"heisenberg", "Heisenberg group with its Carnot-Caratheodory metric"},
        {"scaled:<factor>:<spec>", "metric multiplied by a positive factor"},
    };
}

}  // namespace curvelab
