#pragma once

#include <charconv>
#include <string>

namespace curvelab::detail {

// Shortest decimal string that round-trips to x.
inline std::string format_number(double x) {
    char buf[64];
    const auto result = std::to_chars(buf, buf + sizeof buf, x);
    return std::string(buf, result.ptr);
}

}  // namespace curvelab::detail
