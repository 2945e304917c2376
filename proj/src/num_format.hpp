#pragma once

#include <charconv>
#include <string>

namespace p2g::detail {

// Shortest round-trip decimal form; keeps CSV goldens byte-stable.
inline std::string format_double(double value) {
    char buffer[32];
    auto [ptr, ec] = std::to_chars(buffer, buffer + sizeof(buffer), value);
    return std::string(buffer, ptr);
}

}  // namespace p2g::detail
