// textio.hpp
// Locale-independent number formatting for CSV/table output.

#pragma once

#include <charconv>
#include <string>

namespace qkd {

/// Shortest round-trip representation (full precision, JSON-style).
inline std::string format_full(double x) {
    char buf[32];
    const auto res = std::to_chars(buf, buf + sizeof(buf), x);
    return std::string(buf, res.ptr);
}

/// General format with `sig` significant digits; decimal dot, no locale.
inline std::string format_sig(double x, int sig = 6) {
    char buf[40];
    const auto res = std::to_chars(buf, buf + sizeof(buf), x,
                                   std::chars_format::general, sig);
    return std::string(buf, res.ptr);
}

}  // namespace qkd
