#pragma once

#include <bit>
#include <cstdint>
#include <string>
#include <string_view>

#include "qcc/errors.hpp"

namespace qcc {

// Bit strings are stored as unsigned integers, most significant bit first:
// character i of "0010" is bit (n - 1 - i) of the integer.

inline unsigned bit_at(std::uint64_t x, unsigned i, unsigned n) {
    return static_cast<unsigned>((x >> (n - 1 - i)) & 1u);
}

inline std::uint64_t parse_bits(std::string_view s) {
    if (s.empty() || s.size() > 64) throw ArgumentError("bit string must have 1..64 characters");
    std::uint64_t v = 0;
    for (char c : s) {
        if (c != '0' && c != '1') throw ArgumentError("bit string may only contain 0 and 1");
        v = (v << 1) | static_cast<std::uint64_t>(c - '0');
    }
    return v;
}

inline std::string format_bits(std::uint64_t x, unsigned n) {
    std::string s(n, '0');
    for (unsigned i = 0; i < n; ++i)
        if (bit_at(x, i, n)) s[i] = '1';
    return s;
}

inline unsigned popcount(std::uint64_t x) { return static_cast<unsigned>(std::popcount(x)); }

/// Smallest k with 2^k >= v (0 for v <= 1).
inline unsigned ceil_log2(std::uint64_t v) {
    unsigned k = 0;
    while ((std::uint64_t{1} << k) < v) ++k;
    return k;
}

}  // namespace qcc
