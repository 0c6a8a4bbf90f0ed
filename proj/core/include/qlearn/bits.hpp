#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace qlearn {

// Index of an n-bit string under the global big-endian convention: the
// string x_1 x_2 ... x_n has index sum x_j * 2^(n-j), so index order equals
// lexicographic order of the strings.
using Index = std::uint32_t;

inline std::string format_bits(Index x, int n) {
    std::string s(static_cast<std::size_t>(n), '0');
    for (int j = 0; j < n; ++j) {
        if ((x >> (n - 1 - j)) & 1u) s[static_cast<std::size_t>(j)] = '1';
    }
    return s;
}

inline Index parse_bits(const std::string& s, int n) {
    if (static_cast<int>(s.size()) != n)
        throw std::invalid_argument("bit string has length " + std::to_string(s.size()) +
                                    ", expected " + std::to_string(n));
    Index x = 0;
    for (char ch : s) {
        if (ch != '0' && ch != '1') throw std::invalid_argument("bit string has non-binary character");
        x = (x << 1) | static_cast<Index>(ch == '1');
    }
    return x;
}

} // namespace qlearn
