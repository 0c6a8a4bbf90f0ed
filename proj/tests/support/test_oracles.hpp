#pragma once

// Independent reference oracles for cross-checking the library's
// combinatorial routines. These deliberately share no code with the
// implementations they check: plain recursion, direct counting, and
// integer cross-multiplication instead of bitmask tricks and Rational.

#include <cstdint>
#include <set>
#include <utility>
#include <vector>

#include "qlearn/concepts.hpp"

namespace oracles {

struct Fraction {
    long long num;
    long long den;
};

inline bool fraction_less(const Fraction& a, const Fraction& b) {
    return a.num * b.den < b.num * a.den;
}

inline bool fraction_equal(const Fraction& a, const Fraction& b) {
    return a.num * b.den == b.num * a.den;
}

// max over queries of min over labels of the concept count, as a fraction of
// the subset size
inline Fraction subset_gamma(const qlearn::ConceptClass& cls, const std::vector<int>& members) {
    const auto domain = cls.domain_size();
    long long best = 0;
    for (qlearn::Index a = 0; a < domain; ++a) {
        long long ones = 0;
        for (int i : members) ones += cls.at(static_cast<std::size_t>(i))(a);
        const long long zeros = static_cast<long long>(members.size()) - ones;
        const long long smaller = ones < zeros ? ones : zeros;
        if (smaller > best) best = smaller;
    }
    return Fraction{best, static_cast<long long>(members.size())};
}

// minimum subset gamma over every subset with at least two members,
// enumerated by plain recursion
inline Fraction gamma_hat_by_enumeration(const qlearn::ConceptClass& cls) {
    Fraction best{1, 1};
    std::vector<int> members;
    const int k = static_cast<int>(cls.size());
    auto recurse = [&](auto&& self, int next) -> void {
        if (members.size() >= 2) {
            const Fraction g = subset_gamma(cls, members);
            if (fraction_less(g, best)) best = g;
        }
        for (int i = next; i < k; ++i) {
            members.push_back(i);
            self(self, i + 1);
            members.pop_back();
        }
    };
    recurse(recurse, 0);
    return best;
}

// number of distinct restrictions of the class to the given points
inline std::size_t restriction_count(const qlearn::ConceptClass& cls,
                                     const std::vector<qlearn::Index>& points) {
    std::set<std::vector<int>> patterns;
    for (const auto& c : cls.concepts()) {
        std::vector<int> pat;
        for (auto x : points) pat.push_back(c(x));
        patterns.insert(pat);
    }
    return patterns.size();
}

// exact VC dimension by checking every subset of the domain, largest first
// only in the sense of tracking the max; no pruning
inline int vc_by_full_enumeration(const qlearn::ConceptClass& cls) {
    const auto domain = cls.domain_size();
    int best = 0;
    for (std::uint32_t mask = 0; mask < (std::uint32_t{1} << domain); ++mask) {
        std::vector<qlearn::Index> points;
        for (qlearn::Index x = 0; x < domain; ++x)
            if (mask & (std::uint32_t{1} << x)) points.push_back(x);
        if (static_cast<int>(points.size()) <= best) continue;
        std::size_t want = std::size_t{1} << points.size();
        if (want > cls.size()) continue; // cannot shatter more points than log2|C|
        if (restriction_count(cls, points) == want) best = static_cast<int>(points.size());
    }
    return best;
}

// greedy codebook by the direct definition: scan lexicographically, keep a
// string iff it clears the distance floor against everything kept so far
inline std::vector<std::uint32_t> greedy_codebook_by_scan(int d, int min_distance) {
    std::vector<std::uint32_t> kept;
    for (std::uint32_t s = 0; s < (std::uint32_t{1} << d); ++s) {
        bool ok = true;
        for (std::uint32_t c : kept) {
            int dist = 0;
            std::uint32_t delta = s ^ c;
            while (delta) {
                delta &= delta - 1;
                ++dist;
            }
            if (dist < min_distance) {
                ok = false;
                break;
            }
        }
        if (ok) kept.push_back(s);
    }
    return kept;
}

} // namespace oracles
