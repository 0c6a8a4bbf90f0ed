#pragma once

#include <cstdint>
#include <vector>

#include "qlearn/bits.hpp"
#include "qlearn/rational.hpp"

namespace qlearn {

// gamma-hat enumeration costs 2^|C| * N; classes above this size must use
// bound estimates instead of the exact brute force.
inline constexpr std::size_t kGammaEnumerationCap = 20;

// VC search enumerates shattered subsets of the domain; hard cap on 2^n.
inline constexpr std::size_t kVcDomainCap = 256;

// A Boolean function on {0,1}^n stored as its full truth table.
// table[i] is the value at the string whose big-endian index is i.
class Concept {
public:
    Concept(int n, std::vector<std::uint8_t> table);

    int n() const { return n_; }
    Index domain_size() const { return Index{1} << n_; }
    int operator()(Index x) const { return table_[x]; }
    const std::vector<std::uint8_t>& table() const { return table_; }

    Concept complement() const;

    friend bool operator==(const Concept& a, const Concept& b) {
        return a.n_ == b.n_ && a.table_ == b.table_;
    }

private:
    int n_;
    std::vector<std::uint8_t> table_;
};

// Duplicate-free, non-empty list of concepts over a common input length.
class ConceptClass {
public:
    ConceptClass(int n, std::vector<Concept> concepts);

    int n() const { return n_; }
    Index domain_size() const { return Index{1} << n_; }
    std::size_t size() const { return concepts_.size(); }
    const Concept& at(std::size_t i) const { return concepts_.at(i); }
    const std::vector<Concept>& concepts() const { return concepts_; }

    ConceptClass subset(const std::vector<std::size_t>& indices) const;

private:
    int n_;
    std::vector<Concept> concepts_;
};

// Outcome of the exact elimination-fraction minimization.
struct GammaStats {
    Rational gamma_hat;                      // in [1/|C|, 1/2]
    std::vector<std::size_t> witness_subset; // concept indices attaining the outer min
    Index witness_query;                     // query attaining the max for that subset
};

// Per-concept disagreement rows against the pointwise-majority concept.
struct DifferenceMatrix {
    std::vector<std::vector<std::uint8_t>> rows; // |C'| x 2^n
    Concept typical;

    // max column sum
    std::size_t l1_norm() const;
};

struct VcResult {
    int dimension;
    std::vector<Index> witness; // one maximum shattered set, sorted
};

// |{c in subset : c(a) = b}| / |subset|, exact.
Rational gamma_fraction(const ConceptClass& class_subset, Index a, int b);

// Brute force over all subsets of size >= 2. Ties between minimizing subsets
// are broken toward the lexicographically first index sequence, then the
// smallest query. Throws CapExceeded above max_class_size.
GammaStats gamma_hat(const ConceptClass& cls, std::size_t max_class_size = kGammaEnumerationCap);

// Pointwise majority vote; exact ties resolve to 0.
Concept typical_concept(const ConceptClass& class_subset);

DifferenceMatrix difference_matrix(const ConceptClass& class_subset);

// Number of distinct restrictions of class members to the given points.
std::size_t dichotomy_count(const ConceptClass& cls, std::vector<Index> points);

// Exact VC dimension with one maximum shattered set, found by enumerating
// shattered sets in increasing size (extensions of smaller shattered sets).
VcResult vc_dimension(const ConceptClass& cls);

// Built-in families.
ConceptClass parity_class(int n);             // c_a(x) = a.x mod 2, all 2^n of them
ConceptClass point_functions_plus_zero(int n); // the zero function plus all single-point indicators
ConceptClass all_functions(int n);            // every Boolean function, n <= 4
ConceptClass conjunctions(int n);             // all 3^n conjunctions of literals, n <= 8
ConceptClass from_tables(int n, const std::vector<std::vector<std::uint8_t>>& tables);

} // namespace qlearn
