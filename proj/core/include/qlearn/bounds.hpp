#pragma once

#include <complex>
#include <cstdint>
#include <optional>
#include <set>
#include <vector>

#include "qlearn/classical.hpp"
#include "qlearn/concepts.hpp"
#include "qlearn/quantum.hpp"
#include "qlearn/rational.hpp"

namespace qlearn::bounds {

// Real multilinear polynomial in num_vars 0/1 variables; coefficient of the
// monomial prod_{i in S} X_i sits at index S (variable i = bit i).
struct MultilinearPolynomial {
    int num_vars;
    std::vector<double> coef; // size 2^num_vars

    double evaluate(std::uint32_t assignment) const;
    double max_abs_coef_above_degree(int degree) const;
    int degree(double tol = 1e-9) const;
};

// Interpolates Pr[final observation lands in outcome_set | oracle table X]
// over all 2^(2^n) oracles by Moebius inversion over the subset lattice.
// Exact for any network; degree is at most twice the query count.
// Cap: 2^n <= 8.
MultilinearPolynomial acceptance_polynomial(const quantum::QueryNetwork& net,
                                            const std::set<std::uint64_t>& outcome_set, int n);

// L[i][j] = Pr[decoder declares concept i | oracle is concept j].
struct SuccessMatrix {
    std::vector<std::vector<double>> p;

    // row i of the transpose dominates: p[i][i] > sum_{j != i} p[j][i]
    bool transpose_diagonally_dominant() const;
};

SuccessMatrix success_matrix(const quantum::QueryNetwork& net, const ConceptClass& cls);

struct GershgorinDisk {
    double center;
    double radius;
};

struct DominanceReport {
    bool diagonally_dominant;
    bool full_rank;
    int rank;
    std::vector<GershgorinDisk> disks;
    std::vector<std::complex<double>> eigenvalues;
    double max_disk_violation; // largest eigenvalue distance outside the disk union
};

// Gershgorin disks, numerical eigenvalues, dominance flag, and rank by
// partially pivoted elimination (pivot threshold 1e-9). Size cap 64.
// Throws std::logic_error if a dominant matrix comes out rank deficient or
// an eigenvalue escapes the disk union by more than 1e-6.
DominanceReport diagonal_dominance_full_rank(const std::vector<std::vector<double>>& a);

struct Codebook {
    int d;                                // string length
    int min_distance_required;            // ceil(d/4)
    std::vector<std::uint32_t> codewords; // greedy, lexicographic
    double sphere_covering_lower;         // 2^d / V(d, dist-1)
    double entropy_lower;                 // 2^(d (1 - H(1/4)))
    double size_floor;                    // 2^floor(d/6)
};

// Greedy scan keeping every string at distance >= ceil(d/4) from all kept
// strings. d <= 24.
Codebook gv_codebook(int d);

int min_pairwise_distance(const Codebook& book);

// in bits; H(0) = H(1) = 0
double binary_entropy(double p);

// Every bound of the theory for one class, with the explicit constants from
// the proofs rather than asymptotic forms.
struct BoundReport {
    Rational gamma;
    std::size_t class_size;
    int vc_dim;

    double classical_similarity_lower; // 1/(2 gamma) - 1
    double classical_size_lower;       // log2|C| - 1
    double classical_exact_upper;      // ceil(log2|C| / -log2(1 - gamma))
    int classical_pac_lower;           // d
    std::optional<int> classical_pac_upper; // sample size m(eps, delta, d)

    double quantum_similarity_lower; // (1/64) sqrt(1/gamma)
    double quantum_size_lower;       // log2|C| / (2n)
    double quantum_pac_lower;        // d / (12 n)
};

BoundReport bound_report(const ConceptClass& cls,
                         const std::optional<classical::PacParams>& params = std::nullopt);

} // namespace qlearn::bounds
