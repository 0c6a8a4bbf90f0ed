#include "qlearn/bounds.hpp"

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

#include "qlearn/errors.hpp"

namespace qlearn::bounds {

double MultilinearPolynomial::evaluate(std::uint32_t assignment) const {
    double v = 0.0;
    for (std::uint32_t s = 0; s < coef.size(); ++s)
        if ((s & assignment) == s) v += coef[s];
    return v;
}

double MultilinearPolynomial::max_abs_coef_above_degree(int degree) const {
    double worst = 0.0;
    for (std::uint32_t s = 0; s < coef.size(); ++s)
        if (std::popcount(s) > degree) worst = std::max(worst, std::abs(coef[s]));
    return worst;
}

int MultilinearPolynomial::degree(double tol) const {
    int deg = 0;
    for (std::uint32_t s = 0; s < coef.size(); ++s)
        if (std::abs(coef[s]) > tol) deg = std::max(deg, std::popcount(s));
    return deg;
}

MultilinearPolynomial acceptance_polynomial(const quantum::QueryNetwork& net,
                                            const std::set<std::uint64_t>& outcome_set, int n) {
    if (net.uses_example_oracle())
        throw std::invalid_argument("acceptance_polynomial: membership-query networks only");
    if (n != net.n())
        throw std::invalid_argument("acceptance_polynomial: n differs from the network");
    const Index domain = Index{1} << n;
    if (domain > 8)
        throw CapExceeded("acceptance_polynomial: 2^n = " + std::to_string(domain) +
                          " oracle variables exceeds cap 8");
    for (std::uint64_t z : outcome_set)
        if (z >= (std::uint64_t{1} << net.m()))
            throw std::invalid_argument("acceptance_polynomial: outcome basis string out of range");

    // one simulation per oracle table
    const std::uint32_t oracle_count = std::uint32_t{1} << domain;
    std::vector<double> value(oracle_count, 0.0);
    for (std::uint32_t table_bits = 0; table_bits < oracle_count; ++table_bits) {
        std::vector<std::uint8_t> table(domain);
        for (Index x = 0; x < domain; ++x)
            table[x] = static_cast<std::uint8_t>((table_bits >> x) & 1);
        const Concept oracle(n, std::move(table));
        const auto trace = quantum::run_network(net, oracle);
        double p = 0.0;
        for (std::uint64_t z : outcome_set) p += std::norm(trace.final_state.amplitudes()[z]);
        value[table_bits] = p;
    }

    // Moebius inversion over the subset lattice: coef[S] = sum_{R subset S}
    // (-1)^{|S \ R|} value[R], computed coordinatewise.
    MultilinearPolynomial poly{static_cast<int>(domain), std::move(value)};
    for (Index x = 0; x < domain; ++x) {
        const std::uint32_t bit = std::uint32_t{1} << x;
        for (std::uint32_t s = 0; s < poly.coef.size(); ++s)
            if (s & bit) poly.coef[s] -= poly.coef[s ^ bit];
    }
    return poly;
}

bool SuccessMatrix::transpose_diagonally_dominant() const {
    const std::size_t k = p.size();
    for (std::size_t i = 0; i < k; ++i) {
        double off = 0.0;
        for (std::size_t j = 0; j < k; ++j)
            if (j != i) off += std::abs(p[j][i]);
        if (!(std::abs(p[i][i]) > off)) return false;
    }
    return true;
}

SuccessMatrix success_matrix(const quantum::QueryNetwork& net, const ConceptClass& cls) {
    if (net.n() != cls.n())
        throw std::invalid_argument("success_matrix: network and class input lengths differ");
    const std::size_t k = cls.size();
    SuccessMatrix sm;
    sm.p.assign(k, std::vector<double>(k, 0.0));
    for (std::size_t j = 0; j < k; ++j) {
        const auto trace = quantum::run_network(net, cls.at(j));
        const auto marginal =
            quantum::measure_distribution(trace.final_state, net.decode().measured_qubits);
        for (const auto& [outcome, table] : net.decode().outcomes) {
            for (std::size_t i = 0; i < k; ++i) {
                if (table == cls.at(i).table()) {
                    sm.p[i][j] += marginal.probabilities[outcome];
                    break; // class tables are unique
                }
            }
        }
    }
    return sm;
}

DominanceReport diagonal_dominance_full_rank(const std::vector<std::vector<double>>& a) {
    const std::size_t k = a.size();
    if (k == 0) throw std::invalid_argument("diagonal_dominance_full_rank: empty matrix");
    if (k > 64) throw CapExceeded("diagonal_dominance_full_rank: size capped at 64");
    for (const auto& row : a)
        if (row.size() != k)
            throw std::invalid_argument("diagonal_dominance_full_rank: matrix is not square");

    DominanceReport report;
    report.diagonally_dominant = true;
    report.disks.reserve(k);
    for (std::size_t i = 0; i < k; ++i) {
        double radius = 0.0;
        for (std::size_t j = 0; j < k; ++j)
            if (j != i) radius += std::abs(a[i][j]);
        report.disks.push_back({a[i][i], radius});
        if (!(std::abs(a[i][i]) > radius)) report.diagonally_dominant = false;
    }

    // rank by partially pivoted elimination
    std::vector<std::vector<double>> work(a);
    constexpr double pivot_threshold = 1e-9;
    int rank = 0;
    std::size_t row = 0;
    for (std::size_t col = 0; col < k && row < k; ++col) {
        std::size_t pivot = row;
        for (std::size_t r = row + 1; r < k; ++r)
            if (std::abs(work[r][col]) > std::abs(work[pivot][col])) pivot = r;
        if (std::abs(work[pivot][col]) <= pivot_threshold) continue;
        std::swap(work[pivot], work[row]);
        for (std::size_t r = row + 1; r < k; ++r) {
            const double f = work[r][col] / work[row][col];
            for (std::size_t c = col; c < k; ++c) work[r][c] -= f * work[row][c];
        }
        ++rank;
        ++row;
    }
    report.rank = rank;
    report.full_rank = (static_cast<std::size_t>(rank) == k);

    Eigen::MatrixXd mat(k, k);
    for (std::size_t i = 0; i < k; ++i)
        for (std::size_t j = 0; j < k; ++j) mat(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = a[i][j];
    const Eigen::EigenSolver<Eigen::MatrixXd> solver(mat, /*computeEigenvectors=*/false);
    report.max_disk_violation = 0.0;
    for (Eigen::Index e = 0; e < solver.eigenvalues().size(); ++e) {
        const std::complex<double> lambda = solver.eigenvalues()[e];
        report.eigenvalues.push_back(lambda);
        double nearest = std::numeric_limits<double>::infinity();
        for (const auto& disk : report.disks)
            nearest = std::min(nearest,
                               std::abs(lambda - std::complex<double>(disk.center, 0.0)) - disk.radius);
        report.max_disk_violation = std::max(report.max_disk_violation, std::max(0.0, nearest));
    }

    if (report.max_disk_violation > 1e-6)
        throw std::logic_error("eigenvalue escaped the Gershgorin disk union");
    if (report.diagonally_dominant && !report.full_rank)
        throw std::logic_error("diagonally dominant matrix reported rank deficient");
    return report;
}

namespace {

// number of d-bit strings within Hamming distance <= radius of a fixed string
double hamming_ball_volume(int d, int radius) {
    double v = 0.0;
    double binom = 1.0;
    for (int i = 0; i <= radius; ++i) {
        v += binom;
        binom = binom * (d - i) / (i + 1);
    }
    return v;
}

std::vector<std::uint32_t> ball_offsets(int d, int radius) {
    std::vector<std::uint32_t> offsets;
    const std::uint32_t space = std::uint32_t{1} << d;
    for (std::uint32_t delta = 0; delta < space; ++delta)
        if (std::popcount(delta) <= radius) offsets.push_back(delta);
    return offsets;
}

} // namespace

Codebook gv_codebook(int d) {
    if (d < 1) throw std::invalid_argument("gv_codebook: d must be positive");
    if (d > 24) throw CapExceeded("gv_codebook: d capped at 24");

    Codebook book;
    book.d = d;
    book.min_distance_required = (d + 3) / 4;

    // Greedy lexicographic scan. Equivalent to checking each candidate
    // against all kept words, but realized by excluding the radius-(dist-1)
    // ball around every kept word.
    const int radius = book.min_distance_required - 1;
    const auto offsets = ball_offsets(d, radius);
    const std::uint32_t space = std::uint32_t{1} << d;
    std::vector<bool> excluded(space, false);
    for (std::uint32_t s = 0; s < space; ++s) {
        if (excluded[s]) continue;
        book.codewords.push_back(s);
        for (std::uint32_t delta : offsets) excluded[s ^ delta] = true;
    }

    const double volume = hamming_ball_volume(d, radius);
    book.sphere_covering_lower = std::pow(2.0, d) / volume;
    book.entropy_lower = std::pow(2.0, d * (1.0 - binary_entropy(0.25)));
    book.size_floor = std::pow(2.0, d / 6);

    if (static_cast<double>(book.codewords.size()) + 1e-9 < book.sphere_covering_lower)
        throw std::logic_error("gv_codebook: greedy undercut the sphere-covering bound");
    if (!(book.sphere_covering_lower >= book.entropy_lower && book.entropy_lower > book.size_floor))
        throw std::logic_error("gv_codebook: counting chain failed numerically");
    return book;
}

int min_pairwise_distance(const Codebook& book) {
    if (book.codewords.size() < 2) return book.d;
    int best = book.d;
    for (std::size_t i = 0; i < book.codewords.size(); ++i)
        for (std::size_t j = i + 1; j < book.codewords.size(); ++j)
            best = std::min(best,
                            std::popcount(book.codewords[i] ^ book.codewords[j]));
    return best;
}

double binary_entropy(double p) {
    if (!(p >= 0.0 && p <= 1.0)) throw std::invalid_argument("binary_entropy: p outside [0,1]");
    if (p == 0.0 || p == 1.0) return 0.0;
    return -p * std::log2(p) - (1.0 - p) * std::log2(1.0 - p);
}

BoundReport bound_report(const ConceptClass& cls,
                         const std::optional<classical::PacParams>& params) {
    BoundReport report;
    const GammaStats stats = gamma_hat(cls);
    const VcResult vc = vc_dimension(cls);
    report.gamma = stats.gamma_hat;
    report.class_size = cls.size();
    report.vc_dim = vc.dimension;

    const double gamma = stats.gamma_hat.to_double();
    const double log_size = std::log2(static_cast<double>(cls.size()));
    const double n = cls.n();

    report.classical_similarity_lower = 1.0 / (2.0 * gamma) - 1.0;
    report.classical_size_lower = log_size - 1.0;
    // guard against float noise pushing an exact integer ratio over the ceil
    report.classical_exact_upper = std::ceil(log_size / -std::log2(1.0 - gamma) - 1e-9);
    report.classical_pac_lower = vc.dimension;
    if (params) report.classical_pac_upper = classical::pac_sample_size(*params, vc.dimension);

    report.quantum_similarity_lower = std::sqrt(1.0 / gamma) / 64.0;
    report.quantum_size_lower = log_size / (2.0 * n);
    report.quantum_pac_lower = vc.dimension / (12.0 * n);
    return report;
}

} // namespace qlearn::bounds
