#include "qlearn/concepts.hpp"

#include <algorithm>
#include <bit>
#include <set>
#include <stdexcept>
#include <string>

#include "qlearn/errors.hpp"

namespace qlearn {

namespace {

constexpr int kMaxInputLength = 16; // 2^16-entry tables; classical-side memory limit

void check_input_length(int n, int cap, const char* what) {
    if (n < 1) throw std::invalid_argument(std::string(what) + ": n must be positive");
    if (n > cap)
        throw CapExceeded(std::string(what) + ": n = " + std::to_string(n) +
                          " exceeds cap " + std::to_string(cap));
}

} // namespace

Concept::Concept(int n, std::vector<std::uint8_t> table) : n_(n), table_(std::move(table)) {
    check_input_length(n, kMaxInputLength, "Concept");
    if (table_.size() != (std::size_t{1} << n_))
        throw std::invalid_argument("Concept: table length " + std::to_string(table_.size()) +
                                    " is not 2^" + std::to_string(n_));
    for (auto v : table_)
        if (v > 1) throw std::invalid_argument("Concept: table entries must be 0 or 1");
}

Concept Concept::complement() const {
    std::vector<std::uint8_t> t(table_);
    for (auto& v : t) v ^= 1u;
    return Concept(n_, std::move(t));
}

ConceptClass::ConceptClass(int n, std::vector<Concept> concepts)
    : n_(n), concepts_(std::move(concepts)) {
    check_input_length(n, kMaxInputLength, "ConceptClass");
    if (concepts_.empty()) throw std::invalid_argument("ConceptClass: empty concept list");
    std::set<std::vector<std::uint8_t>> seen;
    for (const auto& c : concepts_) {
        if (c.n() != n_) throw std::invalid_argument("ConceptClass: mixed input lengths");
        if (!seen.insert(c.table()).second)
            throw std::invalid_argument("ConceptClass: duplicate concept table");
    }
}

ConceptClass ConceptClass::subset(const std::vector<std::size_t>& indices) const {
    std::vector<Concept> picked;
    picked.reserve(indices.size());
    for (auto i : indices) picked.push_back(concepts_.at(i));
    return ConceptClass(n_, std::move(picked));
}

std::size_t DifferenceMatrix::l1_norm() const {
    if (rows.empty()) return 0;
    std::size_t best = 0;
    const std::size_t cols = rows.front().size();
    for (std::size_t x = 0; x < cols; ++x) {
        std::size_t sum = 0;
        for (const auto& row : rows) sum += row[x];
        best = std::max(best, sum);
    }
    return best;
}

Rational gamma_fraction(const ConceptClass& class_subset, Index a, int b) {
    if (a >= class_subset.domain_size())
        throw std::invalid_argument("gamma_fraction: query index out of range");
    if (b != 0 && b != 1) throw std::invalid_argument("gamma_fraction: label must be 0 or 1");
    std::int64_t hits = 0;
    for (const auto& c : class_subset.concepts())
        if (c(a) == b) ++hits;
    return Rational(hits, static_cast<std::int64_t>(class_subset.size()));
}

namespace {

// lexicographic order on subsets viewed as increasing index sequences:
// {0} < {0,1} < {0,2} < {1} < {1,2} < {2}
bool subset_lex_less(std::uint32_t a, std::uint32_t b) {
    while (a != 0 && b != 0) {
        const int la = std::countr_zero(a);
        const int lb = std::countr_zero(b);
        if (la != lb) return la < lb;
        a &= a - 1;
        b &= b - 1;
    }
    return a == 0 && b != 0;
}

} // namespace

GammaStats gamma_hat(const ConceptClass& cls, std::size_t max_class_size) {
    const std::size_t k = cls.size();
    if (k < 2) throw std::invalid_argument("gamma_hat: needs at least 2 concepts");
    if (k > max_class_size)
        throw CapExceeded("gamma_hat: |C| = " + std::to_string(k) + " exceeds enumeration cap " +
                          std::to_string(max_class_size) + "; use a bound estimate instead");

    const Index domain = cls.domain_size();
    // mask_one[a]: bit i set iff concept i outputs 1 on query a
    std::vector<std::uint32_t> mask_one(domain, 0);
    for (Index a = 0; a < domain; ++a)
        for (std::size_t i = 0; i < k; ++i)
            if (cls.at(i)(a)) mask_one[a] |= (std::uint32_t{1} << i);

    bool have_best = false;
    Rational best_gamma;
    std::uint32_t best_mask = 0;
    Index best_query = 0;

    const std::uint32_t subset_count = std::uint32_t{1} << k;
    for (std::uint32_t sub = 3; sub < subset_count; ++sub) {
        const int size = std::popcount(sub);
        if (size < 2) continue;
        // gamma for this subset: max over queries of the smaller label count
        int max_min = 0;
        Index arg_query = 0;
        for (Index a = 0; a < domain; ++a) {
            const int ones = std::popcount(sub & mask_one[a]);
            const int m = std::min(ones, size - ones);
            if (m > max_min) {
                max_min = m;
                arg_query = a;
            }
        }
        const Rational gamma(max_min, size);
        if (!have_best || gamma < best_gamma ||
            (gamma == best_gamma && subset_lex_less(sub, best_mask))) {
            have_best = true;
            best_gamma = gamma;
            best_mask = sub;
            best_query = arg_query;
        }
    }

    GammaStats stats;
    stats.gamma_hat = best_gamma;
    stats.witness_query = best_query;
    for (std::size_t i = 0; i < k; ++i)
        if (best_mask & (std::uint32_t{1} << i)) stats.witness_subset.push_back(i);
    return stats;
}

Concept typical_concept(const ConceptClass& class_subset) {
    const Index domain = class_subset.domain_size();
    const std::size_t size = class_subset.size();
    std::vector<std::uint8_t> table(domain, 0);
    for (Index a = 0; a < domain; ++a) {
        std::size_t ones = 0;
        for (const auto& c : class_subset.concepts()) ones += static_cast<std::size_t>(c(a));
        table[a] = static_cast<std::uint8_t>(2 * ones > size ? 1 : 0);
    }
    return Concept(class_subset.n(), std::move(table));
}

DifferenceMatrix difference_matrix(const ConceptClass& class_subset) {
    Concept typical = typical_concept(class_subset);
    const Index domain = class_subset.domain_size();
    DifferenceMatrix dm{{}, typical};
    dm.rows.reserve(class_subset.size());
    for (const auto& c : class_subset.concepts()) {
        std::vector<std::uint8_t> row(domain, 0);
        for (Index x = 0; x < domain; ++x)
            row[x] = static_cast<std::uint8_t>(c(x) != typical(x));
        dm.rows.push_back(std::move(row));
    }
    return dm;
}

std::size_t dichotomy_count(const ConceptClass& cls, std::vector<Index> points) {
    for (Index x : points)
        if (x >= cls.domain_size())
            throw std::invalid_argument("dichotomy_count: point out of domain");
    std::sort(points.begin(), points.end());
    points.erase(std::unique(points.begin(), points.end()), points.end());
    if (points.empty()) return 1;

    std::vector<std::vector<std::uint8_t>> patterns;
    patterns.reserve(cls.size());
    for (const auto& c : cls.concepts()) {
        std::vector<std::uint8_t> pat(points.size());
        for (std::size_t j = 0; j < points.size(); ++j)
            pat[j] = static_cast<std::uint8_t>(c(points[j]));
        patterns.push_back(std::move(pat));
    }
    std::sort(patterns.begin(), patterns.end());
    patterns.erase(std::unique(patterns.begin(), patterns.end()), patterns.end());
    return patterns.size();
}

namespace {

// restriction pattern of every concept to the points, packed into 64 bits
// (shattered sets never exceed log2|C| <= 64 points)
std::size_t packed_dichotomy_count(const ConceptClass& cls, const std::vector<Index>& points,
                                   std::vector<std::uint64_t>& scratch) {
    scratch.clear();
    for (const auto& c : cls.concepts()) {
        std::uint64_t pat = 0;
        for (std::size_t j = 0; j < points.size(); ++j)
            pat |= static_cast<std::uint64_t>(c(points[j])) << j;
        scratch.push_back(pat);
    }
    std::sort(scratch.begin(), scratch.end());
    return static_cast<std::size_t>(std::unique(scratch.begin(), scratch.end()) - scratch.begin());
}

} // namespace

VcResult vc_dimension(const ConceptClass& cls) {
    const Index domain = cls.domain_size();
    if (domain > kVcDomainCap)
        throw CapExceeded("vc_dimension: domain size " + std::to_string(domain) +
                          " exceeds cap " + std::to_string(kVcDomainCap));

    // d <= log2 |C|
    int size_bound = 0;
    while ((std::size_t{1} << (size_bound + 1)) <= cls.size()) ++size_bound;

    std::vector<std::uint64_t> scratch;
    std::vector<std::vector<Index>> frontier = {{}}; // shattered sets of the current size
    VcResult result{0, {}};

    while (result.dimension < size_bound) {
        std::vector<std::vector<Index>> next;
        for (const auto& s : frontier) {
            const Index start = s.empty() ? 0 : s.back() + 1;
            for (Index x = start; x < domain; ++x) {
                std::vector<Index> extended(s);
                extended.push_back(x);
                if (packed_dichotomy_count(cls, extended, scratch) ==
                    (std::size_t{1} << extended.size()))
                    next.push_back(std::move(extended));
            }
        }
        if (next.empty()) break;
        result.dimension += 1;
        result.witness = next.front();
        frontier = std::move(next);
    }
    return result;
}

ConceptClass parity_class(int n) {
    check_input_length(n, 12, "parity_class");
    const Index domain = Index{1} << n;
    std::vector<Concept> concepts;
    concepts.reserve(domain);
    for (Index a = 0; a < domain; ++a) {
        std::vector<std::uint8_t> table(domain);
        for (Index x = 0; x < domain; ++x)
            table[x] = static_cast<std::uint8_t>(std::popcount(a & x) & 1);
        concepts.emplace_back(n, std::move(table));
    }
    return ConceptClass(n, std::move(concepts));
}

ConceptClass point_functions_plus_zero(int n) {
    check_input_length(n, 12, "point_functions_plus_zero");
    const Index domain = Index{1} << n;
    std::vector<Concept> concepts;
    concepts.reserve(domain + 1);
    concepts.emplace_back(n, std::vector<std::uint8_t>(domain, 0));
    for (Index p = 0; p < domain; ++p) {
        std::vector<std::uint8_t> table(domain, 0);
        table[p] = 1;
        concepts.emplace_back(n, std::move(table));
    }
    return ConceptClass(n, std::move(concepts));
}

ConceptClass all_functions(int n) {
    check_input_length(n, 4, "all_functions");
    const Index domain = Index{1} << n;
    const std::uint64_t count = std::uint64_t{1} << domain;
    std::vector<Concept> concepts;
    concepts.reserve(count);
    for (std::uint64_t f = 0; f < count; ++f) {
        std::vector<std::uint8_t> table(domain);
        for (Index x = 0; x < domain; ++x)
            table[x] = static_cast<std::uint8_t>((f >> x) & 1);
        concepts.emplace_back(n, std::move(table));
    }
    return ConceptClass(n, std::move(concepts));
}

ConceptClass conjunctions(int n) {
    check_input_length(n, 8, "conjunctions");
    const Index domain = Index{1} << n;
    std::uint64_t count = 1;
    for (int i = 0; i < n; ++i) count *= 3;

    std::vector<Concept> concepts;
    concepts.reserve(count);
    // per variable: 0 = absent, 1 = positive literal, 2 = negative literal
    std::vector<int> state(n, 0);
    for (std::uint64_t it = 0; it < count; ++it) {
        std::vector<std::uint8_t> table(domain, 1);
        for (Index x = 0; x < domain; ++x) {
            for (int j = 0; j < n; ++j) {
                const int bit = (x >> (n - 1 - j)) & 1;
                if ((state[j] == 1 && bit == 0) || (state[j] == 2 && bit == 1)) {
                    table[x] = 0;
                    break;
                }
            }
        }
        concepts.emplace_back(n, std::move(table));
        for (int j = n - 1; j >= 0; --j) {
            if (++state[j] < 3) break;
            state[j] = 0;
        }
    }
    return ConceptClass(n, std::move(concepts));
}

ConceptClass from_tables(int n, const std::vector<std::vector<std::uint8_t>>& tables) {
    std::vector<Concept> concepts;
    concepts.reserve(tables.size());
    for (const auto& t : tables) concepts.emplace_back(n, t);
    return ConceptClass(n, std::move(concepts));
}

} // namespace qlearn
