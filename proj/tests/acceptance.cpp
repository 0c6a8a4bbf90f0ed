// Acceptance suite: one check per headline guarantee, each printed as a
// single pass/fail line. Exit status is the number of failing criteria.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numeric>
#include <set>
#include <string>
#include <vector>

#include "qlearn/bounds.hpp"
#include "qlearn/classical.hpp"
#include "qlearn/learners.hpp"
#include "qlearn/quantum.hpp"
#include "qlearn/verify.hpp"
#include "support/test_oracles.hpp"

using namespace qlearn;

namespace {

struct Criterion {
    int failures = 0;
    std::string first_failure;

    void require(bool ok, const std::string& what) {
        if (!ok) {
            ++failures;
            if (first_failure.empty()) first_failure = what;
        }
    }
};

constexpr std::uint64_t kSeed = 20240131;

using CriterionFn = std::function<void(Criterion&)>;

// 1. One query suffices for every parity target, with certainty.
void parity_tightness(Criterion& c) {
    for (int n = 1; n <= 6; ++n) {
        const auto net = learners::build_parity_learner(n);
        const auto cls = parity_class(n);
        const auto report = learners::certify_learner(net, cls);
        c.require(report.query_count == 1, "n=" + std::to_string(n) + ": query count != 1");
        c.require(report.min_success >= 1.0 - 1e-9,
                  "n=" + std::to_string(n) + ": success " + std::to_string(report.min_success));
        const double size_bound = std::log2(static_cast<double>(cls.size())) / (2.0 * n);
        c.require(std::abs(size_bound - 0.5) < 1e-12, "size bound is not 1/2");
        c.require(report.query_count >= size_bound, "one query fell below the size bound");
    }
}

// 2. Acceptance probabilities are low-degree multilinear polynomials.
void degree_bound(Criterion& c) {
    int built = 0;
    for (int trial = 0; built < 200; ++trial) {
        Rng rng(derive_seed(kSeed, 100000 + static_cast<std::uint64_t>(trial)));
        const int n = 1 + static_cast<int>(rng.below(2));
        const int m = n + 1 + static_cast<int>(rng.below(2));
        const int queries = static_cast<int>(rng.below(3));
        const auto net = verify::random_membership_network(rng, n, m, queries);
        std::set<std::uint64_t> outcomes;
        for (std::uint64_t z = 0; z < (std::uint64_t{1} << m); ++z)
            if (rng.next() & 1) outcomes.insert(z);
        const auto poly = bounds::acceptance_polynomial(net, outcomes, n);
        c.require(poly.max_abs_coef_above_degree(2 * queries) < 1e-7,
                  "coefficient above degree 2T at trial " + std::to_string(trial));

        const Index domain = Index{1} << n;
        for (std::uint32_t bits = 0; bits < (std::uint32_t{1} << domain); ++bits) {
            std::vector<std::uint8_t> table(domain);
            for (Index x = 0; x < domain; ++x)
                table[x] = static_cast<std::uint8_t>((bits >> x) & 1);
            const auto run = quantum::run_network(net, Concept(n, std::move(table)));
            double p = 0.0;
            for (auto z : outcomes) p += std::norm(run.final_state.amplitudes()[z]);
            c.require(std::abs(poly.evaluate(bits) - p) < 1e-9,
                      "interpolation residual at trial " + std::to_string(trial));
        }
        ++built;
    }
}

// 3. Overriding answers of low total query magnitude barely moves the state.
//    The stated form asserts displacement <= eps under budget eps^2/T. The
//    provable displacement bound at that budget is 2*eps and the factor two
//    is attained by phase kickback, so the stated form is expected to fail
//    on near-tight trials; both forms are scored and reported.
void hybrid_argument(Criterion& c) {
    const double eps = 0.1;
    int performed = 0;
    int over_stated = 0;
    double worst = 0.0;
    for (int trial = 0; performed < 100 && trial < 4000; ++trial) {
        Rng rng(derive_seed(kSeed, 200000 + static_cast<std::uint64_t>(trial)));
        const int n = 1 + static_cast<int>(rng.below(2));
        const int m = n + 1 + static_cast<int>(rng.below(2));
        const int queries = 1 + static_cast<int>(rng.below(3));
        const auto net = verify::random_membership_network(rng, n, m, queries, true);
        const Concept target = verify::random_concept(rng, n);
        const auto qm = quantum::query_magnitudes(net, target);
        const double budget = eps * eps / queries;

        std::vector<std::pair<double, std::pair<int, Index>>> cells;
        for (int t = 0; t < queries; ++t)
            for (Index x = 0; x < (Index{1} << n); ++x) cells.push_back({qm.q[t][x], {t, x}});
        std::sort(cells.begin(), cells.end(),
                  [](const auto& a, const auto& b) { return a.first < b.first; });
        quantum::OverrideTable table;
        double mass = 0.0;
        for (const auto& [q, key] : cells) {
            if (mass + q > budget) break;
            mass += q;
            table.answers[key] = 1 - target(key.second);
        }
        if (table.answers.empty()) continue; // this draw had no low-magnitude cell

        const auto plain = quantum::run_network(net, target);
        const auto modified = quantum::run_with_overrides(net, target, table);
        const double moved = quantum::euclidean_distance(plain.final_state, modified);
        c.require(mass <= budget + 1e-15, "override budget exceeded");
        c.require(moved <= 2.0 * eps + 1e-12,
                  "state moved " + std::to_string(moved) + " beyond the provable 2*eps");
        if (moved > eps) ++over_stated;
        worst = std::max(worst, moved);
        ++performed;
    }
    c.require(performed == 100, "only " + std::to_string(performed) + " override trials built");
    c.require(over_stated == 0, std::to_string(over_stated) +
                                    "/100 trials moved beyond the stated eps=0.1 (max " +
                                    std::to_string(worst) +
                                    "); the provable bound 2*eps held in all trials");

    // exact zero-displacement cases
    Rng rng(derive_seed(kSeed, 299999));
    const auto net = verify::random_membership_network(rng, 2, 4, 2);
    const Concept target = verify::random_concept(rng, 2);
    const auto plain = quantum::run_network(net, target);
    c.require(quantum::euclidean_distance(
                  plain.final_state, quantum::run_with_overrides(net, target, {})) == 0.0,
              "empty override set moved the state");
    quantum::OverrideTable agree;
    for (int t = 0; t < 2; ++t)
        for (Index x = 0; x < 4; ++x) agree.answers[{t, x}] = target(x);
    c.require(quantum::euclidean_distance(plain.final_state,
                                          quantum::run_with_overrides(net, target, agree)) == 0.0,
              "agreeing overrides moved the state");
}

// 4. Close states induce close measurement statistics, factor 4.
void measurement_distance(Criterion& c) {
    for (int trial = 0; trial < 1000; ++trial) {
        Rng rng(derive_seed(kSeed, 300000 + static_cast<std::uint64_t>(trial)));
        const int m = 2 + static_cast<int>(rng.below(3)); // up to 4 qubits
        const auto phi = verify::random_state(rng, m);
        const auto psi = verify::random_state(rng, m);
        const double dist = quantum::euclidean_distance(phi, psi);
        for (std::uint32_t mask = 1; mask < (std::uint32_t{1} << m); ++mask) {
            std::vector<int> qubits;
            for (int q = 0; q < m; ++q)
                if (mask & (std::uint32_t{1} << q)) qubits.push_back(q);
            const auto dp = quantum::measure_distribution(phi, qubits);
            const auto dq = quantum::measure_distribution(psi, qubits);
            c.require(quantum::total_variation(dp.probabilities, dq.probabilities) <=
                          4.0 * dist + 1e-12,
                      "total variation exceeded 4x Euclidean at trial " + std::to_string(trial));
        }
    }
}

// 5. Both adversaries force the argued number of queries.
void adversary_lower_bounds(Criterion& c) {
    for (const auto& [label, cls] : verify::built_in_small_classes()) {
        const GammaStats stats = gamma_hat(cls);
        const double similarity_bound = 1.0 / (2.0 * stats.gamma_hat.to_double()) - 1.0;
        const double size_bound = std::ceil(std::log2(static_cast<double>(cls.size()))) - 1.0;

        const auto pinned_after = [](const classical::MembershipOracle& oracle) {
            const auto& history = oracle.live_history();
            for (std::size_t i = 0; i < history.size(); ++i)
                if (history[i] < 2) return i + 1;
            return history.size() + 1;
        };

        {
            auto oracle = classical::MembershipOracle::majority_adversary(cls);
            classical::greedy_exact_learner(cls, oracle);
            c.require(static_cast<double>(pinned_after(oracle)) >= size_bound,
                      label + ": greedy beat the majority adversary too quickly");
        }
        {
            auto oracle = classical::MembershipOracle::similarity_adversary(
                cls.subset(stats.witness_subset));
            classical::greedy_exact_learner(cls, oracle);
            c.require(static_cast<double>(pinned_after(oracle)) >= similarity_bound,
                      label + ": greedy beat the similarity adversary too quickly");
        }
        for (int strategy = 0; strategy < 100; ++strategy) {
            Rng rng(derive_seed(kSeed, 400000 + 1000 * static_cast<std::uint64_t>(strategy) +
                                          cls.size()));
            const auto run_random = [&](classical::MembershipOracle oracle, double bound,
                                        const char* kind) {
                std::vector<Index> order(cls.domain_size());
                std::iota(order.begin(), order.end(), 0);
                while (oracle.live_size() >= 2) {
                    for (std::size_t i = order.size(); i > 1; --i)
                        std::swap(order[i - 1], order[rng.below(i)]);
                    for (Index a : order) {
                        oracle.answer(a);
                        if (oracle.live_size() < 2) break;
                    }
                }
                c.require(static_cast<double>(pinned_after(oracle)) >= bound,
                          label + ": random strategy beat the " + kind + " adversary");
            };
            run_random(classical::MembershipOracle::majority_adversary(cls), size_bound,
                       "majority");
            run_random(classical::MembershipOracle::similarity_adversary(
                           cls.subset(stats.witness_subset)),
                       similarity_bound, "similarity");
        }
    }
}

// 6. The greedy learner is exact within the claimed query budget.
void greedy_upper_bound(Criterion& c) {
    for (const auto& [label, cls] : verify::built_in_small_classes()) {
        const auto report = bounds::bound_report(cls);
        for (const auto& target : cls.concepts()) {
            auto oracle = classical::MembershipOracle::honest(target);
            const auto run = classical::greedy_exact_learner(cls, oracle);
            c.require(run.hypothesis == target, label + ": greedy output differs from the target");
            c.require(static_cast<double>(run.queries) <= report.classical_exact_upper,
                      label + ": " + std::to_string(run.queries) + " queries above the bound");
        }
    }
}

// 7. The elimination-fraction statistic matches an independent oracle.
void gamma_oracle_equivalence(Criterion& c) {
    {
        const auto cls = point_functions_plus_zero(2);
        const auto stats = gamma_hat(cls);
        c.require(stats.gamma_hat == Rational(1, 5), "zero-plus-points statistic is not 1/5");
        const auto expected = oracles::gamma_hat_by_enumeration(cls);
        c.require(oracles::fraction_equal(
                      {stats.gamma_hat.numerator(), stats.gamma_hat.denominator()}, expected),
                  "implementation disagrees with the enumeration oracle");
    }
    // several two-concept classes, all 1/2
    const auto parities = parity_class(3);
    for (std::size_t i = 1; i < parities.size(); ++i) {
        const ConceptClass pair(3, {parities.at(0), parities.at(i)});
        const auto stats = gamma_hat(pair);
        c.require(stats.gamma_hat == Rational(1, 2), "two-concept statistic is not 1/2");
        const auto expected = oracles::gamma_hat_by_enumeration(pair);
        c.require(oracles::fraction_equal(
                      {stats.gamma_hat.numerator(), stats.gamma_hat.denominator()}, expected),
                  "two-concept case disagrees with the enumeration oracle");
    }
    for (const auto& [label, cls] : verify::built_in_small_classes()) {
        if (cls.size() > 17) continue; // keep the oracle side quick
        const auto stats = gamma_hat(cls);
        const auto expected = oracles::gamma_hat_by_enumeration(cls);
        c.require(oracles::fraction_equal(
                      {stats.gamma_hat.numerator(), stats.gamma_hat.denominator()}, expected),
                  label + ": implementation disagrees with the enumeration oracle");
    }
}

// 8. Both PAC learners meet the epsilon/delta contract on seeded trials.
void pac_guarantee(Criterion& c) {
    const classical::PacParams params(0.1, 0.1);
    const int trials = 200;
    const std::vector<std::pair<std::string, ConceptClass>> classes = {
        {"points_plus_zero n=2", point_functions_plus_zero(2)},
        {"parity n=3", parity_class(3)},
    };
    for (const auto& [label, cls] : classes) {
        const std::vector<std::pair<std::string, Distribution>> dists = {
            {"uniform", Distribution::uniform(cls.n())},
            {"hard", classical::hard_pac_distribution(cls)},
        };
        for (const auto& [dist_label, dist] : dists) {
            int classical_ok = 0;
            int sampled_ok = 0;
            for (int trial = 0; trial < trials; ++trial) {
                const Concept& target = cls.at(static_cast<std::size_t>(trial) % cls.size());
                classical::ExampleOracle oracle(
                    target, dist,
                    derive_seed(kSeed, 500000 + static_cast<std::uint64_t>(trial)));
                const Concept h = classical::pac_consistent_learner(cls, oracle, params);
                if (classical::empirical_error(h, target, dist) <= params.epsilon) ++classical_ok;

                Rng rng(derive_seed(kSeed, 600000 + static_cast<std::uint64_t>(trial)));
                const Concept hq = learners::qex_sampling_learner(cls, target, dist, params, rng);
                if (classical::empirical_error(hq, target, dist) <= params.epsilon) ++sampled_ok;
            }
            const int needed = static_cast<int>(std::ceil((1.0 - params.delta) * trials));
            c.require(classical_ok >= needed, label + "/" + dist_label + ": classical learner " +
                                                  std::to_string(classical_ok) + "/200");
            c.require(sampled_ok >= needed, label + "/" + dist_label + ": sampling learner " +
                                                std::to_string(sampled_ok) + "/200");
        }
    }
}

// 9. Dominant matrices: contained spectra, full rank; certified learner
//    matrices dominate on the transpose.
void dominance_and_disks(Criterion& c) {
    for (int trial = 0; trial < 500; ++trial) {
        Rng rng(derive_seed(kSeed, 700000 + static_cast<std::uint64_t>(trial)));
        const auto matrix = verify::random_dominant_matrix(rng, 2 + rng.below(15));
        const auto report = bounds::diagonal_dominance_full_rank(matrix);
        c.require(report.diagonally_dominant, "random matrix lost dominance");
        c.require(report.full_rank, "dominant matrix not full rank");
        c.require(report.max_disk_violation <= 1e-6, "eigenvalue escaped the disk union");
    }
    for (int n = 2; n <= 3; ++n) {
        const auto sm =
            bounds::success_matrix(learners::build_parity_learner(n), parity_class(n));
        c.require(sm.transpose_diagonally_dominant(),
                  "certified parity learner matrix is not dominant on the transpose");
    }
}

// 10. Greedy codebooks meet the distance and size floors; the counting
//     chain clears 1/6.
void codebook_floors(Criterion& c) {
    for (int d = 1; d <= 24; ++d) {
        const auto book = bounds::gv_codebook(d);
        c.require(bounds::min_pairwise_distance(book) >= (d + 3) / 4,
                  "d=" + std::to_string(d) + ": distance floor violated");
        c.require(static_cast<double>(book.codewords.size()) >= book.size_floor,
                  "d=" + std::to_string(d) + ": size floor violated");
    }
    const double h = bounds::binary_entropy(0.25);
    c.require(std::abs(h - 0.811278) < 1e-6, "H(1/4) off from 0.811278");
    c.require(std::round((1.0 - h) * 1e6) / 1e6 > std::round((1.0 / 6.0) * 1e6) / 1e6,
              "1 - H(1/4) does not clear 1/6 at six decimals");
}

// 11. No shipped learner undercuts an applicable lower bound.
void bound_consistency(Criterion& c) {
    for (const auto& [label, cls] : verify::built_in_small_classes()) {
        const auto report = bounds::bound_report(cls);
        std::size_t worst = 0;
        for (const auto& target : cls.concepts()) {
            auto oracle = classical::MembershipOracle::honest(target);
            worst = std::max(worst, classical::greedy_exact_learner(cls, oracle).queries);
        }
        c.require(static_cast<double>(worst) >= report.classical_similarity_lower,
                  label + ": greedy undercut the similarity bound");
        c.require(static_cast<double>(worst) >= report.classical_size_lower,
                  label + ": greedy undercut the size bound");
    }
    for (int n = 1; n <= 4; ++n) {
        const auto cls = parity_class(n);
        const auto cert = learners::certify_learner(learners::build_parity_learner(n), cls);
        const auto report = bounds::bound_report(cls);
        c.require(cert.pass, "parity learner failed certification");
        c.require(cert.query_count >= report.quantum_similarity_lower,
                  "parity learner undercut the quantum similarity bound");
        c.require(cert.query_count >= report.quantum_size_lower,
                  "parity learner undercut the quantum size bound");
    }
    const classical::PacParams params(0.1, 0.1);
    for (const auto& cls : {point_functions_plus_zero(2), parity_class(3)}) {
        const auto report = bounds::bound_report(cls, params);
        c.require(static_cast<double>(*report.classical_pac_upper) >= report.classical_pac_lower,
                  "PAC sample size undercut the VC bound");
        c.require(static_cast<double>(*report.classical_pac_upper) >= report.quantum_pac_lower,
                  "PAC sample size undercut the quantum VC bound");
    }
}

} // namespace

int main() {
    struct Entry {
        const char* label;
        CriterionFn fn;
        double time_limit_seconds; // 0 = untimed
    };
    const std::vector<Entry> entries = {
        {"1. parity tightness: certainty from a single query", parity_tightness, 10.0},
        {"2. degree bound: acceptance polynomials have degree <= 2T", degree_bound, 60.0},
        {"3. hybrid argument: low-magnitude overrides move the state <= 0.1", hybrid_argument, 0.0},
        {"4. measurement distance: TV <= 4 x Euclidean on all small subsets", measurement_distance,
         0.0},
        {"5. adversary lower bounds: both adversaries force the argued queries",
         adversary_lower_bounds, 0.0},
        {"6. greedy upper bound: exact hypotheses within the query budget", greedy_upper_bound,
         0.0},
        {"7. gamma oracle equivalence: brute force matches independent enumeration",
         gamma_oracle_equivalence, 0.0},
        {"8. PAC guarantee: error <= 0.1 in >= 90% of seeded trials", pac_guarantee, 60.0},
        {"9. dominance: full rank and contained spectra", dominance_and_disks, 0.0},
        {"10. codebooks: distance and size floors for every length", codebook_floors, 0.0},
        {"11. bound consistency: no learner undercuts an applicable bound", bound_consistency,
         0.0},
    };

    int failing_criteria = 0;
    for (const auto& entry : entries) {
        Criterion criterion;
        const auto start = std::chrono::steady_clock::now();
        entry.fn(criterion);
        const double elapsed =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        if (entry.time_limit_seconds > 0.0 && elapsed >= entry.time_limit_seconds)
            criterion.require(false, "runtime " + std::to_string(elapsed) + "s over budget");
        const bool ok = criterion.failures == 0;
        if (!ok) ++failing_criteria;
        std::printf("[%s] %s (%.2fs)%s%s\n", ok ? "PASS" : "FAIL", entry.label, elapsed,
                    ok ? "" : " -- ", ok ? "" : criterion.first_failure.c_str());
    }
    return failing_criteria;
}
