#include "qlearn/verify.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <functional>
#include <map>
#include <numeric>
#include <set>
#include <sstream>
#include <stdexcept>

#include "qlearn/bounds.hpp"
#include "qlearn/classical.hpp"
#include "qlearn/errors.hpp"
#include "qlearn/learners.hpp"

namespace qlearn::verify {

namespace {

struct Checker {
    int checks = 0;
    bool pass = true;
    std::string detail;

    void expect(bool ok, const std::string& what) {
        ++checks;
        if (!ok && pass) {
            pass = false;
            detail = what;
        }
    }
};

std::string fmt(double v) {
    std::ostringstream out;
    out.precision(10);
    out << v;
    return out.str();
}

// max over queries of the guaranteed elimination fraction, exact
Rational gamma_of_subset(const ConceptClass& subset) {
    Rational best(0, 1);
    for (Index a = 0; a < subset.domain_size(); ++a) {
        const Rational g1 = gamma_fraction(subset, a, 1);
        const Rational g0 = Rational(1, 1) - g1;
        const Rational m = g1 < g0 ? g1 : g0;
        if (m > best) best = m;
    }
    return best;
}

std::size_t queries_until_pinned(const std::vector<std::size_t>& history) {
    for (std::size_t i = 0; i < history.size(); ++i)
        if (history[i] < 2) return i + 1;
    return history.size() + 1; // never pinned within the run
}

} // namespace

std::vector<std::pair<std::string, ConceptClass>> built_in_small_classes() {
    std::vector<std::pair<std::string, ConceptClass>> out;
    for (int n = 1; n <= 4; ++n)
        out.emplace_back("parity n=" + std::to_string(n), parity_class(n));
    for (int n = 1; n <= 4; ++n)
        out.emplace_back("points_plus_zero n=" + std::to_string(n), point_functions_plus_zero(n));
    for (int n = 1; n <= 2; ++n)
        out.emplace_back("all n=" + std::to_string(n), all_functions(n));
    for (int n = 1; n <= 2; ++n)
        out.emplace_back("conjunctions n=" + std::to_string(n), conjunctions(n));
    return out;
}

Concept random_concept(Rng& rng, int n) {
    std::vector<std::uint8_t> table(std::size_t{1} << n);
    for (auto& v : table) v = static_cast<std::uint8_t>(rng.next() & 1);
    return Concept(n, std::move(table));
}

quantum::QuantumState random_state(Rng& rng, int m) {
    std::vector<quantum::Amplitude> amps(std::size_t{1} << m);
    double norm2 = 0.0;
    for (auto& a : amps) {
        a = quantum::Amplitude{rng.gaussian(), rng.gaussian()};
        norm2 += std::norm(a);
    }
    const double inv = 1.0 / std::sqrt(norm2);
    for (auto& a : amps) a *= inv;
    return quantum::QuantumState(m, std::move(amps));
}

quantum::QueryNetwork random_membership_network(Rng& rng, int n, int m, int queries,
                                                bool small_angles) {
    using quantum::GateOp;
    auto random_stage = [&](bool bias_small) {
        std::vector<GateOp> gates;
        if (bias_small) {
            // sprinkle near-identity amplitude rotations through the query
            // register so some strings end up with tiny magnitude
            for (int q = 0; q < n; ++q) {
                const double theta = 0.02 + 0.18 * rng.uniform01();
                gates.push_back({GateOp::Kind::H, q});
                gates.push_back({GateOp::Kind::Phase, q, 0, theta});
                gates.push_back({GateOp::Kind::H, q});
            }
        }
        const int count = 2 * m + static_cast<int>(rng.below(static_cast<std::uint64_t>(m) + 1));
        for (int i = 0; i < count; ++i) {
            const int kind = static_cast<int>(rng.below(5));
            const int q0 = static_cast<int>(rng.below(static_cast<std::uint64_t>(m)));
            switch (kind) {
            case 0: gates.push_back({GateOp::Kind::H, q0}); break;
            case 1: gates.push_back({GateOp::Kind::X, q0}); break;
            case 2: gates.push_back({GateOp::Kind::Z, q0}); break;
            case 3:
                gates.push_back({GateOp::Kind::Phase, q0, 0, 6.283185307179586 * rng.uniform01()});
                break;
            default: {
                int q1 = static_cast<int>(rng.below(static_cast<std::uint64_t>(m)));
                if (q1 == q0) q1 = (q1 + 1) % m;
                gates.push_back({GateOp::Kind::Cnot, q0, q1});
                break;
            }
            }
        }
        return gates;
    };

    std::vector<quantum::Stage> stages;
    stages.emplace_back(random_stage(small_angles));
    for (int t = 0; t < queries; ++t) {
        stages.emplace_back(quantum::MembershipSlot{});
        stages.emplace_back(random_stage(small_angles && t + 1 < queries));
    }
    quantum::Decoder decode;
    decode.measured_qubits.resize(static_cast<std::size_t>(m));
    std::iota(decode.measured_qubits.begin(), decode.measured_qubits.end(), 0);
    return quantum::QueryNetwork(m, n, std::move(stages), std::move(decode));
}

std::vector<std::vector<double>> random_dominant_matrix(Rng& rng, std::size_t size) {
    std::vector<std::vector<double>> a(size, std::vector<double>(size, 0.0));
    for (std::size_t i = 0; i < size; ++i) {
        double off = 0.0;
        for (std::size_t j = 0; j < size; ++j) {
            if (i == j) continue;
            a[i][j] = 2.0 * rng.uniform01() - 1.0;
            off += std::abs(a[i][j]);
        }
        const double sign = (rng.next() & 1) ? 1.0 : -1.0;
        a[i][i] = sign * (off + 0.1 + rng.uniform01());
    }
    return a;
}

namespace {

// ---------------------------------------------------------------- suites --

SuiteResult suite_gamma(std::uint64_t seed) {
    Checker ck;
    Rng rng(derive_seed(seed, 0x67616d6d61));

    for (const auto& [label, cls] : built_in_small_classes()) {
        const GammaStats stats = gamma_hat(cls);
        const Rational lower(1, static_cast<std::int64_t>(cls.size()));
        const Rational half(1, 2);
        ck.expect(stats.gamma_hat >= lower && stats.gamma_hat <= half,
                  label + ": gamma_hat " + stats.gamma_hat.to_string() + " outside [1/|C|, 1/2]");

        // every subset's gamma sits in [1/|C'|, 1/2] and above gamma_hat
        const std::size_t k = cls.size();
        std::vector<std::uint32_t> subsets;
        if (k <= 10) {
            for (std::uint32_t sub = 0; sub < (std::uint32_t{1} << k); ++sub)
                if (std::popcount(sub) >= 2) subsets.push_back(sub);
        } else {
            for (int i = 0; i < 200; ++i) {
                const auto sub = static_cast<std::uint32_t>(rng.next() & ((std::uint32_t{1} << k) - 1));
                if (std::popcount(sub) >= 2) subsets.push_back(sub);
            }
        }
        for (const auto sub : subsets) {
            std::vector<std::size_t> indices;
            for (std::size_t i = 0; i < k; ++i)
                if (sub & (std::uint32_t{1} << i)) indices.push_back(i);
            const ConceptClass sc = cls.subset(indices);
            const Rational g = gamma_of_subset(sc);
            ck.expect(g >= Rational(1, static_cast<std::int64_t>(sc.size())) && g <= half,
                      label + ": subset gamma outside [1/|C'|, 1/2]");
            ck.expect(g >= stats.gamma_hat, label + ": subset gamma below gamma_hat");
        }

        // witness difference matrix: L1 norm bounded by |C'| * gamma_hat
        const ConceptClass witness = cls.subset(stats.witness_subset);
        const DifferenceMatrix dm = difference_matrix(witness);
        const Rational l1(static_cast<std::int64_t>(dm.l1_norm()), 1);
        ck.expect(l1 <= stats.gamma_hat * Rational::from_int(static_cast<std::int64_t>(witness.size())),
                  label + ": difference-matrix L1 norm exceeds |C'| * gamma_hat");

        // invariant under a consistent relabeling of the domain
        std::vector<Index> perm(cls.domain_size());
        std::iota(perm.begin(), perm.end(), 0);
        for (std::size_t i = perm.size(); i > 1; --i)
            std::swap(perm[i - 1], perm[rng.below(i)]);
        std::vector<std::vector<std::uint8_t>> tables;
        for (const auto& c : cls.concepts()) {
            std::vector<std::uint8_t> t(c.table().size());
            for (Index x = 0; x < cls.domain_size(); ++x)
                t[perm[x]] = static_cast<std::uint8_t>(c(x));
            tables.push_back(std::move(t));
        }
        const GammaStats permuted = gamma_hat(from_tables(cls.n(), tables));
        ck.expect(permuted.gamma_hat == stats.gamma_hat,
                  label + ": gamma_hat changed under domain relabeling");
    }

    // pinned values
    ck.expect(gamma_hat(point_functions_plus_zero(2)).gamma_hat == Rational(1, 5),
              "points_plus_zero n=2: gamma_hat != 1/5");
    ck.expect(gamma_hat(all_functions(2)).gamma_hat == Rational(1, 5),
              "all n=2: gamma_hat != 1/5");
    const auto pair_cls = from_tables(2, {{0, 0, 0, 0}, {1, 0, 1, 1}});
    ck.expect(gamma_hat(pair_cls).gamma_hat == Rational(1, 2), "2-concept class: gamma_hat != 1/2");

    return {"gamma", ck.pass, ck.checks, ck.detail};
}

SuiteResult suite_vc(std::uint64_t seed) {
    Checker ck;
    (void)seed;
    for (int n = 1; n <= 4; ++n) {
        const ConceptClass cls = parity_class(n);
        ck.expect(cls.size() == (std::size_t{1} << n), "parity class size is not 2^n");
        ck.expect(vc_dimension(cls).dimension == n, "parity class VC dimension is not n");
    }
    for (const auto& [label, cls] : built_in_small_classes()) {
        const VcResult vc = vc_dimension(cls);
        ck.expect(dichotomy_count(cls, vc.witness) == (std::size_t{1} << vc.dimension),
                  label + ": reported witness set is not shattered");
        ck.expect((std::size_t{1} << vc.dimension) <= cls.size(),
                  label + ": 2^d exceeds |C|");
    }
    ck.expect(vc_dimension(point_functions_plus_zero(2)).dimension == 1,
              "points_plus_zero n=2: VC dimension != 1");
    ck.expect(vc_dimension(all_functions(2)).dimension == 4, "all n=2: VC dimension != 4");
    return {"vc", ck.pass, ck.checks, ck.detail};
}

SuiteResult suite_adversary(std::uint64_t seed) {
    Checker ck;
    const int random_strategies = 20;

    for (const auto& [label, cls] : built_in_small_classes()) {
        const GammaStats stats = gamma_hat(cls);
        const Rational similarity_bound =
            Rational(stats.gamma_hat.denominator(), 2 * stats.gamma_hat.numerator()) -
            Rational::from_int(1);
        const int size_bound =
            static_cast<int>(std::ceil(std::log2(static_cast<double>(cls.size())))) - 1;

        auto check_run = [&](classical::MembershipOracle& oracle, bool is_similarity,
                             const std::string& who) {
            const std::size_t pinned = queries_until_pinned(oracle.live_history());
            if (is_similarity)
                ck.expect(Rational::from_int(static_cast<std::int64_t>(pinned)) >= similarity_bound,
                          label + ": " + who + " pinned the similarity adversary in " +
                              std::to_string(pinned) + " < 1/(2 gamma) - 1 queries");
            else
                ck.expect(static_cast<int>(pinned) >= size_bound,
                          label + ": " + who + " pinned the majority adversary in " +
                              std::to_string(pinned) + " < ceil(log2|C|) - 1 queries");
        };

        // greedy learner against both adversaries
        {
            auto oracle = classical::MembershipOracle::majority_adversary(cls);
            classical::greedy_exact_learner(cls, oracle);
            check_run(oracle, false, "greedy");
            // per-answer halving bookkeeping
            std::size_t prev = cls.size();
            for (std::size_t sz : oracle.live_history()) {
                ck.expect(prev - sz <= prev / 2, label + ": majority answer eliminated over half");
                prev = sz;
            }
        }
        {
            auto oracle =
                classical::MembershipOracle::similarity_adversary(cls.subset(gamma_hat(cls).witness_subset));
            const std::size_t witness_size = oracle.live_size();
            classical::greedy_exact_learner(cls, oracle);
            check_run(oracle, true, "greedy");
            // each answer eliminates at most a gamma_hat fraction of the witness
            for (std::size_t i = 0; i < oracle.live_history().size(); ++i) {
                const std::size_t before = i == 0 ? witness_size : oracle.live_history()[i - 1];
                const std::size_t gone = before - oracle.live_history()[i];
                ck.expect(Rational(static_cast<std::int64_t>(gone),
                                   static_cast<std::int64_t>(witness_size)) <= stats.gamma_hat,
                          label + ": similarity answer eliminated more than gamma_hat fraction");
            }
        }

        // random query strategies (shuffled sweeps of the whole domain)
        for (int s = 0; s < random_strategies; ++s) {
            Rng rng(derive_seed(seed, 7000 + 100 * s + static_cast<std::uint64_t>(cls.size())));
            auto run_random = [&](classical::MembershipOracle oracle, bool is_similarity) {
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
                check_run(oracle, is_similarity, "random strategy");
            };
            run_random(classical::MembershipOracle::majority_adversary(cls), false);
            run_random(classical::MembershipOracle::similarity_adversary(
                           cls.subset(stats.witness_subset)),
                       true);
        }
    }

    // the majority bound needs no gamma statistic, so it extends to random
    // classes past the subset-enumeration cap (up to 64 concepts)
    for (const std::size_t size : {24, 40, 64}) {
        Rng rng(derive_seed(seed, 7900 + size));
        std::vector<std::vector<std::uint8_t>> tables;
        while (tables.size() < size) {
            std::vector<std::uint8_t> t(16);
            for (auto& v : t) v = static_cast<std::uint8_t>(rng.next() & 1);
            if (std::find(tables.begin(), tables.end(), t) == tables.end())
                tables.push_back(std::move(t));
        }
        const ConceptClass cls = from_tables(4, tables);
        const int size_bound =
            static_cast<int>(std::ceil(std::log2(static_cast<double>(cls.size())))) - 1;
        auto oracle = classical::MembershipOracle::majority_adversary(cls);
        classical::greedy_exact_learner(cls, oracle);
        ck.expect(static_cast<int>(queries_until_pinned(oracle.live_history())) >= size_bound,
                  "random class of " + std::to_string(size) +
                      ": greedy pinned the majority adversary too quickly");
        for (int s = 0; s < 5; ++s) {
            auto random_oracle = classical::MembershipOracle::majority_adversary(cls);
            std::vector<Index> order(cls.domain_size());
            std::iota(order.begin(), order.end(), 0);
            while (random_oracle.live_size() >= 2) {
                for (std::size_t i = order.size(); i > 1; --i)
                    std::swap(order[i - 1], order[rng.below(i)]);
                for (Index a : order) {
                    random_oracle.answer(a);
                    if (random_oracle.live_size() < 2) break;
                }
            }
            ck.expect(
                static_cast<int>(queries_until_pinned(random_oracle.live_history())) >= size_bound,
                "random class of " + std::to_string(size) +
                    ": random strategy pinned the majority adversary too quickly");
        }
    }
    return {"adversary", ck.pass, ck.checks, ck.detail};
}

SuiteResult suite_greedy(std::uint64_t seed) {
    Checker ck;
    (void)seed;
    for (const auto& [label, cls] : built_in_small_classes()) {
        const bounds::BoundReport report = bounds::bound_report(cls);
        std::size_t max_queries = 0;
        for (const auto& target : cls.concepts()) {
            auto oracle = classical::MembershipOracle::honest(target);
            const auto run = classical::greedy_exact_learner(cls, oracle);
            ck.expect(run.hypothesis == target, label + ": greedy hypothesis differs from target");
            ck.expect(static_cast<double>(run.queries) <= report.classical_exact_upper,
                      label + ": greedy used " + std::to_string(run.queries) +
                          " queries, above the upper bound " + fmt(report.classical_exact_upper));
            max_queries = std::max(max_queries, run.queries);
        }
        ck.expect(static_cast<double>(max_queries) + 1e-9 >= report.classical_similarity_lower,
                  label + ": greedy worst case beat the similarity lower bound");
        ck.expect(static_cast<double>(max_queries) + 1e-9 >= report.classical_size_lower,
                  label + ": greedy worst case beat the size lower bound");
    }
    return {"greedy", ck.pass, ck.checks, ck.detail};
}

SuiteResult suite_sampling(std::uint64_t seed) {
    Checker ck;
    const int draws = 10000;

    const auto check_frequencies = [&](const Distribution& dist,
                                       const std::function<classical::LabeledExample()>& draw,
                                       const Concept& target, const std::string& label) {
        std::vector<int> counts(dist.domain_size(), 0);
        for (int i = 0; i < draws; ++i) {
            const auto ex = draw();
            ck.expect(ex.label == target(ex.x), label + ": label disagrees with target");
            ++counts[ex.x];
        }
        for (Index x = 0; x < dist.domain_size(); ++x) {
            const double p = dist(x);
            if (p == 0.0 || p == 1.0) {
                ck.expect(counts[x] == (p == 1.0 ? draws : 0), label + ": impossible draw count");
                continue;
            }
            const double sigma = std::sqrt(p * (1.0 - p) / draws);
            const double freq = static_cast<double>(counts[x]) / draws;
            ck.expect(std::abs(freq - p) <= 4.0 * sigma,
                      label + ": frequency of " + format_bits(x, dist.n()) + " off by " +
                          fmt(std::abs(freq - p)) + " > 4 sigma");
        }
    };

    const Concept target = point_functions_plus_zero(2).at(1);
    const Distribution uniform = Distribution::uniform(2);
    const Distribution skewed(2, {0.7, 0.2, 0.1, 0.0});

    {
        classical::ExampleOracle oracle(target, uniform, derive_seed(seed, 1));
        check_frequencies(uniform, [&] { return oracle.draw(); }, target, "example oracle, uniform");
    }
    {
        classical::ExampleOracle oracle(target, skewed, derive_seed(seed, 2));
        check_frequencies(skewed, [&] { return oracle.draw(); }, target, "example oracle, skewed");
    }
    {
        Rng rng(derive_seed(seed, 3));
        check_frequencies(
            uniform, [&] { return learners::qex_draw_example(target, uniform, rng); }, target,
            "measured example state, uniform");
    }
    {
        Rng rng(derive_seed(seed, 4));
        check_frequencies(
            skewed, [&] { return learners::qex_draw_example(target, skewed, rng); }, target,
            "measured example state, skewed");
    }
    return {"sampling", ck.pass, ck.checks, ck.detail};
}

SuiteResult suite_unitarity(std::uint64_t seed) {
    Checker ck;
    // oracle application is an involution and preserves norm
    for (int trial = 0; trial < 100; ++trial) {
        Rng rng(derive_seed(seed, 100 + static_cast<std::uint64_t>(trial)));
        const int n = 1 + static_cast<int>(rng.below(3));
        const int m = n + 1 + static_cast<int>(rng.below(2));
        const Concept c = random_concept(rng, n);
        const quantum::QuantumState original = random_state(rng, m);
        quantum::QuantumState state = original;
        quantum::apply_membership_oracle(state, c);
        ck.expect(std::abs(state.norm() - 1.0) <= 1e-9, "oracle application changed the norm");
        quantum::apply_membership_oracle(state, c);
        ck.expect(quantum::euclidean_distance(state, original) <= 1e-9,
                  "applying the oracle twice did not restore the state");
    }
    // example states are unit norm with support only on <x, c(x)>
    for (int trial = 0; trial < 20; ++trial) {
        Rng rng(derive_seed(seed, 300 + static_cast<std::uint64_t>(trial)));
        const int n = 1 + static_cast<int>(rng.below(3));
        const Concept c = random_concept(rng, n);
        std::vector<double> w(std::size_t{1} << n);
        double sum = 0.0;
        for (auto& v : w) sum += (v = rng.uniform01());
        for (auto& v : w) v /= sum;
        // renormalize exactly enough for the 1e-12 gate
        double acc = 0.0;
        for (std::size_t i = 0; i + 1 < w.size(); ++i) acc += w[i];
        w.back() = 1.0 - acc;
        const Distribution dist(n, w);
        const auto state = quantum::prepare_qex(c, dist, n + 1);
        ck.expect(std::abs(state.norm() - 1.0) <= 1e-9, "example state is not unit norm");
        for (std::size_t i = 0; i < state.dimension(); ++i) {
            const Index x = static_cast<Index>(i >> 1);
            const int b = static_cast<int>(i & 1);
            const double p = std::norm(state.amplitudes()[i]);
            if (b != c(x))
                ck.expect(p == 0.0, "example state puts mass on a mislabeled pair");
            else
                ck.expect(std::abs(p - dist(x)) <= 1e-12, "example state mass differs from D(x)");
        }
    }
    // random networks end at unit norm
    for (int trial = 0; trial < 30; ++trial) {
        Rng rng(derive_seed(seed, 500 + static_cast<std::uint64_t>(trial)));
        const int n = 1 + static_cast<int>(rng.below(2));
        const int m = n + 1 + static_cast<int>(rng.below(2));
        const auto net = random_membership_network(rng, n, m, static_cast<int>(rng.below(3)));
        const Concept c = random_concept(rng, n);
        const auto trace = quantum::run_network(net, c);
        ck.expect(std::abs(trace.final_state.norm() - 1.0) <= 1e-9,
                  "network run drifted off unit norm");
    }
    return {"unitarity", ck.pass, ck.checks, ck.detail};
}

SuiteResult suite_distance(std::uint64_t seed) {
    Checker ck;
    const int pairs = 200;
    for (int trial = 0; trial < pairs; ++trial) {
        Rng rng(derive_seed(seed, 1000 + static_cast<std::uint64_t>(trial)));
        const int m = 2 + static_cast<int>(rng.below(3)); // 2..4 qubits
        const auto phi = random_state(rng, m);
        const auto psi = random_state(rng, m);
        const double dist = quantum::euclidean_distance(phi, psi);
        // every non-empty subset of at most 4 qubits
        for (std::uint32_t mask = 1; mask < (std::uint32_t{1} << m); ++mask) {
            std::vector<int> qubits;
            for (int q = 0; q < m; ++q)
                if (mask & (std::uint32_t{1} << q)) qubits.push_back(q);
            const auto dp = quantum::measure_distribution(phi, qubits);
            const auto dq = quantum::measure_distribution(psi, qubits);
            ck.expect(quantum::total_variation(dp.probabilities, dq.probabilities) <=
                          4.0 * dist + 1e-12,
                      "total variation exceeded 4x the Euclidean distance");
        }
    }
    return {"distance", ck.pass, ck.checks, ck.detail};
}

SuiteResult suite_hybrid(std::uint64_t seed) {
    Checker ck;
    const double eps = 0.1;
    const int trials = 30;
    for (int trial = 0; trial < trials; ++trial) {
        quantum::OverrideTable overrides;
        double mass = 0.0;
        int T = 0;
        std::uint64_t attempt_seed = derive_seed(seed, 2000 + static_cast<std::uint64_t>(trial));
        // resample until the magnitude budget admits a non-empty override set
        for (int attempt = 0; attempt < 64; ++attempt) {
            Rng rng(attempt_seed);
            const int n = 1 + static_cast<int>(rng.below(2));
            const int m = n + 1 + static_cast<int>(rng.below(2));
            T = 1 + static_cast<int>(rng.below(3));
            const auto net = random_membership_network(rng, n, m, T, true);
            const Concept c = random_concept(rng, n);
            const auto qm = quantum::query_magnitudes(net, c);
            const double budget = eps * eps / T;

            std::vector<std::pair<double, std::pair<int, Index>>> cells;
            for (int t = 0; t < T; ++t)
                for (Index x = 0; x < (Index{1} << n); ++x)
                    cells.push_back({qm.q[t][x], {t, x}});
            std::sort(cells.begin(), cells.end(),
                      [](const auto& a, const auto& b) { return a.first < b.first; });
            overrides.answers.clear();
            mass = 0.0;
            for (const auto& [q, key] : cells) {
                if (mass + q > budget) break;
                mass += q;
                overrides.answers[key] = 1 - c(key.second); // deliberately wrong answer
            }
            if (!overrides.answers.empty()) {
                ck.expect(mass <= budget + 1e-15, "override mass exceeded the budget");
                const auto plain = quantum::run_network(net, c);
                const auto modified = quantum::run_with_overrides(net, c, overrides);
                const double moved = quantum::euclidean_distance(plain.final_state, modified);
                // provable displacement bound: 2 sqrt(T * sum q) <= 2 eps
                // (each call contributes 2 sqrt(q), tight under phase kickback)
                ck.expect(moved <= 2.0 * eps + 1e-12,
                          "low-magnitude overrides displaced the state by " + fmt(moved));
                break;
            }
            attempt_seed = mix_seed(attempt_seed);
        }
        ck.expect(!overrides.answers.empty(), "could not build a non-empty override set");
    }

    // exact zero-displacement cases
    {
        Rng rng(derive_seed(seed, 2999));
        const auto net = random_membership_network(rng, 2, 3, 2, false);
        const Concept c = random_concept(rng, 2);
        const auto plain = quantum::run_network(net, c);
        const quantum::OverrideTable empty_table;
        ck.expect(quantum::euclidean_distance(plain.final_state,
                                              quantum::run_with_overrides(net, c, empty_table)) == 0.0,
                  "empty override set changed the final state");
        quantum::OverrideTable agreeing;
        for (int t = 0; t < 2; ++t)
            for (Index x = 0; x < 4; ++x) agreeing.answers[{t, x}] = c(x);
        ck.expect(quantum::euclidean_distance(plain.final_state,
                                              quantum::run_with_overrides(net, c, agreeing)) == 0.0,
                  "overrides agreeing with the oracle changed the final state");
    }
    return {"hybrid", ck.pass, ck.checks, ck.detail};
}

SuiteResult suite_magnitudes(std::uint64_t seed) {
    Checker ck;
    for (int trial = 0; trial < 20; ++trial) {
        Rng rng(derive_seed(seed, 4000 + static_cast<std::uint64_t>(trial)));
        const int n = 1 + static_cast<int>(rng.below(2));
        const int m = n + 1 + static_cast<int>(rng.below(2));
        const int T = 1 + static_cast<int>(rng.below(3));
        const auto net = random_membership_network(rng, n, m, T);
        const Concept c = random_concept(rng, n);
        const auto qm = quantum::query_magnitudes(net, c);
        ck.expect(static_cast<int>(qm.q.size()) == T, "per-call magnitude rows != T");
        for (const auto& row : qm.q) {
            double sum = 0.0;
            for (double v : row) sum += v;
            ck.expect(std::abs(sum - 1.0) <= 1e-9, "per-call magnitudes do not sum to 1");
        }
        ck.expect(std::abs(qm.total() - T) <= 1e-9, "total magnitude mass differs from T");
    }

    // displaced-concept counting: few concepts can be far from the typical one
    for (const int n : {2, 3}) {
        const ConceptClass cls = point_functions_plus_zero(n);
        const GammaStats stats = gamma_hat(cls);
        const Concept typical = typical_concept(cls);
        for (int trial = 0; trial < 6; ++trial) {
            Rng rng(derive_seed(seed, 5000 + 10 * static_cast<std::uint64_t>(trial) +
                                          static_cast<std::uint64_t>(n)));
            const int T = 1 + static_cast<int>(rng.below(2));
            const auto net = random_membership_network(rng, n, n + 1, T);
            const auto base = quantum::run_network(net, typical);
            const double eps = T == 1 ? 0.5 : 1.0;
            int displaced = 0;
            for (const auto& c : cls.concepts())
                if (quantum::euclidean_distance(base.final_state,
                                                quantum::run_network(net, c).final_state) > eps)
                    ++displaced;
            const double bound = T * T * static_cast<double>(cls.size()) *
                                 stats.gamma_hat.to_double() / (eps * eps);
            ck.expect(displaced <= bound + 1e-9,
                      "more concepts displaced beyond epsilon than the magnitude argument allows");

            // the accounting identity underneath: summing, over concepts, the
            // magnitude on strings where the concept differs from the typical
            // one is a difference-matrix product, bounded by T * |C'| * gamma
            const auto qm = quantum::query_magnitudes(net, typical);
            double total_distinguishing = 0.0;
            for (const auto& c : cls.concepts())
                for (int t = 0; t < T; ++t)
                    for (Index x = 0; x < cls.domain_size(); ++x)
                        if (c(x) != typical(x)) total_distinguishing += qm.q[t][x];
            const double mass_bound =
                T * static_cast<double>(cls.size()) * stats.gamma_hat.to_double();
            ck.expect(total_distinguishing <= mass_bound + 1e-9,
                      "total distinguishing magnitude exceeded T * |C'| * gamma");
        }
    }
    return {"magnitudes", ck.pass, ck.checks, ck.detail};
}

SuiteResult suite_parity(std::uint64_t seed) {
    Checker ck;
    (void)seed;
    for (int n = 1; n <= 6; ++n) {
        const auto net = learners::build_parity_learner(n);
        const auto report = learners::certify_learner(net, parity_class(n));
        ck.expect(report.query_count == 1, "parity learner uses more than one oracle call");
        ck.expect(report.min_success >= 1.0 - 1e-9,
                  "parity learner success below 1 at n=" + std::to_string(n));
        ck.expect(report.pass, "parity learner failed certification");
    }
    return {"parity", ck.pass, ck.checks, ck.detail};
}

SuiteResult suite_degree(std::uint64_t seed) {
    Checker ck;
    const int networks = 60;
    for (int trial = 0; trial < networks; ++trial) {
        Rng rng(derive_seed(seed, 6000 + static_cast<std::uint64_t>(trial)));
        const int n = 1 + static_cast<int>(rng.below(2));
        const int m = n + 1 + static_cast<int>(rng.below(2));
        const int T = static_cast<int>(rng.below(3));
        const auto net = random_membership_network(rng, n, m, T);
        std::set<std::uint64_t> outcomes;
        for (std::uint64_t z = 0; z < (std::uint64_t{1} << m); ++z)
            if (rng.next() & 1) outcomes.insert(z);
        const auto poly = bounds::acceptance_polynomial(net, outcomes, n);
        ck.expect(poly.max_abs_coef_above_degree(2 * T) < 1e-7,
                  "acceptance polynomial has a coefficient above degree 2T");
        // interpolation reproduces the simulated probabilities
        const Index domain = Index{1} << n;
        for (std::uint32_t bits = 0; bits < (std::uint32_t{1} << domain); ++bits) {
            std::vector<std::uint8_t> table(domain);
            for (Index x = 0; x < domain; ++x)
                table[x] = static_cast<std::uint8_t>((bits >> x) & 1);
            const Concept oracle(n, std::move(table));
            const auto run = quantum::run_network(net, oracle);
            double p = 0.0;
            for (std::uint64_t z : outcomes) p += std::norm(run.final_state.amplitudes()[z]);
            ck.expect(std::abs(poly.evaluate(bits) - p) < 1e-9,
                      "interpolated polynomial misses the simulated probability");
        }
    }
    return {"degree", ck.pass, ck.checks, ck.detail};
}

SuiteResult suite_dominance(std::uint64_t seed) {
    Checker ck;
    for (int trial = 0; trial < 100; ++trial) {
        Rng rng(derive_seed(seed, 8000 + static_cast<std::uint64_t>(trial)));
        const std::size_t size = 2 + rng.below(15);
        const auto matrix = random_dominant_matrix(rng, size);
        const auto report = bounds::diagonal_dominance_full_rank(matrix);
        ck.expect(report.diagonally_dominant, "random dominant matrix not flagged dominant");
        ck.expect(report.full_rank, "random dominant matrix not full rank");
        ck.expect(report.max_disk_violation <= 1e-6, "eigenvalue escaped the disk union");
    }
    {
        const auto id = bounds::diagonal_dominance_full_rank({{1.0, 0.0}, {0.0, 1.0}});
        ck.expect(id.diagonally_dominant && id.full_rank, "identity misclassified");
        const auto flat = bounds::diagonal_dominance_full_rank({{1.0, 1.0}, {1.0, 1.0}});
        ck.expect(!flat.diagonally_dominant && flat.rank == 1, "rank-1 matrix misclassified");
    }
    // the certified parity learner induces an identity-like success matrix
    for (int n = 2; n <= 3; ++n) {
        const auto net = learners::build_parity_learner(n);
        const auto sm = bounds::success_matrix(net, parity_class(n));
        ck.expect(sm.transpose_diagonally_dominant(),
                  "parity success matrix transpose is not diagonally dominant");
    }
    return {"dominance", ck.pass, ck.checks, ck.detail};
}

SuiteResult suite_codebook(std::uint64_t seed) {
    Checker ck;
    (void)seed;
    for (int d = 1; d <= 24; ++d) {
        const auto book = bounds::gv_codebook(d);
        ck.expect(bounds::min_pairwise_distance(book) >= book.min_distance_required,
                  "codebook for d=" + std::to_string(d) + " violates the distance floor");
        ck.expect(static_cast<double>(book.codewords.size()) >= book.size_floor,
                  "codebook for d=" + std::to_string(d) + " smaller than 2^floor(d/6)");
    }
    const double h_quarter = bounds::binary_entropy(0.25);
    ck.expect(std::abs(h_quarter - 0.811278) < 1e-6, "H(1/4) differs from 0.811278");
    ck.expect(1.0 - h_quarter - 1.0 / 6.0 > 1e-6, "1 - H(1/4) does not clear 1/6");
    return {"codebook", ck.pass, ck.checks, ck.detail};
}

SuiteResult suite_pac(std::uint64_t seed) {
    Checker ck;
    const classical::PacParams params(0.1, 0.1);
    const int trials = 50;

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
            int quantum_ok = 0;
            for (int trial = 0; trial < trials; ++trial) {
                const Concept& target = cls.at(trial % cls.size());
                classical::ExampleOracle oracle(
                    target, dist, derive_seed(seed, 9000 + static_cast<std::uint64_t>(trial)));
                const Concept h = classical::pac_consistent_learner(cls, oracle, params);
                if (classical::empirical_error(h, target, dist) <= params.epsilon) ++classical_ok;

                Rng rng(derive_seed(seed, 9500 + static_cast<std::uint64_t>(trial)));
                const Concept hq = learners::qex_sampling_learner(cls, target, dist, params, rng);
                if (classical::empirical_error(hq, target, dist) <= params.epsilon) ++quantum_ok;
            }
            const int needed = static_cast<int>(std::ceil((1.0 - params.delta) * trials));
            ck.expect(classical_ok >= needed, label + " / " + dist_label +
                                                  ": classical PAC success rate below 1 - delta");
            ck.expect(quantum_ok >= needed, label + " / " + dist_label +
                                                ": sampling PAC success rate below 1 - delta");
        }
    }
    return {"pac", ck.pass, ck.checks, ck.detail};
}

SuiteResult suite_consistency(std::uint64_t seed) {
    Checker ck;
    // measured classical learner complexity dominates every classical lower bound
    for (const auto& [label, cls] : built_in_small_classes()) {
        const auto report = bounds::bound_report(cls);
        std::size_t max_queries = 0;
        for (const auto& target : cls.concepts()) {
            auto oracle = classical::MembershipOracle::honest(target);
            max_queries = std::max(max_queries, classical::greedy_exact_learner(cls, oracle).queries);
        }
        ck.expect(static_cast<double>(max_queries) + 1e-9 >= report.classical_similarity_lower,
                  label + ": measured queries below the similarity bound");
        ck.expect(static_cast<double>(max_queries) + 1e-9 >= report.classical_size_lower,
                  label + ": measured queries below the size bound");
        ck.expect(static_cast<double>(max_queries) <= report.classical_exact_upper,
                  label + ": measured queries above the upper bound");
    }
    // certified quantum learner dominates both quantum lower bounds
    for (int n = 1; n <= 4; ++n) {
        const ConceptClass cls = parity_class(n);
        const auto cert = learners::certify_learner(learners::build_parity_learner(n), cls);
        const auto report = bounds::bound_report(cls);
        ck.expect(cert.pass, "parity learner failed certification during consistency check");
        ck.expect(cert.query_count + 1e-9 >= report.quantum_similarity_lower,
                  "certified query count below the quantum similarity bound");
        ck.expect(cert.query_count + 1e-9 >= report.quantum_size_lower,
                  "certified query count below the quantum size bound");
    }
    // PAC sample sizes dominate the classical and quantum sample bounds
    {
        const classical::PacParams params(0.1, 0.1);
        for (const auto& cls : {point_functions_plus_zero(2), parity_class(3)}) {
            const auto report = bounds::bound_report(cls, params);
            ck.expect(report.classical_pac_upper.has_value(), "missing PAC sample size");
            ck.expect(*report.classical_pac_upper >= report.classical_pac_lower,
                      "PAC sample size below the VC lower bound");
            ck.expect(*report.classical_pac_upper >= report.quantum_pac_lower,
                      "PAC sample size below the quantum VC lower bound");
        }
    }
    // the sampling learner is faithful to the classical learner on the same draw sequence
    {
        const ConceptClass cls = point_functions_plus_zero(2);
        const classical::PacParams params(0.2, 0.2);
        const Distribution dist = Distribution::uniform(2);
        for (std::size_t t = 0; t < cls.size(); ++t) {
            const Concept& target = cls.at(t);
            Rng rng_a(derive_seed(seed, 9900 + t));
            Rng rng_b(derive_seed(seed, 9900 + t));
            const Concept via_network = learners::qex_sampling_learner(cls, target, dist, params, rng_a);
            const int m = classical::pac_sample_size(params, vc_dimension(cls).dimension);
            std::vector<classical::LabeledExample> sample;
            for (int i = 0; i < m; ++i)
                sample.push_back(learners::qex_draw_example(target, dist, rng_b));
            const auto direct = classical::consistent_hypothesis(cls, sample);
            ck.expect(direct.has_value() && *direct == via_network,
                      "sampling learner diverged from the classical learner on the same sequence");
        }
    }
    return {"consistency", ck.pass, ck.checks, ck.detail};
}

using SuiteFn = SuiteResult (*)(std::uint64_t);

const std::vector<std::pair<std::string, SuiteFn>>& suite_table() {
    static const std::vector<std::pair<std::string, SuiteFn>> table = {
        {"gamma", suite_gamma},         {"vc", suite_vc},
        {"adversary", suite_adversary}, {"greedy", suite_greedy},
        {"sampling", suite_sampling},   {"unitarity", suite_unitarity},
        {"distance", suite_distance},   {"hybrid", suite_hybrid},
        {"magnitudes", suite_magnitudes}, {"parity", suite_parity},
        {"degree", suite_degree},       {"dominance", suite_dominance},
        {"codebook", suite_codebook},   {"pac", suite_pac},
        {"consistency", suite_consistency},
    };
    return table;
}

} // namespace

std::vector<std::string> suite_names() {
    std::vector<std::string> names;
    for (const auto& [name, fn] : suite_table()) names.push_back(name);
    return names;
}

SuiteResult run_suite(const std::string& name, std::uint64_t seed) {
    for (const auto& [candidate, fn] : suite_table())
        if (candidate == name) return fn(seed);
    throw std::invalid_argument("unknown verification suite '" + name + "'");
}

std::vector<SuiteResult> run_suites(const std::vector<std::string>& filter, std::uint64_t seed) {
    std::vector<SuiteResult> results;
    if (filter.empty()) {
        for (const auto& [name, fn] : suite_table()) results.push_back(fn(seed));
        return results;
    }
    for (const auto& name : filter) results.push_back(run_suite(name, seed));
    return results;
}

} // namespace qlearn::verify
