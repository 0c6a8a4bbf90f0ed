#include <benchmark/benchmark.h>

#include "qlearn/bounds.hpp"
#include "qlearn/classical.hpp"
#include "qlearn/learners.hpp"
#include "qlearn/quantum.hpp"
#include "qlearn/verify.hpp"

namespace {

using namespace qlearn;

void GammaHatBruteForce(benchmark::State& state) {
    const auto cls = point_functions_plus_zero(static_cast<int>(state.range(0)));
    for (auto _ : state) {
        auto stats = gamma_hat(cls);
        benchmark::DoNotOptimize(stats);
    }
    state.SetComplexityN(static_cast<benchmark::IterationCount>(cls.size()));
}
BENCHMARK(GammaHatBruteForce)->DenseRange(2, 4)->Complexity();

void VcDimensionSearch(benchmark::State& state) {
    const auto cls = parity_class(static_cast<int>(state.range(0)));
    for (auto _ : state) {
        auto vc = vc_dimension(cls);
        benchmark::DoNotOptimize(vc);
    }
}
BENCHMARK(VcDimensionSearch)->DenseRange(2, 4);

void HadamardSweep(benchmark::State& state) {
    const int m = static_cast<int>(state.range(0));
    quantum::QuantumState qs(m);
    for (auto _ : state) {
        for (int q = 0; q < m; ++q) qs.hadamard(q);
        benchmark::DoNotOptimize(qs);
    }
    state.SetItemsProcessed(state.iterations() * m * (1LL << m));
}
BENCHMARK(HadamardSweep)->DenseRange(4, 12, 2);

void ParityLearnerCertification(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    const auto net = learners::build_parity_learner(n);
    const auto cls = parity_class(n);
    for (auto _ : state) {
        auto report = learners::certify_learner(net, cls);
        benchmark::DoNotOptimize(report);
    }
}
BENCHMARK(ParityLearnerCertification)->DenseRange(2, 6);

void GreedyLearnerAllTargets(benchmark::State& state) {
    const auto cls = point_functions_plus_zero(static_cast<int>(state.range(0)));
    for (auto _ : state) {
        for (const auto& target : cls.concepts()) {
            auto oracle = classical::MembershipOracle::honest(target);
            auto run = classical::greedy_exact_learner(cls, oracle);
            benchmark::DoNotOptimize(run);
        }
    }
}
BENCHMARK(GreedyLearnerAllTargets)->DenseRange(2, 4);

void AcceptancePolynomial(benchmark::State& state) {
    Rng rng(11);
    const int n = static_cast<int>(state.range(0));
    const auto net = verify::random_membership_network(rng, n, n + 1, 2);
    std::set<std::uint64_t> outcomes;
    for (std::uint64_t z = 0; z < (std::uint64_t{1} << (n + 1)); z += 2) outcomes.insert(z);
    for (auto _ : state) {
        auto poly = bounds::acceptance_polynomial(net, outcomes, n);
        benchmark::DoNotOptimize(poly);
    }
}
BENCHMARK(AcceptancePolynomial)->DenseRange(1, 3);

void GreedyCodebook(benchmark::State& state) {
    const int d = static_cast<int>(state.range(0));
    for (auto _ : state) {
        auto book = bounds::gv_codebook(d);
        benchmark::DoNotOptimize(book);
    }
}
BENCHMARK(GreedyCodebook)->Arg(8)->Arg(12)->Arg(16)->Arg(20);

} // namespace

BENCHMARK_MAIN();
