#include "qlearn/learners.hpp"

#include <algorithm>
#include <bit>
#include <stdexcept>

#include "qlearn/errors.hpp"

namespace qlearn::learners {

using quantum::Decoder;
using quantum::GateOp;
using quantum::MembershipSlot;
using quantum::QueryNetwork;
using quantum::Stage;

QueryNetwork build_parity_learner(int n) {
    if (n < 1) throw std::invalid_argument("build_parity_learner: n must be positive");
    if (n > 8) throw CapExceeded("build_parity_learner: n capped at 8");
    const int m = n + 1;

    std::vector<GateOp> prepare;
    prepare.push_back({GateOp::Kind::X, n});
    for (int q = 0; q <= n; ++q) prepare.push_back({GateOp::Kind::H, q});

    std::vector<GateOp> finish;
    for (int q = 0; q < n; ++q) finish.push_back({GateOp::Kind::H, q});

    Decoder decode;
    for (int q = 0; q < n; ++q) decode.measured_qubits.push_back(q);
    const Index domain = Index{1} << n;
    for (Index a = 0; a < domain; ++a) {
        std::vector<std::uint8_t> table(domain);
        for (Index x = 0; x < domain; ++x)
            table[x] = static_cast<std::uint8_t>(std::popcount(a & x) & 1);
        decode.outcomes.emplace(a, std::move(table));
    }

    std::vector<Stage> stages;
    stages.emplace_back(std::move(prepare));
    stages.emplace_back(MembershipSlot{});
    stages.emplace_back(std::move(finish));
    return QueryNetwork(m, n, std::move(stages), std::move(decode));
}

CertificationReport certify_learner(const QueryNetwork& net, const ConceptClass& cls,
                                    double threshold) {
    if (net.n() != cls.n())
        throw std::invalid_argument("certify_learner: network and class input lengths differ");

    CertificationReport report;
    report.query_count = net.query_count();
    report.threshold = threshold;
    report.per_target_success.reserve(cls.size());
    report.max_undecoded_mass = 0.0;

    for (const auto& target : cls.concepts()) {
        const auto trace = quantum::run_network(net, target);
        const auto marginal =
            quantum::measure_distribution(trace.final_state, net.decode().measured_qubits);
        double success = 0.0;
        double decoded = 0.0;
        for (const auto& [outcome, table] : net.decode().outcomes) {
            decoded += marginal.probabilities[outcome];
            if (table == target.table()) success += marginal.probabilities[outcome];
        }
        report.max_undecoded_mass = std::max(report.max_undecoded_mass, 1.0 - decoded);
        report.per_target_success.push_back(success);
    }
    report.min_success =
        *std::min_element(report.per_target_success.begin(), report.per_target_success.end());
    report.pass = report.min_success >= threshold;
    return report;
}

classical::LabeledExample qex_draw_example(const Concept& target, const Distribution& dist,
                                           Rng& rng) {
    const int m = target.n() + 1;
    const auto state = quantum::prepare_qex(target, dist, m);
    std::vector<int> all_qubits(m);
    for (int q = 0; q < m; ++q) all_qubits[q] = q;
    const auto md = quantum::measure_distribution(state, all_qubits);
    const std::uint64_t z = md.sample(rng);
    const Index x = static_cast<Index>(z >> 1);
    const int label = static_cast<int>(z & 1);
    return classical::LabeledExample{x, label};
}

Concept qex_sampling_learner(const ConceptClass& cls, const Concept& target,
                             const Distribution& dist, const classical::PacParams& params,
                             Rng& rng) {
    if (cls.n() != target.n())
        throw std::invalid_argument("qex_sampling_learner: class and target input lengths differ");
    const int d = vc_dimension(cls).dimension;
    const int m = classical::pac_sample_size(params, d);
    std::vector<classical::LabeledExample> sample;
    sample.reserve(static_cast<std::size_t>(m));
    for (int i = 0; i < m; ++i) sample.push_back(qex_draw_example(target, dist, rng));
    auto h = classical::consistent_hypothesis(cls, sample);
    if (!h)
        throw ProtocolViolation("qex_sampling_learner: no concept consistent with the sample");
    return *h;
}

} // namespace qlearn::learners
