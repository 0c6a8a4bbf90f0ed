#include "qlearn/quantum.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <stdexcept>
#include <string>

#include "qlearn/errors.hpp"

namespace qlearn::quantum {

int qubit_cap() {
    if (const char* env = std::getenv("QLEARN_MAX_QUBITS")) {
        const int v = std::atoi(env);
        if (v >= 1 && v <= 24) return v;
    }
    return 12;
}

QuantumState::QuantumState(int m) : m_(m) {
    if (m_ < 1) throw std::invalid_argument("QuantumState: qubit count must be positive");
    if (m_ > qubit_cap())
        throw CapExceeded("QuantumState: " + std::to_string(m_) + " qubits exceeds cap " +
                          std::to_string(qubit_cap()));
    amps_.assign(std::size_t{1} << m_, Amplitude{0.0, 0.0});
    amps_[0] = Amplitude{1.0, 0.0};
}

QuantumState::QuantumState(int m, std::vector<Amplitude> amps) : QuantumState(m) {
    if (amps.size() != amps_.size())
        throw std::invalid_argument("QuantumState: amplitude vector length is not 2^m");
    amps_ = std::move(amps);
    if (std::abs(norm() - 1.0) > kNormTolerance)
        throw std::invalid_argument("QuantumState: amplitudes are not unit norm");
}

double QuantumState::norm() const {
    double s = 0.0;
    for (const auto& a : amps_) s += std::norm(a);
    return std::sqrt(s);
}

void QuantumState::check_qubit(int q) const {
    if (q < 0 || q >= m_) throw std::invalid_argument("qubit index out of range");
}

void QuantumState::hadamard(int q) {
    check_qubit(q);
    const std::size_t mask = bit_mask(q);
    constexpr double inv_sqrt2 = 0.7071067811865475244;
    for (std::size_t i = 0; i < amps_.size(); ++i) {
        if (i & mask) continue;
        const Amplitude a = amps_[i];
        const Amplitude b = amps_[i | mask];
        amps_[i] = (a + b) * inv_sqrt2;
        amps_[i | mask] = (a - b) * inv_sqrt2;
    }
}

void QuantumState::pauli_x(int q) {
    check_qubit(q);
    const std::size_t mask = bit_mask(q);
    for (std::size_t i = 0; i < amps_.size(); ++i)
        if (!(i & mask)) std::swap(amps_[i], amps_[i | mask]);
}

void QuantumState::pauli_z(int q) {
    check_qubit(q);
    const std::size_t mask = bit_mask(q);
    for (std::size_t i = 0; i < amps_.size(); ++i)
        if (i & mask) amps_[i] = -amps_[i];
}

void QuantumState::phase(int q, double theta) {
    check_qubit(q);
    const std::size_t mask = bit_mask(q);
    const Amplitude f{std::cos(theta), std::sin(theta)};
    for (std::size_t i = 0; i < amps_.size(); ++i)
        if (i & mask) amps_[i] *= f;
}

void QuantumState::cnot(int control, int target) {
    check_qubit(control);
    check_qubit(target);
    if (control == target) throw std::invalid_argument("cnot: control equals target");
    const std::size_t cmask = bit_mask(control);
    const std::size_t tmask = bit_mask(target);
    for (std::size_t i = 0; i < amps_.size(); ++i)
        if ((i & cmask) && !(i & tmask)) std::swap(amps_[i], amps_[i | tmask]);
}

bool DenseUnitary::is_unitary(double tol) const {
    const std::size_t dim = std::size_t{1} << m;
    if (entries.size() != dim * dim) return false;
    for (std::size_t r = 0; r < dim; ++r) {
        for (std::size_t c = r; c < dim; ++c) {
            Amplitude dot{0.0, 0.0};
            for (std::size_t k = 0; k < dim; ++k) dot += at(r, k) * std::conj(at(c, k));
            const Amplitude expected = (r == c) ? Amplitude{1.0, 0.0} : Amplitude{0.0, 0.0};
            if (std::abs(dot - expected) > tol) return false;
        }
    }
    return true;
}

void apply_dense(QuantumState& state, const DenseUnitary& u) {
    if (u.m != state.qubit_count())
        throw std::invalid_argument("apply_dense: stage width differs from register width");
    const std::size_t dim = state.dimension();
    std::vector<Amplitude> out(dim, Amplitude{0.0, 0.0});
    for (std::size_t r = 0; r < dim; ++r) {
        Amplitude acc{0.0, 0.0};
        for (std::size_t c = 0; c < dim; ++c) acc += u.at(r, c) * state.amps_[c];
        out[r] = acc;
    }
    state.amps_ = std::move(out);
}

void apply_gates(QuantumState& state, const std::vector<GateOp>& gates) {
    for (const auto& g : gates) {
        switch (g.kind) {
        case GateOp::Kind::H: state.hadamard(g.q0); break;
        case GateOp::Kind::X: state.pauli_x(g.q0); break;
        case GateOp::Kind::Z: state.pauli_z(g.q0); break;
        case GateOp::Kind::Phase: state.phase(g.q0, g.theta); break;
        case GateOp::Kind::Cnot: state.cnot(g.q0, g.q1); break;
        }
    }
}

void apply_membership_oracle(QuantumState& state, const Concept& c) {
    const int m = state.qubit_count();
    const int n = c.n();
    if (m < n + 1)
        throw std::invalid_argument("membership oracle needs at least n+1 qubits");
    const int shift = m - n; // basis index >> shift = query string
    const std::size_t answer_mask = std::size_t{1} << (m - n - 1);
    for (std::size_t i = 0; i < state.amps_.size(); ++i) {
        if (i & answer_mask) continue;
        const Index x = static_cast<Index>(i >> shift);
        if (c(x)) std::swap(state.amps_[i], state.amps_[i | answer_mask]);
    }
}

QuantumState prepare_qex(const Concept& c, const Distribution& dist, int m) {
    const int n = c.n();
    if (c.n() != dist.n())
        throw std::invalid_argument("prepare_qex: concept and distribution input lengths differ");
    if (m < n + 1) throw std::invalid_argument("prepare_qex: needs at least n+1 qubits");
    QuantumState state(m);
    state.amps_[0] = Amplitude{0.0, 0.0};
    const int shift = m - n;
    const std::size_t answer_mask = std::size_t{1} << (m - n - 1);
    for (Index x = 0; x < dist.domain_size(); ++x) {
        const double w = dist(x);
        if (w == 0.0) continue;
        std::size_t i = static_cast<std::size_t>(x) << shift;
        if (c(x)) i |= answer_mask;
        state.amps_[i] = Amplitude{std::sqrt(w), 0.0};
    }
    return state;
}

QueryNetwork::QueryNetwork(int m, int n, std::vector<Stage> stages, Decoder decode)
    : m_(m), n_(n), stages_(std::move(stages)), decode_(std::move(decode)), query_count_(0),
      has_example_slot_(false) {
    if (n_ < 1) throw std::invalid_argument("QueryNetwork: n must be positive");
    if (m_ < n_ + 1) throw std::invalid_argument("QueryNetwork: m must be at least n+1");
    if (m_ > qubit_cap())
        throw CapExceeded("QueryNetwork: " + std::to_string(m_) + " qubits exceeds cap " +
                          std::to_string(qubit_cap()));

    int membership_slots = 0;
    for (std::size_t s = 0; s < stages_.size(); ++s) {
        const Stage& stage = stages_[s];
        if (std::holds_alternative<ExampleSlot>(stage)) {
            if (s != 0)
                throw std::invalid_argument(
                    "QueryNetwork: example-oracle stage must be the first operation");
            has_example_slot_ = true;
            ++query_count_;
        } else if (std::holds_alternative<MembershipSlot>(stage)) {
            ++membership_slots;
            ++query_count_;
        } else if (const auto* dense = std::get_if<DenseUnitary>(&stage)) {
            if (dense->m != m_)
                throw std::invalid_argument("QueryNetwork: dense stage width differs from m");
            if (dense->m > 10)
                throw CapExceeded("QueryNetwork: dense stages limited to 10 qubits");
            if (!dense->is_unitary(kUnitaryTolerance))
                throw std::invalid_argument("QueryNetwork: dense stage is not unitary");
        } else {
            for (const auto& g : std::get<std::vector<GateOp>>(stage)) {
                if (g.q0 < 0 || g.q0 >= m_ ||
                    (g.kind == GateOp::Kind::Cnot && (g.q1 < 0 || g.q1 >= m_ || g.q1 == g.q0)))
                    throw std::invalid_argument("QueryNetwork: gate qubit out of range");
            }
        }
    }
    if (has_example_slot_ && membership_slots > 0)
        throw std::invalid_argument("QueryNetwork: all oracle slots must be the same kind");

    for (int q : decode_.measured_qubits)
        if (q < 0 || q >= m_)
            throw std::invalid_argument("QueryNetwork: measured qubit out of range");
    const std::size_t table_size = std::size_t{1} << n_;
    for (const auto& [outcome, table] : decode_.outcomes) {
        if (outcome >= (std::uint64_t{1} << decode_.measured_qubits.size()))
            throw std::invalid_argument("QueryNetwork: decode outcome out of range");
        if (table.size() != table_size)
            throw std::invalid_argument("QueryNetwork: decoded hypothesis table has wrong length");
    }
}

namespace {

void check_norm(const QuantumState& state) {
    if (std::abs(state.norm() - 1.0) > kNormTolerance)
        throw std::runtime_error("quantum state norm drifted beyond tolerance");
}

// runs the network, optionally redirecting oracle answers through overrides
RunTrace run_impl(const QueryNetwork& net, const Concept& target, const Distribution* dist,
                  const OverrideTable* overrides, bool keep_trace) {
    if (target.n() != net.n())
        throw std::invalid_argument("run_network: concept input length differs from network");
    if (net.uses_example_oracle() && dist == nullptr)
        throw std::invalid_argument("run_network: example-oracle network needs a distribution");

    QuantumState state(net.m());
    std::vector<QuantumState> trace;
    int call = 0;
    for (const auto& stage : net.stages()) {
        if (std::holds_alternative<MembershipSlot>(stage)) {
            if (keep_trace) trace.push_back(state);
            if (overrides != nullptr)
                apply_membership_oracle_with_overrides(state, target, call, *overrides);
            else
                apply_membership_oracle(state, target);
            ++call;
        } else if (std::holds_alternative<ExampleSlot>(stage)) {
            if (keep_trace) trace.push_back(state);
            state = prepare_qex(target, *dist, net.m());
            ++call;
        } else if (const auto* dense = std::get_if<DenseUnitary>(&stage)) {
            apply_dense(state, *dense);
        } else {
            apply_gates(state, std::get<std::vector<GateOp>>(stage));
        }
        check_norm(state);
    }
    return RunTrace{std::move(state), std::move(trace)};
}

} // namespace

void apply_membership_oracle_with_overrides(QuantumState& state, const Concept& c, int call,
                                            const OverrideTable& table) {
    const int m = state.qubit_count();
    const int n = c.n();
    if (m < n + 1) throw std::invalid_argument("membership oracle needs at least n+1 qubits");
    const int shift = m - n;
    const std::size_t answer_mask = std::size_t{1} << (m - n - 1);
    for (std::size_t i = 0; i < state.amps_.size(); ++i) {
        if (i & answer_mask) continue;
        const Index x = static_cast<Index>(i >> shift);
        const auto it = table.answers.find({call, x});
        const int answer = (it != table.answers.end()) ? it->second : c(x);
        if (answer) std::swap(state.amps_[i], state.amps_[i | answer_mask]);
    }
}

RunTrace run_network(const QueryNetwork& net, const Concept& target, const Distribution* dist) {
    return run_impl(net, target, dist, nullptr, true);
}

QuantumState run_with_overrides(const QueryNetwork& net, const Concept& c,
                                const OverrideTable& table) {
    if (net.uses_example_oracle())
        throw std::invalid_argument("run_with_overrides: membership-query networks only");
    for (const auto& [key, bit] : table.answers) {
        if (key.first < 0 || key.first >= net.query_count())
            throw std::invalid_argument("OverrideTable: call index out of range");
        if (key.second >= (Index{1} << net.n()))
            throw std::invalid_argument("OverrideTable: query string out of range");
        if (bit != 0 && bit != 1) throw std::invalid_argument("OverrideTable: answer must be a bit");
    }
    return run_impl(net, c, nullptr, &table, false).final_state;
}

MeasurementDistribution measure_distribution(const QuantumState& state,
                                             const std::vector<int>& qubits) {
    if (qubits.empty()) throw std::invalid_argument("measure_distribution: empty qubit subset");
    std::set<int> seen;
    for (int q : qubits) {
        if (q < 0 || q >= state.qubit_count())
            throw std::invalid_argument("measure_distribution: qubit out of range");
        if (!seen.insert(q).second)
            throw std::invalid_argument("measure_distribution: repeated qubit");
    }
    MeasurementDistribution md;
    md.qubits = qubits;
    md.probabilities.assign(std::size_t{1} << qubits.size(), 0.0);
    const int m = state.qubit_count();
    for (std::size_t i = 0; i < state.dimension(); ++i) {
        const double p = std::norm(state.amplitudes()[i]);
        if (p == 0.0) continue;
        std::uint64_t outcome = 0;
        for (std::size_t j = 0; j < qubits.size(); ++j) {
            const std::size_t mask = std::size_t{1} << (m - 1 - qubits[j]);
            outcome = (outcome << 1) | static_cast<std::uint64_t>((i & mask) != 0);
        }
        md.probabilities[outcome] += p;
    }
    return md;
}

std::uint64_t MeasurementDistribution::sample(Rng& rng) const {
    const double u = rng.uniform01();
    double acc = 0.0;
    for (std::size_t i = 0; i + 1 < probabilities.size(); ++i) {
        acc += probabilities[i];
        if (u < acc) return i;
    }
    return probabilities.size() - 1;
}

double euclidean_distance(const QuantumState& a, const QuantumState& b) {
    if (a.dimension() != b.dimension())
        throw std::invalid_argument("euclidean_distance: dimension mismatch");
    double s = 0.0;
    for (std::size_t i = 0; i < a.dimension(); ++i)
        s += std::norm(a.amplitudes()[i] - b.amplitudes()[i]);
    return std::sqrt(s);
}

double total_variation(const std::vector<double>& p, const std::vector<double>& q) {
    if (p.size() != q.size()) throw std::invalid_argument("total_variation: size mismatch");
    double s = 0.0;
    for (std::size_t i = 0; i < p.size(); ++i) s += std::abs(p[i] - q[i]);
    return s;
}

double QueryMagnitudes::total() const {
    double s = 0.0;
    for (const auto& row : q)
        for (double v : row) s += v;
    return s;
}

QueryMagnitudes query_magnitudes(const QueryNetwork& net, const Concept& c) {
    if (net.uses_example_oracle())
        throw std::invalid_argument("query_magnitudes: membership-query networks only");
    const RunTrace trace = run_network(net, c);
    const int shift = net.m() - net.n();
    QueryMagnitudes qm;
    qm.q.reserve(trace.before_oracle.size());
    for (const auto& state : trace.before_oracle) {
        std::vector<double> row(std::size_t{1} << net.n(), 0.0);
        for (std::size_t i = 0; i < state.dimension(); ++i)
            row[i >> shift] += std::norm(state.amplitudes()[i]);
        qm.q.push_back(std::move(row));
    }
    return qm;
}

} // namespace qlearn::quantum
