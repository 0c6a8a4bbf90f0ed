#pragma once

#include <complex>
#include <cstdint>
#include <map>
#include <set>
#include <variant>
#include <vector>

#include "qlearn/concepts.hpp"
#include "qlearn/distribution.hpp"
#include "qlearn/rng.hpp"

namespace qlearn::quantum {

using Amplitude = std::complex<double>;

inline constexpr double kNormTolerance = 1e-9;
inline constexpr double kUnitaryTolerance = 1e-9;

// Default 12 qubits (4096 amplitudes); QLEARN_MAX_QUBITS overrides.
int qubit_cap();

// Dense amplitude vector over m qubits. Qubit 0 is the leftmost (most
// significant) position of the basis string, matching the big-endian string
// indexing used for truth tables.
class QuantumState {
public:
    explicit QuantumState(int m); // |0^m>
    QuantumState(int m, std::vector<Amplitude> amps);

    int qubit_count() const { return m_; }
    std::size_t dimension() const { return amps_.size(); }
    const std::vector<Amplitude>& amplitudes() const { return amps_; }
    double norm() const;

    void hadamard(int q);
    void pauli_x(int q);
    void pauli_z(int q);
    void phase(int q, double theta); // diag(1, e^{i theta})
    void cnot(int control, int target);

private:
    friend void apply_dense(QuantumState&, const struct DenseUnitary&);
    friend void apply_membership_oracle(QuantumState&, const Concept&);
    friend void apply_membership_oracle_with_overrides(QuantumState&, const Concept&, int,
                                                       const struct OverrideTable&);
    friend QuantumState prepare_qex(const Concept&, const Distribution&, int);

    std::size_t bit_mask(int q) const { return std::size_t{1} << (m_ - 1 - q); }
    void check_qubit(int q) const;

    int m_;
    std::vector<Amplitude> amps_;
};

struct GateOp {
    enum class Kind { H, X, Z, Phase, Cnot };
    Kind kind;
    int q0;
    int q1 = 0;         // cnot target
    double theta = 0.0; // phase angle
};

// Full-width 2^m x 2^m stage, row major; checked unitary at network build.
struct DenseUnitary {
    int m;
    std::vector<Amplitude> entries;

    Amplitude at(std::size_t row, std::size_t col) const {
        return entries[row * (std::size_t{1} << m) + col];
    }
    bool is_unitary(double tol) const;
};

struct MembershipSlot {}; // one oracle call |x,b,y> -> |x, b xor c(x), y>
struct ExampleSlot {};    // example-superposition preparation; first stage only

using Stage = std::variant<DenseUnitary, std::vector<GateOp>, MembershipSlot, ExampleSlot>;

// Maps measured basis strings of the declared qubits to hypothesis tables.
// Outcomes without an entry count as failure mass.
struct Decoder {
    std::vector<int> measured_qubits;
    std::map<std::uint64_t, std::vector<std::uint8_t>> outcomes;
};

// Alternating unitary stages and oracle slots with an outcome decoder.
class QueryNetwork {
public:
    QueryNetwork(int m, int n, std::vector<Stage> stages, Decoder decode);

    int m() const { return m_; }
    int n() const { return n_; }
    const std::vector<Stage>& stages() const { return stages_; }
    const Decoder& decode() const { return decode_; }
    int query_count() const { return query_count_; } // T
    bool uses_example_oracle() const { return has_example_slot_; }

private:
    int m_;
    int n_;
    std::vector<Stage> stages_;
    Decoder decode_;
    int query_count_;
    bool has_example_slot_;
};

void apply_membership_oracle(QuantumState& state, const Concept& c);
void apply_membership_oracle_with_overrides(QuantumState& state, const Concept& c, int call,
                                            const struct OverrideTable& table);

// Sum_x sqrt(dist(x)) |x, c(x), 0...>; only defined as the first operation
// on |0^m>, which the network validator enforces structurally.
QuantumState prepare_qex(const Concept& c, const Distribution& dist, int m);

struct RunTrace {
    QuantumState final_state;
    std::vector<QuantumState> before_oracle; // |phi_t>, one per oracle call
};

// dist is required iff the network has an example slot.
RunTrace run_network(const QueryNetwork& net, const Concept& target,
                     const Distribution* dist = nullptr);

// Exact marginal over a qubit subset; outcome index is big-endian in the
// order the qubits are listed.
struct MeasurementDistribution {
    std::vector<int> qubits;
    std::vector<double> probabilities;

    std::uint64_t sample(Rng& rng) const;
};

MeasurementDistribution measure_distribution(const QuantumState& state,
                                             const std::vector<int>& qubits);

double euclidean_distance(const QuantumState& a, const QuantumState& b);
double total_variation(const std::vector<double>& p, const std::vector<double>& q);

// q[t][x]: squared amplitude mass on query string x just before oracle call
// t+1. Each row sums to 1.
struct QueryMagnitudes {
    std::vector<std::vector<double>> q;

    double total() const; // = T
};

QueryMagnitudes query_magnitudes(const QueryNetwork& net, const Concept& c);

// Fixed answers for selected (call index, query string) pairs.
struct OverrideTable {
    std::map<std::pair<int, Index>, int> answers;
};

QuantumState run_with_overrides(const QueryNetwork& net, const Concept& c,
                                const OverrideTable& table);

void apply_dense(QuantumState& state, const DenseUnitary& u);
void apply_gates(QuantumState& state, const std::vector<GateOp>& gates);

} // namespace qlearn::quantum
