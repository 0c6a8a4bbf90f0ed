#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "qlearn/concepts.hpp"
#include "qlearn/distribution.hpp"
#include "qlearn/rng.hpp"

namespace qlearn::classical {

struct PacParams {
    PacParams(double epsilon, double delta);
    double epsilon;
    double delta;
};

struct LabeledExample {
    Index x;
    int label;
    friend bool operator==(const LabeledExample&, const LabeledExample&) = default;
};

enum class OracleMode { honest, adversary_similarity, adversary_majority };

// Answers membership queries either for a fixed target or adversarially
// against a live set of still-consistent concepts. Adversary answers are the
// plurality label (ties to 0), which simultaneously realizes the
// similarity strategy (eliminate the smallest fraction) and the majority
// strategy (keep at least half). Stateful; one instance per run.
class MembershipOracle {
public:
    static MembershipOracle honest(Concept target);
    static MembershipOracle similarity_adversary(ConceptClass live_set);
    static MembershipOracle majority_adversary(ConceptClass live_set);

    int answer(Index a);

    OracleMode mode() const { return mode_; }
    int n() const { return n_; }
    std::size_t query_count() const { return query_count_; }

    // adversary modes only
    std::size_t live_size() const { return live_.size(); }
    const std::vector<Concept>& live_set() const { return live_; }
    std::size_t last_eliminated() const { return last_eliminated_; }
    // live-set size after each answer, in query order
    const std::vector<std::size_t>& live_history() const { return live_history_; }
    // latched once a query arrives with fewer than 2 live concepts; from then
    // on the adversary is pinned and answers for the lone survivor
    bool conceded() const { return conceded_; }

private:
    MembershipOracle(OracleMode mode, int n) : mode_(mode), n_(n) {}

    OracleMode mode_;
    int n_;
    std::optional<Concept> target_;
    std::vector<Concept> live_;
    std::vector<std::size_t> live_history_;
    std::size_t query_count_ = 0;
    std::size_t last_eliminated_ = 0;
    bool conceded_ = false;
};

struct ExactRunRecord {
    Concept hypothesis;
    std::size_t queries;
};

// Version-space learner: each round queries the point with the best
// guaranteed elimination fraction (ties to the smallest query index),
// halts when one concept remains. Throws ProtocolViolation if the answers
// are inconsistent with every concept in the class.
ExactRunRecord greedy_exact_learner(const ConceptClass& cls, MembershipOracle& oracle);

// ceil((4/eps) ln(2/delta) + (8 d / eps) ln(13/eps)), at least 1.
int pac_sample_size(const PacParams& params, int vc_dim);

// Draws <x, c(x)> with x distributed per dist.
class ExampleOracle {
public:
    ExampleOracle(Concept target, Distribution dist, std::uint64_t seed);

    LabeledExample draw();

    const Concept& target() const { return target_; }
    const Distribution& dist() const { return dist_; }
    std::size_t draw_count() const { return draw_count_; }

private:
    Concept target_;
    Distribution dist_;
    Rng rng_;
    std::size_t draw_count_ = 0;
};

// First concept in class order consistent with every example.
std::optional<Concept> consistent_hypothesis(const ConceptClass& cls,
                                             std::span<const LabeledExample> sample);

// Draws pac_sample_size(params, VC) examples and returns the first
// consistent concept. Throws ProtocolViolation if none is consistent.
Concept pac_consistent_learner(const ConceptClass& cls, ExampleOracle& oracle,
                               const PacParams& params);

// Pr_dist[h(x) != c(x)], exact.
double empirical_error(const Concept& h, const Concept& c, const Distribution& dist);

// Uniform over one maximum shattered set; for a single-concept class the
// set is empty and this degenerates to a point mass on 0^n.
Distribution hard_pac_distribution(const ConceptClass& cls);

} // namespace qlearn::classical
