#pragma once

#include <cstdint>
#include <vector>

#include "qlearn/classical.hpp"
#include "qlearn/concepts.hpp"
#include "qlearn/distribution.hpp"
#include "qlearn/quantum.hpp"

namespace qlearn::learners {

// One-query exact learner for the parity class: phase kickback on a |-}
// answer qubit concentrates all amplitude on the parity index, which the
// decoder maps back to its truth table. n <= 8.
quantum::QueryNetwork build_parity_learner(int n);

struct CertificationReport {
    int query_count;
    double threshold;
    std::vector<double> per_target_success; // indexed like the class
    double min_success;
    bool pass;
    // probability mass on measurement outcomes the decoder leaves undefined,
    // worst case over targets; it already counts against success
    double max_undecoded_mass;
};

// Runs the network against every concept in the class and scores the exact
// probability (from final-state marginals) of decoding the target's table.
CertificationReport certify_learner(const quantum::QueryNetwork& net, const ConceptClass& cls,
                                    double threshold = 2.0 / 3.0);

// One full measurement of a freshly prepared example superposition; the
// label bit always matches target(x).
classical::LabeledExample qex_draw_example(const Concept& target, const Distribution& dist,
                                           Rng& rng);

// Measures pac_sample_size(params, VC) example states and hands the
// classical sample to the consistent-hypothesis search, so it returns
// exactly what the classical PAC learner returns on the same sequence.
Concept qex_sampling_learner(const ConceptClass& cls, const Concept& target,
                             const Distribution& dist, const classical::PacParams& params,
                             Rng& rng);

} // namespace qlearn::learners
