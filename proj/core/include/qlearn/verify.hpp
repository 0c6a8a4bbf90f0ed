#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "qlearn/concepts.hpp"
#include "qlearn/quantum.hpp"
#include "qlearn/rng.hpp"

namespace qlearn::verify {

struct SuiteResult {
    std::string name;
    bool pass;
    int checks;
    std::string detail; // first failing check, empty when green
};

std::vector<std::string> suite_names();

// Runs one named suite with a fixed seed; unknown names throw
// std::invalid_argument.
SuiteResult run_suite(const std::string& name, std::uint64_t seed);

// Empty filter runs everything.
std::vector<SuiteResult> run_suites(const std::vector<std::string>& filter, std::uint64_t seed);

// Every built-in family instance with |C| <= 20; the corpus the adversary,
// greedy and consistency suites quantify over.
std::vector<std::pair<std::string, ConceptClass>> built_in_small_classes();

// Gate-list network with T membership-oracle calls. With small_angles set,
// stages weave H-phase-H triples with small phases through the query
// register so that some query strings carry tiny magnitude.
quantum::QueryNetwork random_membership_network(Rng& rng, int n, int m, int queries,
                                                bool small_angles = false);

quantum::QuantumState random_state(Rng& rng, int m);

Concept random_concept(Rng& rng, int n);

std::vector<std::vector<double>> random_dominant_matrix(Rng& rng, std::size_t size);

} // namespace qlearn::verify
