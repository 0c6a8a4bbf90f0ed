#pragma once

#include <vector>

#include "qlearn/bits.hpp"
#include "qlearn/rng.hpp"

namespace qlearn {

// Probability distribution over {0,1}^n, stored densely by string index.
class Distribution {
public:
    Distribution(int n, std::vector<double> weights); // validates sum within 1e-12

    static Distribution uniform(int n);
    static Distribution point_mass(int n, Index x);
    static Distribution uniform_over(int n, const std::vector<Index>& support);

    int n() const { return n_; }
    Index domain_size() const { return Index{1} << n_; }
    double operator()(Index x) const { return weights_[x]; }
    const std::vector<double>& weights() const { return weights_; }

    // inverse-CDF draw; zero-weight strings are never returned
    Index sample(Rng& rng) const;

private:
    int n_;
    std::vector<double> weights_;
    std::vector<double> cumulative_;
};

} // namespace qlearn
