#include "qlearn/distribution.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace qlearn {

Distribution::Distribution(int n, std::vector<double> weights)
    : n_(n), weights_(std::move(weights)) {
    if (n_ < 1 || n_ > 16) throw std::invalid_argument("Distribution: n out of range");
    if (weights_.size() != (std::size_t{1} << n_))
        throw std::invalid_argument("Distribution: weight vector length is not 2^n");
    double sum = 0.0;
    for (double w : weights_) {
        if (!(w >= 0.0)) throw std::invalid_argument("Distribution: negative or NaN weight");
        sum += w;
    }
    if (std::abs(sum - 1.0) > 1e-12)
        throw std::invalid_argument("Distribution: weights sum to " + std::to_string(sum));

    cumulative_.resize(weights_.size());
    double acc = 0.0;
    for (std::size_t i = 0; i < weights_.size(); ++i) {
        acc += weights_[i];
        cumulative_[i] = acc;
    }
    cumulative_.back() = 1.0;
}

Distribution Distribution::uniform(int n) {
    const std::size_t size = std::size_t{1} << n;
    return Distribution(n, std::vector<double>(size, 1.0 / static_cast<double>(size)));
}

Distribution Distribution::point_mass(int n, Index x) {
    std::vector<double> w(std::size_t{1} << n, 0.0);
    if (x >= w.size()) throw std::invalid_argument("point_mass: index out of domain");
    w[x] = 1.0;
    return Distribution(n, std::move(w));
}

Distribution Distribution::uniform_over(int n, const std::vector<Index>& support) {
    if (support.empty()) throw std::invalid_argument("uniform_over: empty support");
    std::vector<double> w(std::size_t{1} << n, 0.0);
    const double p = 1.0 / static_cast<double>(support.size());
    for (Index x : support) {
        if (x >= w.size()) throw std::invalid_argument("uniform_over: index out of domain");
        if (w[x] != 0.0) throw std::invalid_argument("uniform_over: duplicate support point");
        w[x] = p;
    }
    return Distribution(n, std::move(w));
}

Index Distribution::sample(Rng& rng) const {
    const double u = rng.uniform01();
    // first index with cumulative > u; zero-width cells cannot be hit
    std::size_t lo = 0, hi = cumulative_.size() - 1;
    while (lo < hi) {
        const std::size_t mid = (lo + hi) / 2;
        if (cumulative_[mid] > u)
            hi = mid;
        else
            lo = mid + 1;
    }
    return static_cast<Index>(lo);
}

} // namespace qlearn
