#include "qlearn/classical.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "qlearn/errors.hpp"

namespace qlearn::classical {

PacParams::PacParams(double eps, double del) : epsilon(eps), delta(del) {
    if (!(epsilon > 0.0 && epsilon < 1.0)) throw std::invalid_argument("PacParams: epsilon outside (0,1)");
    if (!(delta > 0.0 && delta < 1.0)) throw std::invalid_argument("PacParams: delta outside (0,1)");
}

MembershipOracle MembershipOracle::honest(Concept target) {
    MembershipOracle o(OracleMode::honest, target.n());
    o.target_ = std::move(target);
    return o;
}

MembershipOracle MembershipOracle::similarity_adversary(ConceptClass live_set) {
    MembershipOracle o(OracleMode::adversary_similarity, live_set.n());
    o.live_ = live_set.concepts();
    return o;
}

MembershipOracle MembershipOracle::majority_adversary(ConceptClass live_set) {
    MembershipOracle o(OracleMode::adversary_majority, live_set.n());
    o.live_ = live_set.concepts();
    return o;
}

int MembershipOracle::answer(Index a) {
    if (a >= (Index{1} << n_)) throw std::invalid_argument("MembershipOracle: query out of domain");
    ++query_count_;
    last_eliminated_ = 0;
    if (mode_ == OracleMode::honest) return (*target_)(a);

    if (live_.size() < 2) conceded_ = true;
    std::size_t ones = 0;
    for (const auto& c : live_) ones += static_cast<std::size_t>(c(a));
    const int b = 2 * ones > live_.size() ? 1 : 0;
    const std::size_t before = live_.size();
    std::erase_if(live_, [&](const Concept& c) { return c(a) != b; });
    last_eliminated_ = before - live_.size();
    live_history_.push_back(live_.size());
    return b;
}

ExactRunRecord greedy_exact_learner(const ConceptClass& cls, MembershipOracle& oracle) {
    if (oracle.n() != cls.n())
        throw std::invalid_argument("greedy_exact_learner: oracle and class input lengths differ");
    const Index domain = cls.domain_size();
    std::vector<std::size_t> version_space(cls.size());
    for (std::size_t i = 0; i < version_space.size(); ++i) version_space[i] = i;

    std::size_t queries = 0;
    while (version_space.size() > 1) {
        // query maximizing the guaranteed elimination count min(#ones, #zeros)
        std::size_t best_min = 0;
        Index best_query = 0;
        for (Index a = 0; a < domain; ++a) {
            std::size_t ones = 0;
            for (auto i : version_space) ones += static_cast<std::size_t>(cls.at(i)(a));
            const std::size_t m = std::min(ones, version_space.size() - ones);
            if (m > best_min) {
                best_min = m;
                best_query = a;
            }
        }
        const int b = oracle.answer(best_query);
        ++queries;
        std::erase_if(version_space, [&](std::size_t i) { return cls.at(i)(best_query) != b; });
        if (version_space.empty())
            throw ProtocolViolation("greedy_exact_learner: answers inconsistent with the class");
    }
    return ExactRunRecord{cls.at(version_space.front()), queries};
}

int pac_sample_size(const PacParams& params, int vc_dim) {
    if (vc_dim < 0) throw std::invalid_argument("pac_sample_size: negative VC dimension");
    const double eps = params.epsilon;
    const double m = (4.0 / eps) * std::log(2.0 / params.delta) +
                     (8.0 * vc_dim / eps) * std::log(13.0 / eps);
    return std::max(1, static_cast<int>(std::ceil(m)));
}

ExampleOracle::ExampleOracle(Concept target, Distribution dist, std::uint64_t seed)
    : target_(std::move(target)), dist_(std::move(dist)), rng_(seed) {
    if (target_.n() != dist_.n())
        throw std::invalid_argument("ExampleOracle: target and distribution input lengths differ");
}

LabeledExample ExampleOracle::draw() {
    ++draw_count_;
    const Index x = dist_.sample(rng_);
    return LabeledExample{x, target_(x)};
}

std::optional<Concept> consistent_hypothesis(const ConceptClass& cls,
                                             std::span<const LabeledExample> sample) {
    for (const auto& c : cls.concepts()) {
        bool ok = true;
        for (const auto& ex : sample) {
            if (c(ex.x) != ex.label) {
                ok = false;
                break;
            }
        }
        if (ok) return c;
    }
    return std::nullopt;
}

Concept pac_consistent_learner(const ConceptClass& cls, ExampleOracle& oracle,
                               const PacParams& params) {
    const int d = vc_dimension(cls).dimension;
    const int m = pac_sample_size(params, d);
    std::vector<LabeledExample> sample;
    sample.reserve(static_cast<std::size_t>(m));
    for (int i = 0; i < m; ++i) sample.push_back(oracle.draw());
    auto h = consistent_hypothesis(cls, sample);
    if (!h) throw ProtocolViolation("pac_consistent_learner: no concept consistent with the sample");
    return *h;
}

double empirical_error(const Concept& h, const Concept& c, const Distribution& dist) {
    if (h.n() != c.n() || h.n() != dist.n())
        throw std::invalid_argument("empirical_error: input lengths differ");
    double err = 0.0;
    for (Index x = 0; x < dist.domain_size(); ++x)
        if (h(x) != c(x)) err += dist(x);
    return err;
}

Distribution hard_pac_distribution(const ConceptClass& cls) {
    const VcResult vc = vc_dimension(cls);
    if (vc.dimension == 0) return Distribution::point_mass(cls.n(), 0);
    return Distribution::uniform_over(cls.n(), vc.witness);
}

} // namespace qlearn::classical
