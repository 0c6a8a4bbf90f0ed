#pragma once

#include <cmath>
#include <cstdint>
#include <random>

namespace qlearn {

// splitmix64; used to derive independent per-trial streams from (seed, index).
inline std::uint64_t mix_seed(std::uint64_t state) {
    state += 0x9e3779b97f4a7c15ULL;
    std::uint64_t z = state;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

inline std::uint64_t derive_seed(std::uint64_t base, std::uint64_t index) {
    return mix_seed(base ^ mix_seed(index + 1));
}

// Deterministic random stream. mt19937_64 output is bit-exact across
// platforms, so seeded runs reproduce byte-identical reports.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    std::uint64_t next() { return engine_(); }

    // uniform in [0, 1), 53-bit resolution
    double uniform01() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

    // uniform integer in [0, bound)
    std::uint64_t below(std::uint64_t bound) {
        // modulo bias is irrelevant at the bounds used here (<= 2^20)
        return engine_() % bound;
    }

    double gaussian() {
        // Box-Muller on the deterministic stream (std::normal_distribution is
        // not bit-stable across standard libraries)
        double u1 = uniform01();
        while (u1 == 0.0) u1 = uniform01();
        const double u2 = uniform01();
        return std::sqrt(-2.0 * std::log(u1)) * std::cos(6.283185307179586 * u2);
    }

private:
    std::mt19937_64 engine_;
};

} // namespace qlearn
