#pragma once

#include <cstdint>
#include <random>

namespace monsterlab {

// Deterministic RNG for randomized sweeps. std::uniform_*_distribution is
// implementation-defined, so draws are derived from raw engine output to keep
// byte-identical results across platforms.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : eng_(seed) {}

    std::uint64_t bits() { return eng_(); }

    // uniform in [0,1)
    double unit() { return static_cast<double>(bits() >> 11) * 0x1.0p-53; }

    // uniform integer in [0, n)
    std::uint64_t below(std::uint64_t n) { return bits() % n; }

    // uniform integer in [lo, hi] inclusive
    std::int64_t range(std::int64_t lo, std::int64_t hi) {
        return lo + static_cast<std::int64_t>(below(static_cast<std::uint64_t>(hi - lo + 1)));
    }

private:
    std::mt19937_64 eng_;
};

}  // namespace monsterlab
