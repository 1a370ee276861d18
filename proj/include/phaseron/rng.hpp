// rng.hpp
// Seedable random number generation for shot sampling, data generation and
// shuffling. The engine is std::mt19937_64, whose output sequence is pinned by
// the C++ standard; all derived draws (uniform doubles, bounded integers,
// shuffles) are implemented here rather than with std::*_distribution, whose
// sequences are implementation-defined. The algorithm identifier returned by
// algorithm() is recorded in run metadata so experiments can be reproduced
// bit-for-bit.

#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "phaseron/angle.hpp"

namespace phaseron {

class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    static const char* algorithm() { return "mt19937_64+u53"; }

    std::uint64_t next_u64() { return engine_(); }

    // Uniform double in [0, 1) with 53 random bits.
    double uniform() {
        return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
    }

    // Uniform angle in [0, 2*pi).
    double uniform_angle() { return uniform() * kTwoPi; }

    // Uniformly distributed -1 or +1.
    int sign() { return (engine_() & 1u) ? 1 : -1; }

    // Uniform integer in [0, n) by rejection, n >= 1.
    std::uint64_t below(std::uint64_t n) {
        const std::uint64_t limit = UINT64_MAX - UINT64_MAX % n;
        std::uint64_t draw;
        do {
            draw = engine_();
        } while (draw >= limit);
        return draw % n;
    }

    // One Bernoulli trial with success probability p.
    bool bernoulli(double p) { return uniform() < p; }

    // In-place Fisher-Yates shuffle.
    template <typename T>
    void shuffle(std::vector<T>& values) {
        for (std::size_t i = values.size(); i > 1; --i) {
            std::swap(values[i - 1], values[below(i)]);
        }
    }

private:
    std::mt19937_64 engine_;
};

} // namespace phaseron
