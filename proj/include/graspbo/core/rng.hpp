#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>
#include <random>
#include <string_view>

namespace graspbo {

// Deterministic RNG used everywhere randomness is needed. Distributions are
// hand-rolled on top of the raw engine output so results do not depend on
// the standard library's implementation-defined distribution algorithms.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed), seed_mix_(seed) {}

    // Independent child stream, stable under unrelated draws from the parent.
    Rng stream(std::string_view tag, std::uint64_t index = 0) const {
        std::uint64_t h = 0xcbf29ce484222325ull ^ seed_mix_;
        for (char c : tag) h = (h ^ static_cast<std::uint64_t>(c)) * 0x100000001b3ull;
        h = (h ^ index) * 0x100000001b3ull;
        return Rng(h, 0);
    }

    std::uint64_t next() { return engine_(); }

    double uniform01() {  // [0, 1)
        return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
    }

    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }

    int uniform_int(int lo, int hi) {  // inclusive bounds
        return lo + static_cast<int>(uniform01() * (hi - lo + 1));
    }

    double gauss() {  // Box-Muller, no cached spare
        double u1 = uniform01();
        double u2 = uniform01();
        while (u1 <= 1e-300) u1 = uniform01();
        return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
    }

private:
    Rng(std::uint64_t seed, int) : engine_(seed), seed_mix_(seed) {}

    std::mt19937_64 engine_;
    std::uint64_t seed_mix_ = 0;
};

}  // namespace graspbo
