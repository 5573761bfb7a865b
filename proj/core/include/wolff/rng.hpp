#pragma once

#include <cmath>
#include <cstdint>
#include <random>

namespace wolff {

/// Deterministic random source. All randomness in the library flows through
/// this wrapper so that sequences are reproducible across compilers: only raw
/// mt19937_64 draws are used, never the distribution adapters of <random>
/// (their output is implementation-defined).
class Rng {
public:
    explicit Rng(std::uint64_t seed)
            : engine_(seed) {}

    std::uint64_t next_u64() { return engine_(); }

    /// Uniform double in [0, 1) with 53 random bits.
    double uniform() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

    /// Uniform integer in [lo, hi], inclusive.
    std::int64_t uniform_int(std::int64_t lo, std::int64_t hi) {
        const auto span = static_cast<std::uint64_t>(hi - lo) + 1u;
        return lo + static_cast<std::int64_t>(next_u64() % span);
    }

    bool coin() { return (next_u64() & 1u) != 0; }

    /// Uniform value on the dyadic grid of step 2^-bits inside [lo, hi].
    /// With dyadic endpoints the result is an exactly representable dyadic
    /// rational, so sums of moderately many such values are exact in double.
    double dyadic(double lo, double hi, int bits = 20) {
        const double step = std::ldexp(1.0, -bits);
        const auto cells = static_cast<std::int64_t>(std::floor((hi - lo) / step));
        return lo + step * static_cast<double>(uniform_int(0, cells));
    }

    /// Derive an independent stream seed (splitmix64 finalizer over the pair).
    static std::uint64_t mix(std::uint64_t a, std::uint64_t b) {
        std::uint64_t z = a + 0x9e3779b97f4a7c15ull * (b + 1u);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
        return z ^ (z >> 31);
    }

private:
    std::mt19937_64 engine_;
};

} // namespace wolff
