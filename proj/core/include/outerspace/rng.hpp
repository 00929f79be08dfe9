#pragma once

#include <bit>
#include <cstdint>
#include <random>

namespace outerspace {

// SplitMix64 finalizer. Used for seed derivation and per-node hashing.
constexpr std::uint64_t splitmix64(std::uint64_t x) noexcept {
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
}

// Derive an independent stream seed from a base seed and a domain tag, so
// that e.g. node placement and traffic generation never share a stream.
constexpr std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t domain) noexcept {
    return splitmix64(splitmix64(seed) ^ splitmix64(~domain));
}

// Deterministic random stream. Wraps std::mt19937_64, whose output sequence
// is fully specified by the standard, and hand-rolls the distributions: the
// standard distribution adaptors are implementation-defined and would break
// byte-identical reports across standard libraries.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    std::uint64_t next_u64() { return engine_(); }

    /// Uniform double in [0, 1) with 53-bit resolution.
    double next_unit() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

    /// Uniform integer in [0, n), n >= 1. Bitmask rejection, unbiased.
    std::uint64_t next_below(std::uint64_t n) {
        if (n <= 1) return 0;
        const std::uint64_t mask = ~std::uint64_t{0} >> std::countl_zero(n - 1);
        for (;;) {
            const std::uint64_t v = engine_() & mask;
            if (v < n) return v;
        }
    }

    bool next_bool() { return (engine_() >> 63) != 0; }

private:
    std::mt19937_64 engine_;
};

/// Exact Poisson sample with the given mean. Product-form inversion with the
/// exponential factored in chunks, so any mean fits in double range.
/// Expected cost O(mean) draws.
std::uint64_t poisson_sample(Rng& rng, double mean);

}  // namespace outerspace
