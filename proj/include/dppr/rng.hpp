#pragma once

#include <cstdint>
#include <limits>
#include <random>

namespace dppr {

/// mt19937_64 output is pinned by the standard, so seeded streams are
/// portable. The std:: distributions are not; the samplers below are.
using Rng = std::mt19937_64;

/// Uniform integer in [0, bound), bound > 0. Rejection sampling, unbiased.
inline std::uint64_t rand_below(Rng& rng, std::uint64_t bound) {
    const std::uint64_t limit =
        std::numeric_limits<std::uint64_t>::max() -
        std::numeric_limits<std::uint64_t>::max() % bound;
    std::uint64_t x;
    do { x = rng(); } while (x >= limit);
    return x % bound;
}

/// Uniform double in [0, 1) with 53 random bits.
inline double rand_unit(Rng& rng) {
    return double(rng() >> 11) * 0x1.0p-53;
}

/// splitmix64 finalizer; used to derive independent sub-seeds.
inline std::uint64_t mix_seed(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

inline std::uint64_t derive_seed(std::uint64_t base, std::uint64_t stream, std::uint64_t index) {
    return mix_seed(base ^ mix_seed(stream ^ mix_seed(index)));
}

} // namespace dppr
