// Deterministic randomness primitives shared by the tree generator and the
// search harness. Everything here is platform-independent by construction:
// std::mt19937_64 is fully specified by the C++ standard, SplitMix64 is the
// published Steele/Lea/Vigna mixer, and integer draws use exact rejection
// sampling instead of std::uniform_int_distribution (whose output is
// implementation-defined).
#pragma once

#include <cstdint>
#include <limits>
#include <random>

namespace fiedlerlab {

// k-th output (k = index, 0-based) of a SplitMix64 stream seeded with `seed`.
// Stateless, so parallel consumers can address any position directly.
inline std::uint64_t splitmix64_at(std::uint64_t seed, std::uint64_t index) {
    std::uint64_t z = seed + (index + 1) * 0x9E3779B97F4A7C15ULL;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

// Sub-stream seed for instance `index` of a seeded run.
inline std::uint64_t derive_stream_seed(std::uint64_t seed, std::uint64_t index) {
    return splitmix64_at(seed, index);
}

// Unbiased draw from {0, ..., bound-1} by rejection: accept only draws below
// the largest multiple of `bound` representable in 64 bits, then reduce.
template <typename Rng>
std::uint64_t uniform_below(Rng& rng, std::uint64_t bound) {
    if (bound <= 1) return 0;
    const std::uint64_t max = std::numeric_limits<std::uint64_t>::max();
    const std::uint64_t accept_below = max - (max % bound);
    std::uint64_t x = rng();
    while (x >= accept_below) x = rng();
    return x % bound;
}

}  // namespace fiedlerlab
