#pragma once

#include <cstdint>
#include <random>

namespace dynet {

// SplitMix64 finalizer, used to derive well-mixed seeds for per-pair streams.
inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

// Independent stream for the node pair (u,v) under a global seed.  Pair
// streams make generation order-independent: serial and parallel sweeps over
// pairs produce identical sequences.
inline std::mt19937_64 pair_rng(std::uint64_t seed, std::uint32_t u, std::uint32_t v) {
    std::uint64_t key = (static_cast<std::uint64_t>(u) << 32) | v;
    return std::mt19937_64(splitmix64(seed ^ splitmix64(key)));
}

// Stream for scalar-indexed work items (benchmark rows, restarts).
inline std::mt19937_64 stream_rng(std::uint64_t seed, std::uint64_t index) {
    return std::mt19937_64(splitmix64(seed + 0x51ed2701ULL * (index + 1)));
}

}  // namespace dynet
