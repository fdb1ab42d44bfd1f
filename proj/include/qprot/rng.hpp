#pragma once

#include <cstdint>
#include <random>

namespace qprot {

// splitmix64; used to derive independent, reproducible seed streams.
inline std::uint64_t splitmix64(std::uint64_t& state) {
    std::uint64_t z = (state += 0x9E3779B97F4A7C15ULL);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

// Seed for sub-stream `index` of a master seed. Stable across platforms.
inline std::uint64_t stream_seed(std::uint64_t seed, std::uint64_t index) {
    std::uint64_t s = seed;
    std::uint64_t a = splitmix64(s);
    s = a ^ (index + 0x9E3779B97F4A7C15ULL);
    return splitmix64(s);
}

// Uniform double in [0,1). std::uniform_real_distribution is
// implementation-defined; this is bit-stable everywhere.
inline double uniform01(std::mt19937_64& rng) {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

}  // namespace qprot
