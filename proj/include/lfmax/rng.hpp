#pragma once

#include <cstdint>
#include <random>

namespace lfmax {

using Rng = std::mt19937_64;

inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
}

// Counter-based seed for trial i of a run rooted at `root`.
inline std::uint64_t trial_seed(std::uint64_t root, std::uint64_t i) {
    return splitmix64(splitmix64(root) ^ splitmix64(i + 0x632BE59BD9B4E019ULL));
}

inline double uniform01(Rng& rng) {
    // 53 random bits in [0, 1)
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

}  // namespace lfmax
