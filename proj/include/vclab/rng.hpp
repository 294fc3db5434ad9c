#pragma once

#include <cstdint>
#include <random>
#include <string_view>

namespace vclab {

// Every run owns exactly one engine; nothing is shared between runs.
using Rng = std::mt19937_64;

inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

// FNV-1a, stable across platforms and standard library versions.
inline std::uint64_t stable_hash(std::string_view text, std::uint64_t h = 0xcbf29ce484222325ULL) {
    for (unsigned char c : text) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    return h;
}

/// Seed of one run, a pure function of the experiment coordinates so that a
/// cell can be replayed in isolation.
inline std::uint64_t derive_seed(std::uint64_t master_seed, std::string_view instance,
                                 std::string_view algorithm, std::uint64_t run_index) {
    std::uint64_t h = splitmix64(master_seed);
    h = stable_hash(instance, h);
    h = splitmix64(h ^ 0x1f);
    h = stable_hash(algorithm, h);
    return splitmix64(h ^ splitmix64(run_index));
}

/// Uniform index in [0, n).
inline std::uint64_t uniform_index(Rng& rng, std::uint64_t n) {
    return std::uniform_int_distribution<std::uint64_t>(0, n - 1)(rng);
}

/// Uniform real in [0, 1).
inline double uniform01(Rng& rng) {
    return std::generate_canonical<double, 64>(rng);
}

} // namespace vclab
