#pragma once

#include <cstdint>
#include <random>
#include <span>
#include <stdexcept>

namespace schedsim::rng {

// Stream ids keep derived RNG sequences disjoint across the places that
// draw from the same master seed.
namespace stream {
inline constexpr std::uint64_t ants = 0x01;
inline constexpr std::uint64_t csa_clones = 0x02;
inline constexpr std::uint64_t csa_main = 0x03;
inline constexpr std::uint64_t workload = 0x04;
inline constexpr std::uint64_t pool = 0x05;
inline constexpr std::uint64_t csa_refine = 0x06;
}  // namespace stream

// splitmix64; used only to mix seeds, not as the working generator.
inline std::uint64_t splitmix64(std::uint64_t& state) {
    state += 0x9e3779b97f4a7c15ULL;
    std::uint64_t z = state;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

inline std::uint64_t mix(std::uint64_t a, std::uint64_t b) {
    std::uint64_t s = a;
    std::uint64_t h = splitmix64(s);
    s ^= b + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
    return splitmix64(s);
}

inline std::uint64_t mix(std::uint64_t a, std::uint64_t b, std::uint64_t c) {
    return mix(mix(a, b), c);
}

inline std::uint64_t mix(std::uint64_t a, std::uint64_t b, std::uint64_t c,
                         std::uint64_t d) {
    return mix(mix(a, b, c), d);
}

// Independently seeded generator for a (seed, ...) coordinate, e.g.
// (master seed, iteration, ant index). Same coordinates, same stream.
inline std::mt19937_64 substream(std::uint64_t seed, std::uint64_t a) {
    return std::mt19937_64(mix(seed, a));
}
inline std::mt19937_64 substream(std::uint64_t seed, std::uint64_t a,
                                 std::uint64_t b) {
    return std::mt19937_64(mix(seed, a, b));
}
inline std::mt19937_64 substream(std::uint64_t seed, std::uint64_t a,
                                 std::uint64_t b, std::uint64_t c) {
    return std::mt19937_64(mix(seed, a, b, c));
}

// Uniform double in [0, 1). Bit layout is fixed so results do not depend
// on the standard library's distribution implementation.
inline double uniform01(std::mt19937_64& g) {
    return static_cast<double>(g() >> 11) * 0x1.0p-53;
}

// Same conversion applied to an already-mixed value. For spots that need
// one or two draws per coordinate, building a full generator is wasted
// work; mix() the coordinates and convert directly instead.
inline double to_unit01(std::uint64_t mixed) {
    return static_cast<double>(mixed >> 11) * 0x1.0p-53;
}

inline double uniform_range(std::mt19937_64& g, double lo, double hi) {
    return lo + (hi - lo) * uniform01(g);
}

// Uniform integer in [0, n).
inline int uniform_int(std::mt19937_64& g, int n) {
    return static_cast<int>(uniform01(g) * static_cast<double>(n));
}

// Roulette-wheel draw over non-negative weights. Zero-weight entries are
// never selected.
inline std::size_t sample_discrete(std::span<const double> weights,
                                   std::mt19937_64& g) {
    double total = 0.0;
    std::size_t last_positive = weights.size();
    for (std::size_t i = 0; i < weights.size(); ++i) {
        total += weights[i];
        if (weights[i] > 0.0) last_positive = i;
    }
    if (!(total > 0.0) || last_positive == weights.size()) {
        throw std::invalid_argument("sample_discrete: no positive weight");
    }
    const double r = uniform01(g) * total;
    double cumulative = 0.0;
    for (std::size_t i = 0; i < weights.size(); ++i) {
        cumulative += weights[i];
        if (cumulative > r) return i;
    }
    // Rounding pushed r past the last cumulative sum.
    return last_positive;
}

}  // namespace schedsim::rng
