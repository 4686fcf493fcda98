#pragma once

#include <cstdint>
#include <random>

#include "qent/linalg.hpp"

namespace qent {

// SplitMix64 finalizer; bijective mixing of a 64-bit word.
constexpr std::uint64_t mix64(std::uint64_t x) noexcept {
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
}

// Seed of the index-th independent stream under a master seed. Depends only
// on (master, index), so parallel campaigns are scheduling-independent.
constexpr std::uint64_t sub_seed(std::uint64_t master, std::uint64_t index) noexcept {
    return mix64(mix64(master) ^ mix64(index ^ 0xD1B54A32D192ED03ULL));
}

using Rng = std::mt19937_64;

inline Rng make_rng(std::uint64_t seed) { return Rng(mix64(seed)); }

// Independent standard normal real and imaginary parts.
inline Complex complex_normal(Rng& rng) {
    std::normal_distribution<double> normal(0.0, 1.0);
    const double re = normal(rng);
    const double im = normal(rng);
    return {re, im};
}

// Haar-distributed n x n unitary (Gram-Schmidt of a complex Ginibre matrix).
ComplexMatrix random_unitary(std::size_t n, std::uint64_t seed);

}  // namespace qent
