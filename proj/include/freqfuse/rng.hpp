#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>
#include <vector>

namespace freqfuse {

// SplitMix64 (Steele, Lea & Flood; public domain reference by Vigna).
// 64 bits of state, fixed public algorithm, identical output on every
// platform, so seeds written into configs and reports reproduce exactly
// across implementations.
class SplitMix64 {
public:
    explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next() {
        std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ULL);
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }

    // Unbiased-enough bounded draw via the 64x64->128 multiply-high trick
    // (Lemire); the bias of at most bound/2^64 is irrelevant here and the
    // rule is trivial to restate in other languages.
    std::uint64_t next_below(std::uint64_t bound) {
        return static_cast<std::uint64_t>(
            (static_cast<unsigned __int128>(next()) * bound) >> 64);
    }

    // Uniform in [0,1) with 53 random bits.
    double next_unit() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

    // Standard normal via Box-Muller on next_unit(); portable, unlike
    // std::normal_distribution.
    double next_gaussian() {
        double u1 = next_unit();
        const double u2 = next_unit();
        if (u1 <= 0.0) u1 = 0x1.0p-53;
        return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
    }

    // Stream-split rule: the seed for task i is the (i+1)-th raw output of a
    // SplitMix64 stream seeded with the master seed, computed in O(1) from
    // the closed form of the state walk.
    static std::uint64_t task_seed(std::uint64_t master_seed, std::uint64_t task_index) {
        std::uint64_t z = master_seed + (task_index + 1) * 0x9E3779B97F4A7C15ULL;
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }

private:
    std::uint64_t state_;
};

// First `count` positions of a Fisher-Yates shuffle of [0, population):
// a uniform draw of `count` distinct indices, in draw order.
inline std::vector<std::uint32_t> sample_without_replacement(std::uint32_t population,
                                                             std::uint32_t count,
                                                             SplitMix64& rng) {
    std::vector<std::uint32_t> indices(population);
    for (std::uint32_t i = 0; i < population; ++i) indices[i] = i;
    for (std::uint32_t i = 0; i < count; ++i) {
        const std::uint32_t j = i + static_cast<std::uint32_t>(rng.next_below(population - i));
        std::swap(indices[i], indices[j]);
    }
    indices.resize(count);
    return indices;
}

}  // namespace freqfuse
