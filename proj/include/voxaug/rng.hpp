// Copyright 2026 The voxaug authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cmath>
#include <cstdint>

namespace voxaug {

/// SplitMix64 generator. Small state, splittable by construction, and
/// identical output on every platform, which is what the reproducibility
/// contracts here actually need (std:: distributions are not portable).
class SplitMix64 {
public:
    explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next_u64() {
        std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ull);
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
        return z ^ (z >> 31);
    }

    /// Uniform double in [0,1), 53 random bits.
    double next_double() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    /// Uniform integer in [0,n). Rejection-free Lemire reduction is not
    /// needed at these call rates; multiply-shift keeps it branch-light
    /// and still unbiased to ~2^-64.
    std::uint64_t next_below(std::uint64_t n) {
        return static_cast<std::uint64_t>((static_cast<unsigned __int128>(next_u64()) * n) >> 64);
    }

    /// Standard normal via Box-Muller (one value per call, second discarded).
    double next_gaussian() {
        // u1 in (0,1] so log() is finite.
        double u1 = static_cast<double>((next_u64() >> 11) + 1) * 0x1.0p-53;
        double u2 = next_double();
        return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * 3.14159265358979323846 * u2);
    }

private:
    std::uint64_t state_;
};

/// Mixes a user seed with a stream index into an independent SplitMix64
/// state. Used for per-voxel substreams: drawing voxel k never consumes
/// randomness from voxel j, so parallel evaluation order cannot change
/// results.
inline std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t stream) {
    std::uint64_t z = seed ^ (stream * 0xA24BAED4963EE407ull + 0x9FB21C651E98DF25ull);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
}

inline SplitMix64 substream(std::uint64_t seed, std::uint64_t stream) {
    return SplitMix64(mix_seed(seed, stream));
}

}  // namespace voxaug
