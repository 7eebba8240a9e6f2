// Copyright 2026 The voxaug authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <filesystem>
#include <span>
#include <vector>

#include "voxaug/align.hpp"
#include "voxaug/volume.hpp"

namespace voxaug {

/// Per-voxel categorical model over quantized gray values. For voxel v and
/// observed bin i with count n_i, the sampling probability is
/// n_i / sum_j(n_j); voxels never observed stay unpopulated. Counts are
/// kept sparse and sorted by bin for deterministic traversal.
struct NoduleStatsModel {
    int side = 0;
    int bins = 256;
    std::uint32_t cube_count = 0;  // cubes counted in; min_support is relative to this

    struct BinCount {
        std::uint32_t bin = 0;
        std::uint32_t count = 0;
        friend bool operator==(const BinCount&, const BinCount&) = default;
    };
    /// One slot per cube voxel (side^3, z-major); empty slot = unpopulated.
    std::vector<std::vector<BinCount>> counts;

    std::size_t voxel_count() const {
        return static_cast<std::size_t>(side) * side * side;
    }
    std::uint64_t total(std::size_t voxel) const {
        std::uint64_t t = 0;
        for (const BinCount& bc : counts[voxel]) t += bc.count;
        return t;
    }

    friend bool operator==(const NoduleStatsModel&, const NoduleStatsModel&) = default;
};

/// A sampled nodule. Voxels outside the support carry background 0.
struct GeneratedNodule {
    int side = 0;
    std::uint64_t seed = 0;
    std::vector<float> cube;             // side^3 intensities
    std::vector<std::uint8_t> support;   // side^3, 1 where the model populated

    std::size_t linear(int z, int y, int x) const {
        return (static_cast<std::size_t>(z) * side + y) * side + x;
    }
};

/// Counts quantized gray occurrences per voxel across aligned cubes.
/// Only foreground-supported voxels of each cube are counted. All cubes
/// must share one side; the list must be nonempty; bins >= 2.
NoduleStatsModel build_model(std::span<const AlignedCube> cubes, int bins);

/// Adds src's counts into dst (same side/bins). Count accumulation is
/// associative and commutative, so partial models over disjoint cube
/// subsets can be built independently and merged.
void merge_models(NoduleStatsModel& dst, const NoduleStatsModel& src);

/// Draws one gray bin per populated voxel by inverse CDF. Each voxel uses
/// an independent substream keyed on (seed, voxel index): results do not
/// depend on evaluation order and the same seed reproduces the identical
/// nodule. Voxels with total/cube_count below min_support are left
/// unpopulated. Bins decode to their intensity midpoints. Throws Error on
/// an empty model.
GeneratedNodule sample_nodule(const NoduleStatsModel& m, std::uint64_t seed,
                              double min_support = 0.0);

/// Versioned little-endian binary serialization. Layout:
///   bytes 0..3   magic "VXNM"
///   u32          version (currently 1)
///   u32          side
///   u32          bins
///   u32          cube_count
///   u64          number of populated voxel records
///   per record:  u32 voxel linear index (z-major),
///                u32 entry count E,
///                E x { u32 bin, u32 count }, entries sorted by bin
/// load_model(save_model(m)) == m on every field. Truncation, bad magic,
/// trailing bytes -> ParseError "corrupt"; unknown version -> ParseError
/// "version".
std::vector<std::uint8_t> save_model(const NoduleStatsModel& m);
NoduleStatsModel load_model(std::span<const std::uint8_t> bytes);

void save_model_file(const NoduleStatsModel& m, const std::filesystem::path& path);
NoduleStatsModel load_model_file(const std::filesystem::path& path);

}  // namespace voxaug
