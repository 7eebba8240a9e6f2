// Copyright 2026 The voxaug authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <vector>

#include "voxaug/volume.hpp"

namespace voxaug {

/// A nodule cube translated so its centroid sits on the geometric centre,
/// ready to be counted into the statistics model. `support` marks the
/// (shifted) foreground voxels; only those enter the per-voxel gray
/// statistics; the surrounding lung background does not describe the
/// nodule.
struct AlignedCube {
    int side = 0;
    std::vector<float> data;          // side^3 normalized intensities
    std::vector<std::uint8_t> support;  // side^3 foreground flags

    VoxelIndex center() const {
        const int h = (side - 1) / 2;
        return {h, h, h};
    }
    std::size_t linear(int z, int y, int x) const {
        return (static_cast<std::size_t>(z) * side + y) * side + x;
    }
};

/// Translates cube and mask by an integer shift that moves the rounded
/// intensity-weighted centroid of the masked voxels to the geometric
/// centre ((side-1)/2 per axis). Voxels shifted in from outside are padded
/// with the cube minimum (air); support is padded with 0. If the masked
/// intensities sum to zero the unweighted centroid is used. Requires an
/// odd cubic normalized input, a mask of the same shape, and a nonempty
/// mask.
AlignedCube align_cube(const Volume& cube, const Volume& mask);

}  // namespace voxaug
