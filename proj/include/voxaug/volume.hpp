// Copyright 2026 The voxaug authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <vector>

#include "voxaug/errors.hpp"

namespace voxaug {

/// What the scalar field means. raw_ct holds Hounsfield units, normalized
/// holds [0,1] intensities, mask holds {0,1} flags.
enum class VolumeKind : std::uint8_t { raw_ct, normalized, mask };

const char* to_string(VolumeKind kind);

/// Grid index in (z,y,x) order. All internal arrays are z-major with x
/// contiguous; annotation files speak (x,y,z) and are converted at parse.
struct VoxelIndex {
    int z = 0;
    int y = 0;
    int x = 0;

    friend bool operator==(const VoxelIndex&, const VoxelIndex&) = default;
};

/// World-space position in millimetres, (z,y,x) order to match VoxelIndex.
struct WorldPoint {
    double z = 0.0;
    double y = 0.0;
    double x = 0.0;

    friend bool operator==(const WorldPoint&, const WorldPoint&) = default;
};

/// A 3D scalar grid plus the geometry needed to map voxels to patient space.
/// Values are stored as float: int16 HU and {0,1} masks are exact, and
/// normalized intensities round-trip through MET_FLOAT payloads bit-for-bit.
struct Volume {
    std::array<int, 3> dims{0, 0, 0};            // (nz, ny, nx)
    std::array<double, 3> spacing{1.0, 1.0, 1.0};  // (sz, sy, sx) mm/voxel
    std::array<double, 3> origin{0.0, 0.0, 0.0};   // world mm of voxel (0,0,0)
    VolumeKind kind = VolumeKind::raw_ct;
    std::vector<float> data;  // z-major, x fastest

    std::size_t voxel_count() const {
        return static_cast<std::size_t>(dims[0]) * static_cast<std::size_t>(dims[1]) *
               static_cast<std::size_t>(dims[2]);
    }

    std::size_t linear(int z, int y, int x) const {
        return (static_cast<std::size_t>(z) * dims[1] + static_cast<std::size_t>(y)) * dims[2] +
               static_cast<std::size_t>(x);
    }

    float at(int z, int y, int x) const { return data[linear(z, y, x)]; }
    float& at(int z, int y, int x) { return data[linear(z, y, x)]; }

    float at(const VoxelIndex& i) const { return at(i.z, i.y, i.x); }
    float& at(const VoxelIndex& i) { return at(i.z, i.y, i.x); }

    bool in_bounds(const VoxelIndex& i) const {
        return i.z >= 0 && i.z < dims[0] && i.y >= 0 && i.y < dims[1] && i.x >= 0 && i.x < dims[2];
    }
};

/// Allocates a volume filled with a constant.
Volume make_volume(std::array<int, 3> dims, std::array<double, 3> spacing,
                   std::array<double, 3> origin, VolumeKind kind, float fill = 0.0f);

/// Throws Error if any structural invariant is broken: data length vs dims,
/// non-positive spacing, mask values outside {0,1}, normalized values
/// outside [0,1].
void validate(const Volume& v);

/// Nearest voxel to a world point; rounding is half-away-from-zero so
/// boundary cases are deterministic. Throws BoundsError when the rounded
/// index leaves the grid on any axis.
VoxelIndex world_to_voxel(const Volume& v, const WorldPoint& p);

/// World position of a voxel centre. Inverts world_to_voxel exactly on
/// in-bounds indices. Throws BoundsError on out-of-range indices.
WorldPoint voxel_to_world(const Volume& v, const VoxelIndex& i);

}  // namespace voxaug
