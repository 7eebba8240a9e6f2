// Copyright 2026 The voxaug authors
// SPDX-License-Identifier: Apache-2.0

#include "voxaug/volume.hpp"

#include <cmath>
#include <string>

namespace voxaug {

const char* to_string(VolumeKind kind) {
    switch (kind) {
        case VolumeKind::raw_ct: return "raw_ct";
        case VolumeKind::normalized: return "normalized";
        case VolumeKind::mask: return "mask";
    }
    return "?";
}

Volume make_volume(std::array<int, 3> dims, std::array<double, 3> spacing,
                   std::array<double, 3> origin, VolumeKind kind, float fill) {
    Volume v;
    v.dims = dims;
    v.spacing = spacing;
    v.origin = origin;
    v.kind = kind;
    if (dims[0] <= 0 || dims[1] <= 0 || dims[2] <= 0)
        throw Error("make_volume: dims must be positive");
    v.data.assign(v.voxel_count(), fill);
    validate(v);
    return v;
}

void validate(const Volume& v) {
    if (v.dims[0] <= 0 || v.dims[1] <= 0 || v.dims[2] <= 0)
        throw Error("volume: dims must be positive, got (" + std::to_string(v.dims[0]) + "," +
                    std::to_string(v.dims[1]) + "," + std::to_string(v.dims[2]) + ")");
    for (double s : v.spacing)
        if (!(s > 0.0)) throw Error("volume: spacing components must be strictly positive");
    if (v.data.size() != v.voxel_count())
        throw Error("volume: data length " + std::to_string(v.data.size()) +
                    " does not match dims product " + std::to_string(v.voxel_count()));
    if (v.kind == VolumeKind::mask) {
        for (float f : v.data)
            if (f != 0.0f && f != 1.0f) throw Error("volume: mask values must be 0 or 1");
    } else if (v.kind == VolumeKind::normalized) {
        for (float f : v.data)
            if (!(f >= 0.0f && f <= 1.0f))
                throw Error("volume: normalized values must lie in [0,1]");
    }
}

namespace {

// round-half-away-from-zero, the documented rule for voxel snapping
long round_away(double x) { return std::llround(x); }

}  // namespace

VoxelIndex world_to_voxel(const Volume& v, const WorldPoint& p) {
    const double cz = (p.z - v.origin[0]) / v.spacing[0];
    const double cy = (p.y - v.origin[1]) / v.spacing[1];
    const double cx = (p.x - v.origin[2]) / v.spacing[2];
    VoxelIndex i{static_cast<int>(round_away(cz)), static_cast<int>(round_away(cy)),
                 static_cast<int>(round_away(cx))};
    if (!v.in_bounds(i))
        throw BoundsError("world_to_voxel: point (" + std::to_string(p.z) + "," +
                          std::to_string(p.y) + "," + std::to_string(p.x) +
                          ") mm maps outside the grid");
    return i;
}

WorldPoint voxel_to_world(const Volume& v, const VoxelIndex& i) {
    if (!v.in_bounds(i))
        throw BoundsError("voxel_to_world: index (" + std::to_string(i.z) + "," +
                          std::to_string(i.y) + "," + std::to_string(i.x) + ") out of bounds");
    return WorldPoint{v.origin[0] + i.z * v.spacing[0], v.origin[1] + i.y * v.spacing[1],
                      v.origin[2] + i.x * v.spacing[2]};
}

}  // namespace voxaug
