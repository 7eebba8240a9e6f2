// Copyright 2026 The voxaug authors
// SPDX-License-Identifier: Apache-2.0

#include "voxaug/mask.hpp"

#include <algorithm>
#include <cmath>

namespace voxaug {

Volume make_mask(const Volume& v, const Annotation& ann) {
    if (!ann.diameter_mm)
        throw Error("make_mask: annotation has no diameter");
    const double r = *ann.diameter_mm / 2.0;
    if (!(r > 0.0)) throw Error("make_mask: diameter must be positive");
    // also rejects centres outside the grid
    const VoxelIndex center = world_to_voxel(v, ann.center_world);
    (void)center;

    Volume mask = make_volume(v.dims, v.spacing, v.origin, VolumeKind::mask, 0.0f);

    // bounding box of the sphere, clamped to the grid
    const double r2 = r * r;
    int lo[3], hi[3];
    const double c[3] = {ann.center_world.z, ann.center_world.y, ann.center_world.x};
    for (int a = 0; a < 3; ++a) {
        lo[a] = std::max(0, static_cast<int>(std::floor((c[a] - r - v.origin[a]) / v.spacing[a])));
        hi[a] = std::min(v.dims[a] - 1,
                         static_cast<int>(std::ceil((c[a] + r - v.origin[a]) / v.spacing[a])));
    }

#pragma omp parallel for schedule(static) if (v.voxel_count() > 32768)
    for (int z = lo[0]; z <= hi[0]; ++z) {
        const double dz = v.origin[0] + z * v.spacing[0] - c[0];
        for (int y = lo[1]; y <= hi[1]; ++y) {
            const double dy = v.origin[1] + y * v.spacing[1] - c[1];
            for (int x = lo[2]; x <= hi[2]; ++x) {
                const double dx = v.origin[2] + x * v.spacing[2] - c[2];
                if (dz * dz + dy * dy + dx * dx <= r2) mask.at(z, y, x) = 1.0f;
            }
        }
    }
    return mask;
}

Volume make_mask_union(const Volume& v, std::span<const Annotation> anns) {
    Volume acc = make_volume(v.dims, v.spacing, v.origin, VolumeKind::mask, 0.0f);
    for (const Annotation& a : anns) mask_or(acc, make_mask(v, a));
    return acc;
}

void mask_or(Volume& dst, const Volume& src) {
    if (dst.dims != src.dims) throw Error("mask_or: dim mismatch");
    for (std::size_t i = 0; i < dst.data.size(); ++i)
        if (src.data[i] != 0.0f) dst.data[i] = 1.0f;
}

}  // namespace voxaug
