// Copyright 2026 The voxaug authors
// SPDX-License-Identifier: Apache-2.0

#include "voxaug/preprocess.hpp"

#include <algorithm>
#include <cmath>

namespace voxaug {

Volume window_normalize(const Volume& v, const WindowSpec& w) {
    if (v.kind != VolumeKind::raw_ct)
        throw Error("window_normalize: input must be raw_ct, got " +
                    std::string(to_string(v.kind)));
    if (!(w.width > 0.0)) throw Error("window_normalize: window width must be positive");

    const double lo = w.level - w.width / 2.0;
    Volume out = v;
    out.kind = VolumeKind::normalized;

    const std::int64_t n = static_cast<std::int64_t>(v.voxel_count());
#pragma omp parallel for schedule(static) if (n > 32768)
    for (std::int64_t i = 0; i < n; ++i) {
        double t = (static_cast<double>(v.data[i]) - lo) / w.width;
        t = std::clamp(t, 0.0, 1.0);
        out.data[i] = static_cast<float>(t);
    }
    return out;
}

Volume resample(const Volume& v, const ResampleSpec& spec) {
    for (double s : spec.target_spacing)
        if (!(s > 0.0)) throw Error("resample: target spacing must be positive");

    std::array<int, 3> odims;
    std::array<double, 3> ratio;  // source-index step per output index
    for (int a = 0; a < 3; ++a) {
        odims[a] = static_cast<int>(
            std::ceil(static_cast<double>(v.dims[a]) * v.spacing[a] / spec.target_spacing[a]));
        odims[a] = std::max(odims[a], 1);
        ratio[a] = spec.target_spacing[a] / v.spacing[a];
    }

    Volume out = make_volume(odims, spec.target_spacing, v.origin, v.kind, 0.0f);

    const int nz = odims[0], ny = odims[1], nx = odims[2];
#pragma omp parallel for schedule(static) if (out.voxel_count() > 32768)
    for (int z = 0; z < nz; ++z) {
        for (int y = 0; y < ny; ++y) {
            for (int x = 0; x < nx; ++x) {
                const double cz = z * ratio[0];
                const double cy = y * ratio[1];
                const double cx = x * ratio[2];
                float value;
                if (spec.interpolation == Interp::nearest) {
                    const int iz = std::clamp(static_cast<int>(std::llround(cz)), 0, v.dims[0] - 1);
                    const int iy = std::clamp(static_cast<int>(std::llround(cy)), 0, v.dims[1] - 1);
                    const int ix = std::clamp(static_cast<int>(std::llround(cx)), 0, v.dims[2] - 1);
                    value = v.at(iz, iy, ix);
                } else {
                    const int z0 = std::clamp(static_cast<int>(std::floor(cz)), 0, v.dims[0] - 1);
                    const int y0 = std::clamp(static_cast<int>(std::floor(cy)), 0, v.dims[1] - 1);
                    const int x0 = std::clamp(static_cast<int>(std::floor(cx)), 0, v.dims[2] - 1);
                    const int z1 = std::min(z0 + 1, v.dims[0] - 1);
                    const int y1 = std::min(y0 + 1, v.dims[1] - 1);
                    const int x1 = std::min(x0 + 1, v.dims[2] - 1);
                    const double fz = cz - z0;
                    const double fy = cy - y0;
                    const double fx = cx - x0;
                    const double c00 = v.at(z0, y0, x0) * (1.0 - fx) + v.at(z0, y0, x1) * fx;
                    const double c01 = v.at(z0, y1, x0) * (1.0 - fx) + v.at(z0, y1, x1) * fx;
                    const double c10 = v.at(z1, y0, x0) * (1.0 - fx) + v.at(z1, y0, x1) * fx;
                    const double c11 = v.at(z1, y1, x0) * (1.0 - fx) + v.at(z1, y1, x1) * fx;
                    const double c0 = c00 * (1.0 - fy) + c01 * fy;
                    const double c1 = c10 * (1.0 - fy) + c11 * fy;
                    value = static_cast<float>(c0 * (1.0 - fz) + c1 * fz);
                }
                out.at(z, y, x) = value;
            }
        }
    }
    return out;
}

Volume extract_patch(const Volume& v, const VoxelIndex& center, int side) {
    if (side <= 0 || side % 2 == 0) throw Error("extract_patch: side must be odd and positive");
    if (!v.in_bounds(center))
        throw BoundsError("extract_patch: center out of bounds");

    const float pad = *std::min_element(v.data.begin(), v.data.end());
    const int half = (side - 1) / 2;

    Volume out;
    out.dims = {side, side, side};
    out.spacing = v.spacing;
    out.origin = {v.origin[0] + (center.z - half) * v.spacing[0],
                  v.origin[1] + (center.y - half) * v.spacing[1],
                  v.origin[2] + (center.x - half) * v.spacing[2]};
    out.kind = v.kind;
    out.data.assign(out.voxel_count(), pad);

    for (int z = 0; z < side; ++z) {
        const int sz = center.z - half + z;
        if (sz < 0 || sz >= v.dims[0]) continue;
        for (int y = 0; y < side; ++y) {
            const int sy = center.y - half + y;
            if (sy < 0 || sy >= v.dims[1]) continue;
            for (int x = 0; x < side; ++x) {
                const int sx = center.x - half + x;
                if (sx < 0 || sx >= v.dims[2]) continue;
                out.at(z, y, x) = v.at(sz, sy, sx);
            }
        }
    }
    return out;
}

}  // namespace voxaug
