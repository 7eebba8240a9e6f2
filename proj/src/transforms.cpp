// Copyright 2026 The voxaug authors
// SPDX-License-Identifier: Apache-2.0

#include "voxaug/transforms.hpp"

namespace voxaug {

Volume flip_axis(const Volume& v, int axis) {
    if (axis < 0 || axis > 2) throw Error("flip_axis: axis must be 0, 1, or 2");
    Volume out = v;
    const int nz = v.dims[0], ny = v.dims[1], nx = v.dims[2];
    for (int z = 0; z < nz; ++z)
        for (int y = 0; y < ny; ++y)
            for (int x = 0; x < nx; ++x) {
                int sz = axis == 0 ? nz - 1 - z : z;
                int sy = axis == 1 ? ny - 1 - y : y;
                int sx = axis == 2 ? nx - 1 - x : x;
                out.at(z, y, x) = v.at(sz, sy, sx);
            }
    return out;
}

Volume rotate90_axial(const Volume& v, int k) {
    k = ((k % 4) + 4) % 4;
    if (k == 0) return v;
    Volume cur = v;
    for (int step = 0; step < k; ++step) {
        Volume next;
        next.kind = cur.kind;
        next.dims = {cur.dims[0], cur.dims[2], cur.dims[1]};
        next.spacing = {cur.spacing[0], cur.spacing[2], cur.spacing[1]};
        next.origin = cur.origin;
        next.data.resize(cur.data.size());
        const int nz = cur.dims[0], ny = cur.dims[1], nx = cur.dims[2];
        // (y, x) -> (x, ny-1-y)
        for (int z = 0; z < nz; ++z)
            for (int y = 0; y < ny; ++y)
                for (int x = 0; x < nx; ++x) next.at(z, x, ny - 1 - y) = cur.at(z, y, x);
        cur = std::move(next);
    }
    return cur;
}

}  // namespace voxaug
