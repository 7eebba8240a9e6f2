// Copyright 2026 The voxaug authors
// SPDX-License-Identifier: Apache-2.0

#include "voxaug/align.hpp"

#include <algorithm>
#include <cmath>

namespace voxaug {

AlignedCube align_cube(const Volume& cube, const Volume& mask) {
    if (cube.dims[0] != cube.dims[1] || cube.dims[1] != cube.dims[2])
        throw Error("align_cube: input must be a cube");
    const int side = cube.dims[0];
    if (side % 2 == 0) throw Error("align_cube: cube side must be odd");
    if (cube.kind != VolumeKind::normalized)
        throw Error("align_cube: cube must be normalized");
    if (mask.dims != cube.dims) throw Error("align_cube: mask shape differs from cube");

    double wsum = 0.0, zsum = 0.0, ysum = 0.0, xsum = 0.0;
    std::size_t count = 0;
    double zu = 0.0, yu = 0.0, xu = 0.0;  // unweighted fallback
    for (int z = 0; z < side; ++z)
        for (int y = 0; y < side; ++y)
            for (int x = 0; x < side; ++x) {
                if (mask.at(z, y, x) == 0.0f) continue;
                const double w = cube.at(z, y, x);
                wsum += w;
                zsum += w * z;
                ysum += w * y;
                xsum += w * x;
                zu += z;
                yu += y;
                xu += x;
                ++count;
            }
    if (count == 0) throw Error("align_cube: mask is empty");

    double cz, cy, cx;
    if (wsum > 0.0) {
        cz = zsum / wsum;
        cy = ysum / wsum;
        cx = xsum / wsum;
    } else {
        cz = zu / count;
        cy = yu / count;
        cx = xu / count;
    }

    const int half = (side - 1) / 2;
    const int shift_z = half - static_cast<int>(std::llround(cz));
    const int shift_y = half - static_cast<int>(std::llround(cy));
    const int shift_x = half - static_cast<int>(std::llround(cx));

    const float pad = *std::min_element(cube.data.begin(), cube.data.end());

    AlignedCube out;
    out.side = side;
    out.data.assign(cube.data.size(), pad);
    out.support.assign(cube.data.size(), 0);
    for (int z = 0; z < side; ++z) {
        const int sz = z - shift_z;
        if (sz < 0 || sz >= side) continue;
        for (int y = 0; y < side; ++y) {
            const int sy = y - shift_y;
            if (sy < 0 || sy >= side) continue;
            for (int x = 0; x < side; ++x) {
                const int sx = x - shift_x;
                if (sx < 0 || sx >= side) continue;
                out.data[out.linear(z, y, x)] = cube.at(sz, sy, sx);
                out.support[out.linear(z, y, x)] = mask.at(sz, sy, sx) != 0.0f ? 1 : 0;
            }
        }
    }
    return out;
}

}  // namespace voxaug
