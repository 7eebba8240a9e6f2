// Copyright 2026 The voxaug authors
// SPDX-License-Identifier: Apache-2.0

#include "voxaug/connected.hpp"

#include <vector>

namespace voxaug {

Volume segment_foreground(const Volume& cube, float threshold) {
    if (cube.kind != VolumeKind::normalized)
        throw Error("segment_foreground: input must be normalized");
    if (!(threshold >= 0.0f && threshold <= 1.0f))
        throw Error("segment_foreground: threshold must lie in [0,1]");

    const int nz = cube.dims[0], ny = cube.dims[1], nx = cube.dims[2];
    const std::size_t n = cube.voxel_count();

    // 0 = background, -1 = unlabeled foreground, >0 = component id
    std::vector<std::int32_t> label(n, 0);
    for (std::size_t i = 0; i < n; ++i)
        if (cube.data[i] >= threshold) label[i] = -1;

    std::int32_t next_id = 0;
    std::int32_t best_id = 0;
    std::size_t best_size = 0;
    std::vector<std::size_t> stack;

    for (std::size_t seed = 0; seed < n; ++seed) {
        if (label[seed] != -1) continue;
        const std::int32_t id = ++next_id;
        std::size_t size = 0;
        stack.clear();
        stack.push_back(seed);
        label[seed] = id;
        while (!stack.empty()) {
            const std::size_t cur = stack.back();
            stack.pop_back();
            ++size;
            const int z = static_cast<int>(cur / (static_cast<std::size_t>(ny) * nx));
            const int rem = static_cast<int>(cur % (static_cast<std::size_t>(ny) * nx));
            const int y = rem / nx;
            const int x = rem % nx;
            const int dz[6] = {-1, 1, 0, 0, 0, 0};
            const int dy[6] = {0, 0, -1, 1, 0, 0};
            const int dx[6] = {0, 0, 0, 0, -1, 1};
            for (int k = 0; k < 6; ++k) {
                const int zz = z + dz[k], yy = y + dy[k], xx = x + dx[k];
                if (zz < 0 || zz >= nz || yy < 0 || yy >= ny || xx < 0 || xx >= nx) continue;
                const std::size_t ni = cube.linear(zz, yy, xx);
                if (label[ni] == -1) {
                    label[ni] = id;
                    stack.push_back(ni);
                }
            }
        }
        if (size > best_size) {
            best_size = size;
            best_id = id;
        }
    }

    Volume mask = make_volume(cube.dims, cube.spacing, cube.origin, VolumeKind::mask, 0.0f);
    if (best_id != 0)
        for (std::size_t i = 0; i < n; ++i)
            if (label[i] == best_id) mask.data[i] = 1.0f;
    return mask;
}

}  // namespace voxaug
