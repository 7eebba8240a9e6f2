// Copyright 2026 The voxaug authors
// SPDX-License-Identifier: Apache-2.0

#include "voxaug/fusion.hpp"

#include <algorithm>
#include <cmath>

#include "voxaug/rng.hpp"

namespace voxaug {

FusionResult fuse(const Volume& host, const GeneratedNodule& nodule, const VoxelIndex& site) {
    if (host.kind != VolumeKind::normalized)
        throw Error("fuse: host must be normalized");
    const int side = nodule.side;
    if (side <= 0 || nodule.cube.size() != static_cast<std::size_t>(side) * side * side ||
        nodule.support.size() != nodule.cube.size())
        throw Error("fuse: malformed nodule");
    const int half = (side - 1) / 2;
    if (site.z - half < 0 || site.y - half < 0 || site.x - half < 0 ||
        site.z - half + side > host.dims[0] || site.y - half + side > host.dims[1] ||
        site.x - half + side > host.dims[2])
        throw BoundsError("fuse: nodule cube overhangs the host boundary at site (" +
                          std::to_string(site.z) + "," + std::to_string(site.y) + "," +
                          std::to_string(site.x) + ")");

    FusionResult r;
    r.fused = host;
    r.mask = make_volume(host.dims, host.spacing, host.origin, VolumeKind::mask, 0.0f);
    r.site = site;

    for (int z = 0; z < side; ++z)
        for (int y = 0; y < side; ++y)
            for (int x = 0; x < side; ++x) {
                const std::size_t ni = nodule.linear(z, y, x);
                if (!nodule.support[ni]) continue;
                const int hz = site.z - half + z;
                const int hy = site.y - half + y;
                const int hx = site.x - half + x;
                r.fused.at(hz, hy, hx) = nodule.cube[ni];
                r.mask.at(hz, hy, hx) = 1.0f;
            }
    return r;
}

std::vector<VoxelIndex> propose_sites(const Volume& host, float lung_threshold, int cube_side,
                                      int n, std::uint64_t seed) {
    if (n < 1) throw Error("propose_sites: n must be >= 1");
    if (cube_side <= 0 || cube_side % 2 == 0)
        throw Error("propose_sites: cube side must be odd and positive");
    const int half = (cube_side - 1) / 2;
    if (host.dims[0] < cube_side || host.dims[1] < cube_side || host.dims[2] < cube_side)
        throw Error("propose_sites: host smaller than the cube on some axis");

    const int stride = std::max(1, cube_side / 2);
    const double inv_vol = 1.0 / (static_cast<double>(cube_side) * cube_side * cube_side);

    // candidate lattice of in-bounds centres
    std::vector<VoxelIndex> candidates;
    for (int z = half; z + half < host.dims[0]; z += stride)
        for (int y = half; y + half < host.dims[1]; y += stride)
            for (int x = half; x + half < host.dims[2]; x += stride)
                candidates.push_back({z, y, x});

    // exact cube means, order-independent
    std::vector<char> feasible(candidates.size(), 0);
    const std::int64_t nc = static_cast<std::int64_t>(candidates.size());
#pragma omp parallel for schedule(static) if (nc > 64)
    for (std::int64_t i = 0; i < nc; ++i) {
        const VoxelIndex c = candidates[i];
        double sum = 0.0;
        for (int z = c.z - half; z <= c.z + half; ++z)
            for (int y = c.y - half; y <= c.y + half; ++y)
                for (int x = c.x - half; x <= c.x + half; ++x) sum += host.at(z, y, x);
        feasible[i] = (sum * inv_vol < lung_threshold) ? 1 : 0;
    }

    std::vector<VoxelIndex> pool;
    for (std::size_t i = 0; i < candidates.size(); ++i)
        if (feasible[i]) pool.push_back(candidates[i]);

    // seeded Fisher-Yates, then greedy separation filter
    SplitMix64 rng(seed);
    for (std::size_t i = pool.size(); i > 1; --i)
        std::swap(pool[i - 1], pool[rng.next_below(i)]);

    std::vector<VoxelIndex> sites;
    for (const VoxelIndex& c : pool) {
        bool ok = true;
        for (const VoxelIndex& s : sites) {
            const int d = std::max({std::abs(c.z - s.z), std::abs(c.y - s.y),
                                    std::abs(c.x - s.x)});
            if (d < cube_side) {
                ok = false;
                break;
            }
        }
        if (ok) {
            sites.push_back(c);
            if (static_cast<int>(sites.size()) == n) break;
        }
    }
    if (static_cast<int>(sites.size()) < n)
        throw Error("propose_sites: only " + std::to_string(sites.size()) + " of " +
                    std::to_string(n) + " requested sites are feasible");
    return sites;
}

}  // namespace voxaug
