// Copyright 2026 The voxaug authors
// SPDX-License-Identifier: Apache-2.0

#include "voxaug/reference.hpp"

#include <algorithm>
#include <cmath>

#include "voxaug/quantize.hpp"
#include "voxaug/rng.hpp"

namespace voxaug::reference {

Volume window_normalize(const Volume& v, const WindowSpec& w) {
    if (v.kind != VolumeKind::raw_ct)
        throw Error("window_normalize: input must be raw_ct");
    if (!(w.width > 0.0)) throw Error("window_normalize: window width must be positive");
    const double lo = w.level - w.width / 2.0;
    Volume out = v;
    out.kind = VolumeKind::normalized;
    for (std::size_t i = 0; i < v.data.size(); ++i) {
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
    std::array<double, 3> ratio;
    for (int a = 0; a < 3; ++a) {
        odims[a] = std::max(
            1, static_cast<int>(std::ceil(static_cast<double>(v.dims[a]) * v.spacing[a] /
                                          spec.target_spacing[a])));
        ratio[a] = spec.target_spacing[a] / v.spacing[a];
    }
    Volume out = make_volume(odims, spec.target_spacing, v.origin, v.kind, 0.0f);

    for (int z = 0; z < odims[0]; ++z)
        for (int y = 0; y < odims[1]; ++y)
            for (int x = 0; x < odims[2]; ++x) {
                const double cz = z * ratio[0];
                const double cy = y * ratio[1];
                const double cx = x * ratio[2];
                if (spec.interpolation == Interp::nearest) {
                    const int iz = std::clamp(static_cast<int>(std::llround(cz)), 0, v.dims[0] - 1);
                    const int iy = std::clamp(static_cast<int>(std::llround(cy)), 0, v.dims[1] - 1);
                    const int ix = std::clamp(static_cast<int>(std::llround(cx)), 0, v.dims[2] - 1);
                    out.at(z, y, x) = v.at(iz, iy, ix);
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
                    out.at(z, y, x) = static_cast<float>(c0 * (1.0 - fz) + c1 * fz);
                }
            }
    return out;
}

Volume make_mask(const Volume& v, const Annotation& ann) {
    if (!ann.diameter_mm) throw Error("make_mask: annotation has no diameter");
    const double r = *ann.diameter_mm / 2.0;
    if (!(r > 0.0)) throw Error("make_mask: diameter must be positive");
    (void)world_to_voxel(v, ann.center_world);  // bounds check

    Volume mask = make_volume(v.dims, v.spacing, v.origin, VolumeKind::mask, 0.0f);
    const double r2 = r * r;
    // full-grid sweep; no bounding box on purpose
    for (int z = 0; z < v.dims[0]; ++z) {
        const double dz = v.origin[0] + z * v.spacing[0] - ann.center_world.z;
        for (int y = 0; y < v.dims[1]; ++y) {
            const double dy = v.origin[1] + y * v.spacing[1] - ann.center_world.y;
            for (int x = 0; x < v.dims[2]; ++x) {
                const double dx = v.origin[2] + x * v.spacing[2] - ann.center_world.x;
                if (dz * dz + dy * dy + dx * dx <= r2) mask.at(z, y, x) = 1.0f;
            }
        }
    }
    return mask;
}

GeneratedNodule sample_nodule(const NoduleStatsModel& m, std::uint64_t seed,
                              double min_support) {
    bool any = false;
    for (const auto& slot : m.counts)
        if (!slot.empty()) {
            any = true;
            break;
        }
    if (!any) throw Error("sample_nodule: model has no populated voxels");

    GeneratedNodule g;
    g.side = m.side;
    g.seed = seed;
    g.cube.assign(m.voxel_count(), 0.0f);
    g.support.assign(m.voxel_count(), 0);

    for (std::size_t v = 0; v < m.voxel_count(); ++v) {
        const auto& slot = m.counts[v];
        if (slot.empty()) continue;
        std::uint64_t total = 0;
        for (const auto& bc : slot) total += bc.count;
        if (m.cube_count > 0 &&
            static_cast<double>(total) / static_cast<double>(m.cube_count) < min_support)
            continue;
        SplitMix64 rng = substream(seed, static_cast<std::uint64_t>(v));
        const double u = rng.next_double() * static_cast<double>(total);
        double acc = 0.0;
        std::uint32_t chosen = slot.back().bin;
        for (const auto& bc : slot) {
            acc += static_cast<double>(bc.count);
            if (u < acc) {
                chosen = bc.bin;
                break;
            }
        }
        g.cube[v] = bin_midpoint(static_cast<int>(chosen), m.bins);
        g.support[v] = 1;
    }
    return g;
}

Volume add_noise(const Volume& patch, const NoiseSpec& spec) {
    if (patch.kind != VolumeKind::normalized)
        throw Error("add_noise: patch must be normalized");
    if (spec.kind == NoiseKind::salt_pepper) {
        if (!(spec.magnitude >= 0.0 && spec.magnitude <= 1.0))
            throw Error("add_noise: salt_pepper magnitude must lie in [0,1]");
    } else if (!(spec.magnitude >= 0.0)) {
        throw Error("add_noise: gaussian magnitude must be >= 0");
    }
    Volume out = patch;
    for (std::size_t v = 0; v < patch.data.size(); ++v) {
        SplitMix64 rng = substream(spec.seed, static_cast<std::uint64_t>(v));
        if (spec.kind == NoiseKind::gaussian) {
            const double noisy = patch.data[v] + rng.next_gaussian() * spec.magnitude;
            out.data[v] = static_cast<float>(std::clamp(noisy, 0.0, 1.0));
        } else {
            if (rng.next_double() < spec.magnitude)
                out.data[v] = rng.next_double() < 0.5 ? 0.0f : 1.0f;
        }
    }
    return out;
}

EmbeddedPatch embed_forward(const EmbeddingTable& t, const Volume& patch) {
    if (patch.kind != VolumeKind::normalized)
        throw Error("embed_forward: patch must be normalized");
    const std::size_t n = patch.voxel_count();
    EmbeddedPatch out;
    out.dim = t.dim;
    out.source_bins.resize(n);
    out.data.resize(n * static_cast<std::size_t>(t.dim));
    for (std::size_t v = 0; v < n; ++v) {
        const int b = quantize_intensity(patch.data[v], t.bins);
        out.source_bins[v] = b;
        for (int k = 0; k < t.dim; ++k)
            out.data[v * static_cast<std::size_t>(t.dim) + k] = t.row(b)[k];
    }
    return out;
}

}  // namespace voxaug::reference
