// Copyright 2026 The voxaug authors
// SPDX-License-Identifier: Apache-2.0

#include "voxaug/embedding.hpp"

#include <algorithm>
#include <cmath>

#include "voxaug/quantize.hpp"
#include "voxaug/rng.hpp"

namespace voxaug {

EmbeddingTable make_embedding_table(int bins, int dim, double init_scale, std::uint64_t seed) {
    if (bins < 1 || dim < 1) throw Error("make_embedding_table: bins and dim must be >= 1");
    if (!(init_scale >= 0.0)) throw Error("make_embedding_table: init_scale must be >= 0");
    EmbeddingTable t;
    t.bins = bins;
    t.dim = dim;
    t.init_scale = init_scale;
    t.weights.resize(static_cast<std::size_t>(bins) * dim);
    SplitMix64 rng(seed);
    for (double& w : t.weights) w = (rng.next_double() * 2.0 - 1.0) * init_scale;
    return t;
}

EmbeddedPatch embed_forward(const EmbeddingTable& t, const Volume& patch) {
    if (patch.kind != VolumeKind::normalized)
        throw Error("embed_forward: patch must be normalized");
    const std::size_t n = patch.voxel_count();

    EmbeddedPatch out;
    out.dim = t.dim;
    out.source_bins.resize(n);
    out.data.resize(n * static_cast<std::size_t>(t.dim));

    const std::int64_t ni = static_cast<std::int64_t>(n);
#pragma omp parallel for schedule(static) if (ni * t.dim > 32768)
    for (std::int64_t v = 0; v < ni; ++v) {
        const int b = quantize_intensity(patch.data[v], t.bins);
        out.source_bins[v] = b;
        const double* src = t.row(b);
        double* dst = out.data.data() + static_cast<std::size_t>(v) * t.dim;
        std::copy(src, src + t.dim, dst);
    }
    return out;
}

std::vector<double> embed_backward(const EmbeddingTable& t, const Volume& patch,
                                   const std::vector<double>& upstream_grad) {
    const std::size_t n = patch.voxel_count();
    if (upstream_grad.size() != n * static_cast<std::size_t>(t.dim))
        throw Error("embed_backward: upstream gradient shape mismatch (" +
                    std::to_string(upstream_grad.size()) + " vs " +
                    std::to_string(n * t.dim) + ")");
    if (patch.kind != VolumeKind::normalized)
        throw Error("embed_backward: patch must be normalized");

    std::vector<double> grad(t.weights.size(), 0.0);
    for (std::size_t v = 0; v < n; ++v) {
        const int b = quantize_intensity(patch.data[v], t.bins);
        double* row = grad.data() + static_cast<std::size_t>(b) * t.dim;
        const double* up = upstream_grad.data() + v * static_cast<std::size_t>(t.dim);
        for (int k = 0; k < t.dim; ++k) row[k] += up[k];
    }
    return grad;
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
    const std::int64_t n = static_cast<std::int64_t>(patch.voxel_count());
#pragma omp parallel for schedule(static) if (n > 32768)
    for (std::int64_t v = 0; v < n; ++v) {
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

}  // namespace voxaug
