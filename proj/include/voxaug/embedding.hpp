// Copyright 2026 The voxaug authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <vector>

#include "voxaug/volume.hpp"

namespace voxaug {

/// Trainable lookup from quantized intensity bin to an M-vector. Each
/// voxel's scalar gray value is replaced by weights[bin], expanding the
/// channel dimension from 1 to M; the table entries are the parameters.
struct EmbeddingTable {
    int bins = 256;
    int dim = 8;
    double init_scale = 0.05;
    std::vector<double> weights;  // bins x dim, row-major

    double* row(int bin) { return weights.data() + static_cast<std::size_t>(bin) * dim; }
    const double* row(int bin) const {
        return weights.data() + static_cast<std::size_t>(bin) * dim;
    }
};

/// Seeded uniform init in [-init_scale, init_scale].
EmbeddingTable make_embedding_table(int bins, int dim, double init_scale, std::uint64_t seed);

/// A patch after lookup: one M-vector per voxel plus the bin ids that
/// produced it. data[v] is a verbatim copy of weights[source_bins[v]].
struct EmbeddedPatch {
    int dim = 0;
    std::vector<int> source_bins;  // one per voxel
    std::vector<double> data;      // voxels x dim, row-major
};

/// Pure lookup: quantize each voxel to its bin (same rule as the stats
/// model) and copy that table row. No arithmetic touches the intensities.
EmbeddedPatch embed_forward(const EmbeddingTable& t, const Volume& patch);

/// Gradient of a scalar loss w.r.t. the table: row b accumulates the
/// upstream vectors of every voxel that mapped to bin b; unused rows stay
/// zero. upstream_grad is voxels x dim, matching embed_forward's output.
std::vector<double> embed_backward(const EmbeddingTable& t, const Volume& patch,
                                   const std::vector<double>& upstream_grad);

enum class NoiseKind : std::uint8_t { gaussian, salt_pepper };

struct NoiseSpec {
    NoiseKind kind = NoiseKind::gaussian;
    double magnitude = 0.0;
    std::uint64_t seed = 0;
};

/// Seeded noise on a normalized patch. gaussian adds N(0, magnitude) and
/// clips to [0,1]; salt_pepper flips each voxel to 0 or 1 with probability
/// `magnitude` (which must lie in [0,1]). Per-voxel substreams make the
/// result independent of evaluation order.
Volume add_noise(const Volume& patch, const NoiseSpec& spec);

}  // namespace voxaug
