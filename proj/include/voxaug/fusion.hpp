// Copyright 2026 The voxaug authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <vector>

#include "voxaug/stats_model.hpp"
#include "voxaug/volume.hpp"

namespace voxaug {

struct FusionResult {
    Volume fused;      // normalized
    Volume mask;       // 1 exactly on the replaced voxels
    VoxelIndex site;   // implant centre in the host grid
};

/// Implants a generated nodule into a normalized host by verbatim
/// gray-value replacement: wherever the nodule's support flags a voxel,
/// the host value at the translated coordinate becomes the nodule value.
/// No blending: replacement is the whole rule. Every other host voxel is
/// bit-identical to the input; the emitted mask is 1 exactly on replaced
/// voxels. The cube, centred at `site`, must fit inside the host; an
/// overhang is rejected rather than clipped so mask statistics stay honest.
FusionResult fuse(const Volume& host, const GeneratedNodule& nodule, const VoxelIndex& site);

/// Deterministic implant-site proposals. Candidate centres are enumerated
/// on a lattice with stride max(1, cube_side/2); a candidate is feasible
/// when its cube fits in bounds and the cube's mean intensity is below
/// lung_threshold (dark parenchyma, not chest wall). Feasible candidates
/// are shuffled with `seed` and accepted greedily subject to pairwise
/// Chebyshev distance >= cube_side, which keeps accepted cubes disjoint.
/// Throws Error when fewer than n sites can be produced.
std::vector<VoxelIndex> propose_sites(const Volume& host, float lung_threshold, int cube_side,
                                      int n, std::uint64_t seed);

}  // namespace voxaug
