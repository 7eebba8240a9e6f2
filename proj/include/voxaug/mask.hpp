// Copyright 2026 The voxaug authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <span>

#include "voxaug/annotations.hpp"
#include "voxaug/volume.hpp"

namespace voxaug {

/// Rasterizes the annotation's sphere onto v's grid: a voxel is set iff its
/// world-space centre lies within diameter/2 of the annotation centre
/// (voxel-centre rule, no partial volume). Output shares dims/spacing/origin
/// with v. Requires a diameter and a centre that maps inside the grid;
/// throws Error / BoundsError otherwise.
Volume make_mask(const Volume& v, const Annotation& ann);

/// OR of make_mask over several annotations (repeated-call semantics).
Volume make_mask_union(const Volume& v, std::span<const Annotation> anns);

/// In-place logical OR of two masks with identical dims.
void mask_or(Volume& dst, const Volume& src);

}  // namespace voxaug
