// Copyright 2026 The voxaug authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include "voxaug/volume.hpp"

namespace voxaug {

/// HU display window. Defaults are the lung window used throughout:
/// level -680 HU, width 600 HU.
struct WindowSpec {
    double level = -680.0;
    double width = 600.0;
};

enum class Interp : std::uint8_t { trilinear, nearest };

struct ResampleSpec {
    std::array<double, 3> target_spacing{1.0, 1.0, 1.0};  // (sz,sy,sx) mm
    Interp interpolation = Interp::trilinear;
};

/// Clips HU to [level-width/2, level+width/2] and maps the window affinely
/// onto [0,1]. Output kind is normalized; geometry unchanged. Requires a
/// raw_ct input and width > 0.
Volume window_normalize(const Volume& v, const WindowSpec& w);

/// Resamples onto an axis-aligned grid with the requested spacing. Output
/// dims are ceil(dim*spacing/target) per axis, origin preserved. Trilinear
/// for intensities; nearest keeps masks binary. Evaluating at the source
/// spacing reproduces the source values exactly at coincident lattice
/// points.
Volume resample(const Volume& v, const ResampleSpec& spec);

/// Cuts a side^3 cube (side odd) centred on `center`. Voxels falling
/// outside v are padded with v's minimum value, so air padding survives
/// both HU and normalized inputs. Origin is shifted so voxel_to_world
/// agrees with the parent volume on shared voxels.
Volume extract_patch(const Volume& v, const VoxelIndex& center, int side);

}  // namespace voxaug
