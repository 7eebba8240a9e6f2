// Copyright 2026 The voxaug authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include "voxaug/volume.hpp"

namespace voxaug {

/// Reverses one axis (0=z, 1=y, 2=x). Geometry metadata is kept; these are
/// augmentation transforms, not registration.
Volume flip_axis(const Volume& v, int axis);

/// Rotates k*90 degrees about the axial (z) axis. For k odd the y/x dims
/// and spacings swap.
Volume rotate90_axial(const Volume& v, int k);

}  // namespace voxaug
