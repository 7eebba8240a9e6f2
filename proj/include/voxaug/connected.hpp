// Copyright 2026 The voxaug authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include "voxaug/volume.hpp"

namespace voxaug {

/// Thresholds a normalized cube (value >= threshold) and keeps only the
/// largest 6-connected foreground component; everything else is zeroed.
/// An all-background result is legal (empty mask). Size ties break toward
/// the component found first in scan order. Throws Error when threshold
/// is outside [0,1] or the input is not normalized.
Volume segment_foreground(const Volume& cube, float threshold);

}  // namespace voxaug
