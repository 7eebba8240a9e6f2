// Copyright 2026 The voxaug authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <algorithm>
#include <cstdint>

namespace voxaug {

/// Shared gray-value quantizer: B equal-width bins over [0,1], with 1.0
/// folded into the top bin. The statistics model and the embedding table
/// must agree on this mapping, so it lives in one place.
inline int quantize_intensity(float value, int bins) {
    int b = static_cast<int>(static_cast<double>(value) * bins);
    return std::clamp(b, 0, bins - 1);
}

/// Decodes a bin back to its intensity midpoint (unbiased under a uniform
/// in-bin distribution).
inline float bin_midpoint(int bin, int bins) {
    return static_cast<float>((bin + 0.5) / bins);
}

}  // namespace voxaug
