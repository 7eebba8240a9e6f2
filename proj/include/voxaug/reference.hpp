// Copyright 2026 The voxaug authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include "voxaug/annotations.hpp"
#include "voxaug/embedding.hpp"
#include "voxaug/preprocess.hpp"
#include "voxaug/stats_model.hpp"

namespace voxaug::reference {

// Serial reference implementations of the parallel kernels, written as
// independent plain loops. They define what the OpenMP paths must produce:
// parity tests require bit-identical output, and the benchmark compares
// wall-clock against them.

Volume window_normalize(const Volume& v, const WindowSpec& w);
Volume resample(const Volume& v, const ResampleSpec& spec);
Volume make_mask(const Volume& v, const Annotation& ann);
GeneratedNodule sample_nodule(const NoduleStatsModel& m, std::uint64_t seed,
                              double min_support = 0.0);
Volume add_noise(const Volume& patch, const NoiseSpec& spec);
EmbeddedPatch embed_forward(const EmbeddingTable& t, const Volume& patch);

}  // namespace voxaug::reference
