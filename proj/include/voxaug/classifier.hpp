// Copyright 2026 The voxaug authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <vector>

#include "voxaug/embedding.hpp"
#include "voxaug/volume.hpp"

namespace voxaug {

struct Sample {
    Volume patch;  // normalized
    int label = 0;  // {0,1}
};

struct ToyClassifierConfig {
    int bins = 256;
    int dim = 8;
    double init_scale = 0.05;
    double lr = 0.1;
    std::uint64_t seed = 0;
};

/// Embedding -> mean-pool -> linear -> logistic. Deliberately tiny: it
/// isolates what the embedding lookup contributes, trains in seconds, and
/// is deterministic given (seed, data order). With the embedding disabled
/// the model sees only each patch's mean intensity.
struct ToyClassifier {
    bool with_embedding = true;
    EmbeddingTable embedding;
    std::vector<double> head;  // dim weights (1 when embedding disabled)
    double bias = 0.0;
};

struct EpochStats {
    int epoch = 0;
    double loss = 0.0;
    double train_acc = 0.0;
    double test_acc = 0.0;  // NaN when no test set was given
};

struct TrainResult {
    ToyClassifier model;
    std::vector<EpochStats> curve;
};

/// Probability that the patch is a nodule (score in (0,1)).
double predict_score(const ToyClassifier& model, const Volume& patch);

/// Plain per-sample SGD on logistic loss. Sample order is reshuffled each
/// epoch from cfg.seed, so the same seed and dataset reproduce identical
/// curves bit-for-bit. Throws Error on an empty training set and reports
/// the epoch index if the loss goes non-finite. epochs == 0 returns the
/// initialized model with an empty curve.
TrainResult train_toy(const std::vector<Sample>& train, const std::vector<Sample>& test,
                      const ToyClassifierConfig& cfg, int epochs, bool with_embedding);

}  // namespace voxaug
