// Copyright 2026 The voxaug authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "voxaug/volume.hpp"

namespace voxaug {

struct ConfusionMatrix {
    std::uint64_t tp = 0;
    std::uint64_t tn = 0;
    std::uint64_t fp = 0;
    std::uint64_t fn = 0;

    std::uint64_t total() const { return tp + tn + fp + fn; }
};

struct ClassMetrics {
    double precision = 0.0;
    double recall = 0.0;
    double accuracy = 0.0;
    double f1 = 0.0;
    bool zero_division = false;  // some denominator was 0; that metric reads 0
};

/// Positive-class, negative-class (roles swapped), and unweighted macro
/// average of the two.
struct MetricReport {
    ClassMetrics positive;
    ClassMetrics negative;
    ClassMetrics macro;
};

/// precision = TP/(TP+FP), recall = TP/(TP+FN),
/// accuracy = (TP+TN)/total, f1 = 2TP/(2TP+FP+FN).
/// Requires total > 0.
MetricReport compute_metrics(const ConfusionMatrix& cm);

ConfusionMatrix confusion_from_scores(std::span<const double> scores,
                                      std::span<const int> labels, double threshold = 0.5);

/// Mask-overlap detection accuracy: a prediction counts as correct when
/// its mask shares at least one voxel with a nonempty truth mask;
/// the result is correct / (number of nonempty truth masks). Throws on
/// length or dim mismatch and when no truth mask is nonempty.
double detection_accuracy(std::span<const Volume> pred_masks,
                          std::span<const Volume> true_masks);

/// 2|A^B| / (|A|+|B|); reported alongside detection accuracy for
/// information, not part of it.
double dice_coefficient(const Volume& a, const Volume& b);

struct RocCurve {
    std::vector<double> fpr;  // threshold-descending sweep, starts (0,0)
    std::vector<double> tpr;  // ends (1,1)
    double auc = 0.0;
};

/// Threshold sweep over unique scores (ties grouped), AUC by the
/// trapezoidal rule. Needs at least one positive and one negative label.
RocCurve roc_curve(std::span<const double> scores, std::span<const int> labels);

}  // namespace voxaug
