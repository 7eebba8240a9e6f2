// Copyright 2026 The voxaug authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <filesystem>

#include "voxaug/dataset.hpp"
#include "voxaug/metrics.hpp"

namespace voxaug {

/// One trained arm of a comparison run.
struct ExperimentArm {
    std::string name;
    double final_loss = 0.0;
    ConfusionMatrix confusion;
    MetricReport report;
    RocCurve roc;
    std::vector<EpochStats> curve;
};

struct ExperimentReport {
    ExperimentArm base;
    ExperimentArm augmented;
    std::size_t duplicate_count = 0;  // extra entries whose path already sits in base
};

/// Trains the toy classifier on `base` and on `base`+`extra` with identical
/// seeds, evaluates both on `test`, and reports the two metric suites side
/// by side. Duplicate extra entries are counted and warned about on stderr
/// but still trained on (degenerate input stays legal).
ExperimentReport run_augmentation_experiment(const DatasetManifest& base,
                                             const DatasetManifest& extra,
                                             const DatasetManifest& test,
                                             const ToyClassifierConfig& cfg, int epochs,
                                             bool with_embedding = true);

/// dataset,loss,accuracy rows for the two arms plus an absolute-delta row.
void write_comparison_csv(const ExperimentReport& r, const std::filesystem::path& path);

/// method,truth,predicted_positive,predicted_negative confusion rows.
void write_confusion_csv(const ExperimentArm& arm, const std::filesystem::path& path);

/// class,precision,recall,accuracy,f1 rows (positive / negative / macro).
void write_metric_report_csv(const MetricReport& r, const std::filesystem::path& path);

/// fpr,tpr pairs, one per line.
void write_roc_csv(const RocCurve& roc, const std::filesystem::path& path);

/// epoch,loss,train_acc,test_acc rows.
void write_curves_csv(const std::vector<EpochStats>& curve, const std::filesystem::path& path);

}  // namespace voxaug
