// Copyright 2026 The voxaug authors
// SPDX-License-Identifier: Apache-2.0

#include "voxaug/experiment.hpp"

#include <cmath>
#include <fstream>
#include <iostream>
#include <unordered_set>

namespace voxaug {

namespace {

ExperimentArm train_arm(const std::string& name, const DatasetManifest& train_manifest,
                        const std::vector<Sample>& test, std::span<const int> test_labels,
                        const ToyClassifierConfig& cfg, int epochs, bool with_embedding) {
    ExperimentArm arm;
    arm.name = name;
    const std::vector<Sample> train = materialize(train_manifest);
    TrainResult tr = train_toy(train, test, cfg, epochs, with_embedding);
    arm.curve = tr.curve;
    arm.final_loss = tr.curve.empty() ? 0.0 : tr.curve.back().loss;

    std::vector<double> scores;
    scores.reserve(test.size());
    for (const Sample& s : test) scores.push_back(predict_score(tr.model, s.patch));
    arm.confusion = confusion_from_scores(scores, test_labels);
    arm.report = compute_metrics(arm.confusion);
    arm.roc = roc_curve(scores, test_labels);
    return arm;
}

}  // namespace

ExperimentReport run_augmentation_experiment(const DatasetManifest& base,
                                             const DatasetManifest& extra,
                                             const DatasetManifest& test,
                                             const ToyClassifierConfig& cfg, int epochs,
                                             bool with_embedding) {
    if (test.entries.empty())
        throw Error("run_augmentation_experiment: test manifest is empty");

    ExperimentReport out;

    std::unordered_set<std::string> base_paths;
    for (const ManifestEntry& e : base.entries) base_paths.insert(e.patch_path);
    for (const ManifestEntry& e : extra.entries)
        if (base_paths.count(e.patch_path)) ++out.duplicate_count;
    if (out.duplicate_count > 0)
        std::cerr << "experiment: " << out.duplicate_count
                  << " extra entries duplicate the base dataset\n";

    const std::vector<Sample> test_samples = materialize(test);
    std::vector<int> test_labels;
    test_labels.reserve(test_samples.size());
    for (const Sample& s : test_samples) test_labels.push_back(s.label);

    DatasetManifest combined = base;
    combined.entries.insert(combined.entries.end(), extra.entries.begin(),
                            extra.entries.end());

    out.base = train_arm("base", base, test_samples, test_labels, cfg, epochs, with_embedding);
    out.augmented = train_arm("base_plus_extra", combined, test_samples, test_labels, cfg,
                              epochs, with_embedding);
    return out;
}

void write_comparison_csv(const ExperimentReport& r, const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::trunc);
    if (!out) throw IoError("write_comparison_csv: cannot write " + path.string());
    out << "dataset,loss,accuracy\n";
    out << r.base.name << ',' << r.base.final_loss << ',' << r.base.report.positive.accuracy
        << '\n';
    out << r.augmented.name << ',' << r.augmented.final_loss << ','
        << r.augmented.report.positive.accuracy << '\n';
    out << "delta," << r.augmented.final_loss - r.base.final_loss << ','
        << r.augmented.report.positive.accuracy - r.base.report.positive.accuracy << '\n';
}

void write_confusion_csv(const ExperimentArm& arm, const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::trunc);
    if (!out) throw IoError("write_confusion_csv: cannot write " + path.string());
    out << "method,truth,predicted_positive,predicted_negative\n";
    out << arm.name << ",positive," << arm.confusion.tp << ',' << arm.confusion.fn << '\n';
    out << arm.name << ",negative," << arm.confusion.fp << ',' << arm.confusion.tn << '\n';
}

void write_metric_report_csv(const MetricReport& r, const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::trunc);
    if (!out) throw IoError("write_metric_report_csv: cannot write " + path.string());
    out << "class,precision,recall,accuracy,f1\n";
    auto row = [&out](const char* name, const ClassMetrics& m) {
        out << name << ',' << m.precision << ',' << m.recall << ',' << m.accuracy << ','
            << m.f1 << '\n';
    };
    row("positive", r.positive);
    row("negative", r.negative);
    row("macro", r.macro);
}

void write_roc_csv(const RocCurve& roc, const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::trunc);
    if (!out) throw IoError("write_roc_csv: cannot write " + path.string());
    out << "fpr,tpr\n";
    for (std::size_t i = 0; i < roc.fpr.size(); ++i)
        out << roc.fpr[i] << ',' << roc.tpr[i] << '\n';
}

void write_curves_csv(const std::vector<EpochStats>& curve,
                      const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::trunc);
    if (!out) throw IoError("write_curves_csv: cannot write " + path.string());
    out << "epoch,loss,train_acc,test_acc\n";
    for (const EpochStats& e : curve) {
        out << e.epoch << ',' << e.loss << ',' << e.train_acc << ',';
        if (std::isnan(e.test_acc)) out << "nan";
        else out << e.test_acc;
        out << '\n';
    }
}

}  // namespace voxaug
