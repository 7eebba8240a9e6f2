// Copyright 2026 The voxaug authors
// SPDX-License-Identifier: Apache-2.0

#include "voxaug/metrics.hpp"

#include <algorithm>
#include <numeric>

namespace voxaug {

namespace {

ClassMetrics class_metrics(std::uint64_t tp, std::uint64_t tn, std::uint64_t fp,
                           std::uint64_t fn) {
    ClassMetrics m;
    const std::uint64_t total = tp + tn + fp + fn;
    auto ratio = [&m](std::uint64_t num, std::uint64_t den) {
        if (den == 0) {
            m.zero_division = true;
            return 0.0;
        }
        return static_cast<double>(num) / static_cast<double>(den);
    };
    m.precision = ratio(tp, tp + fp);
    m.recall = ratio(tp, tp + fn);
    m.accuracy = ratio(tp + tn, total);
    m.f1 = ratio(2 * tp, 2 * tp + fp + fn);
    return m;
}

}  // namespace

MetricReport compute_metrics(const ConfusionMatrix& cm) {
    if (cm.total() == 0) throw Error("compute_metrics: empty confusion matrix");
    MetricReport r;
    r.positive = class_metrics(cm.tp, cm.tn, cm.fp, cm.fn);
    // negative class as positive: roles swap
    r.negative = class_metrics(cm.tn, cm.tp, cm.fn, cm.fp);
    r.macro.precision = (r.positive.precision + r.negative.precision) / 2.0;
    r.macro.recall = (r.positive.recall + r.negative.recall) / 2.0;
    r.macro.accuracy = (r.positive.accuracy + r.negative.accuracy) / 2.0;
    r.macro.f1 = (r.positive.f1 + r.negative.f1) / 2.0;
    r.macro.zero_division = r.positive.zero_division || r.negative.zero_division;
    return r;
}

ConfusionMatrix confusion_from_scores(std::span<const double> scores,
                                      std::span<const int> labels, double threshold) {
    if (scores.size() != labels.size())
        throw Error("confusion_from_scores: scores/labels length mismatch");
    ConfusionMatrix cm;
    for (std::size_t i = 0; i < scores.size(); ++i) {
        const bool pred = scores[i] >= threshold;
        const bool truth = labels[i] != 0;
        if (pred && truth) ++cm.tp;
        else if (pred && !truth) ++cm.fp;
        else if (!pred && truth) ++cm.fn;
        else ++cm.tn;
    }
    return cm;
}

double detection_accuracy(std::span<const Volume> pred_masks,
                          std::span<const Volume> true_masks) {
    if (pred_masks.size() != true_masks.size())
        throw Error("detection_accuracy: list length mismatch");
    std::uint64_t v_all = 0, v_right = 0;
    for (std::size_t i = 0; i < true_masks.size(); ++i) {
        const Volume& t = true_masks[i];
        const Volume& p = pred_masks[i];
        if (t.dims != p.dims)
            throw Error("detection_accuracy: dim mismatch in pair " + std::to_string(i));
        bool truth_nonempty = false;
        bool intersects = false;
        for (std::size_t v = 0; v < t.data.size(); ++v) {
            if (t.data[v] != 0.0f) {
                truth_nonempty = true;
                if (p.data[v] != 0.0f) {
                    intersects = true;
                    break;
                }
            }
        }
        if (truth_nonempty) {
            ++v_all;
            if (intersects) ++v_right;
        }
    }
    if (v_all == 0) throw Error("detection_accuracy: no nonempty truth masks");
    return static_cast<double>(v_right) / static_cast<double>(v_all);
}

double dice_coefficient(const Volume& a, const Volume& b) {
    if (a.dims != b.dims) throw Error("dice_coefficient: dim mismatch");
    std::uint64_t inter = 0, asz = 0, bsz = 0;
    for (std::size_t i = 0; i < a.data.size(); ++i) {
        const bool av = a.data[i] != 0.0f;
        const bool bv = b.data[i] != 0.0f;
        asz += av;
        bsz += bv;
        inter += av && bv;
    }
    if (asz + bsz == 0) return 0.0;
    return 2.0 * static_cast<double>(inter) / static_cast<double>(asz + bsz);
}

RocCurve roc_curve(std::span<const double> scores, std::span<const int> labels) {
    if (scores.size() != labels.size())
        throw Error("roc_curve: scores/labels length mismatch");
    std::uint64_t pos = 0, neg = 0;
    for (int l : labels) (l != 0 ? pos : neg) += 1;
    if (pos == 0 || neg == 0)
        throw Error("roc_curve: need at least one positive and one negative label");

    std::vector<std::size_t> idx(scores.size());
    std::iota(idx.begin(), idx.end(), std::size_t{0});
    std::sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) {
        if (scores[a] != scores[b]) return scores[a] > scores[b];
        return a < b;
    });

    RocCurve roc;
    roc.fpr.push_back(0.0);
    roc.tpr.push_back(0.0);
    std::uint64_t tp = 0, fp = 0;
    std::size_t i = 0;
    while (i < idx.size()) {
        // consume the whole tie group at this threshold
        const double s = scores[idx[i]];
        while (i < idx.size() && scores[idx[i]] == s) {
            (labels[idx[i]] != 0 ? tp : fp) += 1;
            ++i;
        }
        roc.fpr.push_back(static_cast<double>(fp) / static_cast<double>(neg));
        roc.tpr.push_back(static_cast<double>(tp) / static_cast<double>(pos));
    }

    double auc = 0.0;
    for (std::size_t k = 1; k < roc.fpr.size(); ++k)
        auc += (roc.fpr[k] - roc.fpr[k - 1]) * (roc.tpr[k] + roc.tpr[k - 1]) / 2.0;
    roc.auc = auc;
    return roc;
}

}  // namespace voxaug
