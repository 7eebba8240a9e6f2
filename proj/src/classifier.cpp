// Copyright 2026 The voxaug authors
// SPDX-License-Identifier: Apache-2.0

#include "voxaug/classifier.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "voxaug/quantize.hpp"
#include "voxaug/rng.hpp"

namespace voxaug {

namespace {

double sigmoid(double z) { return 1.0 / (1.0 + std::exp(-z)); }

// numerically stable logistic loss on the logit
double logistic_loss(double z, int y) {
    return std::max(z, 0.0) - z * y + std::log1p(std::exp(-std::abs(z)));
}

// per-sample bin occupancy: mean-pooled embedding is sum_b freq[b]*W[b]
struct BinHistogram {
    std::vector<std::pair<int, double>> freq;  // (bin, voxel fraction), bin-sorted
    double mean_intensity = 0.0;
};

BinHistogram histogram_of(const Volume& patch, int bins) {
    BinHistogram h;
    std::vector<int> count(bins, 0);
    double sum = 0.0;
    for (float f : patch.data) {
        ++count[quantize_intensity(f, bins)];
        sum += f;
    }
    const double inv = 1.0 / static_cast<double>(patch.data.size());
    for (int b = 0; b < bins; ++b)
        if (count[b] > 0) h.freq.emplace_back(b, count[b] * inv);
    h.mean_intensity = sum * inv;
    return h;
}

double score_of(const ToyClassifier& m, const BinHistogram& h) {
    double z = m.bias;
    if (m.with_embedding) {
        for (const auto& [bin, f] : h.freq) {
            const double* row = m.embedding.row(bin);
            for (int k = 0; k < m.embedding.dim; ++k) z += m.head[k] * row[k] * f;
        }
    } else {
        z += m.head[0] * h.mean_intensity;
    }
    return sigmoid(z);
}

double accuracy_on(const ToyClassifier& m, const std::vector<BinHistogram>& hists,
                   const std::vector<int>& labels) {
    if (hists.empty()) return std::numeric_limits<double>::quiet_NaN();
    std::size_t correct = 0;
    for (std::size_t i = 0; i < hists.size(); ++i) {
        const int pred = score_of(m, hists[i]) >= 0.5 ? 1 : 0;
        if (pred == labels[i]) ++correct;
    }
    return static_cast<double>(correct) / static_cast<double>(hists.size());
}

}  // namespace

double predict_score(const ToyClassifier& model, const Volume& patch) {
    if (patch.kind != VolumeKind::normalized)
        throw Error("predict_score: patch must be normalized");
    return score_of(model, histogram_of(patch, model.embedding.bins));
}

TrainResult train_toy(const std::vector<Sample>& train, const std::vector<Sample>& test,
                      const ToyClassifierConfig& cfg, int epochs, bool with_embedding) {
    if (train.empty()) throw Error("train_toy: empty training set");
    for (const Sample& s : train)
        if (s.label != 0 && s.label != 1) throw Error("train_toy: labels must be 0 or 1");

    TrainResult result;
    ToyClassifier& m = result.model;
    m.with_embedding = with_embedding;
    m.embedding = make_embedding_table(cfg.bins, cfg.dim, cfg.init_scale, cfg.seed);
    const int head_dim = with_embedding ? cfg.dim : 1;
    m.head.resize(head_dim);
    SplitMix64 head_rng = substream(cfg.seed, 0x9ead);
    for (double& w : m.head) w = (head_rng.next_double() * 2.0 - 1.0) * cfg.init_scale;
    m.bias = 0.0;

    std::vector<BinHistogram> train_hists, test_hists;
    std::vector<int> train_labels, test_labels;
    train_hists.reserve(train.size());
    for (const Sample& s : train) {
        train_hists.push_back(histogram_of(s.patch, cfg.bins));
        train_labels.push_back(s.label);
    }
    for (const Sample& s : test) {
        test_hists.push_back(histogram_of(s.patch, cfg.bins));
        test_labels.push_back(s.label);
    }

    std::vector<std::size_t> order(train.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;

    for (int epoch = 0; epoch < epochs; ++epoch) {
        SplitMix64 shuffle_rng = substream(cfg.seed, 0x5f1e + static_cast<std::uint64_t>(epoch));
        for (std::size_t i = order.size(); i > 1; --i)
            std::swap(order[i - 1], order[shuffle_rng.next_below(i)]);

        double loss_sum = 0.0;
        for (std::size_t idx : order) {
            const BinHistogram& h = train_hists[idx];
            const int y = train_labels[idx];

            double z = m.bias;
            if (with_embedding) {
                for (const auto& [bin, f] : h.freq) {
                    const double* row = m.embedding.row(bin);
                    for (int k = 0; k < cfg.dim; ++k) z += m.head[k] * row[k] * f;
                }
            } else {
                z += m.head[0] * h.mean_intensity;
            }
            loss_sum += logistic_loss(z, y);
            const double dz = sigmoid(z) - y;

            if (with_embedding) {
                // pooled embedding, needed for the head gradient
                std::vector<double> pooled(cfg.dim, 0.0);
                for (const auto& [bin, f] : h.freq) {
                    const double* row = m.embedding.row(bin);
                    for (int k = 0; k < cfg.dim; ++k) pooled[k] += row[k] * f;
                }
                // table rows first (they read the pre-update head)
                for (const auto& [bin, f] : h.freq) {
                    double* row = m.embedding.row(bin);
                    for (int k = 0; k < cfg.dim; ++k)
                        row[k] -= cfg.lr * dz * f * m.head[k];
                }
                for (int k = 0; k < cfg.dim; ++k) m.head[k] -= cfg.lr * dz * pooled[k];
            } else {
                m.head[0] -= cfg.lr * dz * h.mean_intensity;
            }
            m.bias -= cfg.lr * dz;
        }

        const double mean_loss = loss_sum / static_cast<double>(train.size());
        if (!std::isfinite(mean_loss))
            throw Error("train_toy: non-finite loss at epoch " + std::to_string(epoch));

        EpochStats stats;
        stats.epoch = epoch;
        stats.loss = mean_loss;
        stats.train_acc = accuracy_on(m, train_hists, train_labels);
        stats.test_acc = accuracy_on(m, test_hists, test_labels);
        result.curve.push_back(stats);
    }
    return result;
}

}  // namespace voxaug
