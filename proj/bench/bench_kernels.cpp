// Copyright 2026 The voxaug authors
// SPDX-License-Identifier: Apache-2.0

// Times each parallel kernel against its serial reference on realistic
// volume sizes and verifies the outputs agree bit for bit while at it.
// Usage: voxaug_bench [edge] [reps]   (defaults: 160 voxels, 5 reps)

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <string>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "voxaug/classifier.hpp"
#include "voxaug/embedding.hpp"
#include "voxaug/mask.hpp"
#include "voxaug/preprocess.hpp"
#include "voxaug/reference.hpp"
#include "voxaug/rng.hpp"
#include "voxaug/stats_model.hpp"

using namespace voxaug;
using Clock = std::chrono::steady_clock;

namespace {

double time_median_ms(int reps, const std::function<void()>& fn) {
    std::vector<double> times;
    for (int r = 0; r < reps; ++r) {
        const auto t0 = Clock::now();
        fn();
        const auto t1 = Clock::now();
        times.push_back(std::chrono::duration<double, std::milli>(t1 - t0).count());
    }
    std::sort(times.begin(), times.end());
    return times[times.size() / 2];
}

void report(const char* name, double serial_ms, double parallel_ms, bool equal) {
    std::printf("%-18s %10.2f ms %10.2f ms %8.2fx   %s\n", name, serial_ms, parallel_ms,
                serial_ms / parallel_ms, equal ? "bit-equal" : "MISMATCH");
}

}  // namespace

int main(int argc, char** argv) {
    const int edge = argc > 1 ? std::atoi(argv[1]) : 160;
    const int reps = argc > 2 ? std::atoi(argv[2]) : 5;

#ifdef _OPENMP
    std::printf("threads: %d, volume: %d^3, reps: %d (median)\n", omp_get_max_threads(), edge,
                reps);
#else
    std::printf("OpenMP disabled at build time; volume: %d^3, reps: %d\n", edge, reps);
#endif
    std::printf("%-18s %13s %13s %9s\n", "kernel", "serial", "parallel", "speedup");

    SplitMix64 rng(7);
    Volume ct = make_volume({edge, edge, edge}, {1, 1, 1}, {0, 0, 0}, VolumeKind::raw_ct);
    for (float& f : ct.data)
        f = static_cast<float>(static_cast<int>(rng.next_below(3000)) - 2000);

    // window_normalize
    {
        const WindowSpec w{-680.0, 600.0};
        Volume out_p, out_s;
        const double p = time_median_ms(reps, [&] { out_p = window_normalize(ct, w); });
        const double s =
            time_median_ms(reps, [&] { out_s = reference::window_normalize(ct, w); });
        report("window_normalize", s, p, out_p.data == out_s.data);
    }

    const Volume norm = window_normalize(ct, WindowSpec{-680.0, 600.0});

    // resample (downsample to 1.3 mm)
    {
        const ResampleSpec spec{{1.3, 1.3, 1.3}, Interp::trilinear};
        Volume out_p, out_s;
        const double p = time_median_ms(reps, [&] { out_p = resample(ct, spec); });
        const double s = time_median_ms(reps, [&] { out_s = reference::resample(ct, spec); });
        report("resample", s, p, out_p.data == out_s.data);
    }

    // make_mask (large sphere)
    {
        Annotation a;
        a.series_id = "bench";
        a.center_world = {edge / 2.0, edge / 2.0, edge / 2.0};
        a.diameter_mm = edge * 0.6;
        Volume out_p, out_s;
        const double p = time_median_ms(reps, [&] { out_p = make_mask(ct, a); });
        const double s = time_median_ms(reps, [&] { out_s = reference::make_mask(ct, a); });
        report("make_mask", s, p, out_p.data == out_s.data);
    }

    // sample_nodule on a dense model
    {
        NoduleStatsModel m;
        m.side = 65;
        m.bins = 256;
        m.cube_count = 16;
        m.counts.assign(m.voxel_count(), {});
        for (auto& slot : m.counts) {
            std::uint32_t bin = static_cast<std::uint32_t>(rng.next_below(64));
            for (int e = 0; e < 4; ++e) {
                slot.push_back({bin, 1 + static_cast<std::uint32_t>(rng.next_below(9))});
                bin += 1 + static_cast<std::uint32_t>(rng.next_below(32));
            }
        }
        GeneratedNodule out_p, out_s;
        const double p = time_median_ms(reps, [&] { out_p = sample_nodule(m, 3); });
        const double s = time_median_ms(reps, [&] { out_s = reference::sample_nodule(m, 3); });
        report("sample_nodule", s, p, out_p.cube == out_s.cube);
    }

    // add_noise (gaussian)
    {
        const NoiseSpec spec{NoiseKind::gaussian, 0.1, 11};
        Volume out_p, out_s;
        const double p = time_median_ms(reps, [&] { out_p = add_noise(norm, spec); });
        const double s = time_median_ms(reps, [&] { out_s = reference::add_noise(norm, spec); });
        report("add_noise", s, p, out_p.data == out_s.data);
    }

    // embed_forward
    {
        const EmbeddingTable t = make_embedding_table(256, 8, 0.05, 3);
        EmbeddedPatch out_p, out_s;
        const double p = time_median_ms(reps, [&] { out_p = embed_forward(t, norm); });
        const double s = time_median_ms(reps, [&] { out_s = reference::embed_forward(t, norm); });
        report("embed_forward", s, p, out_p.data == out_s.data);
    }

    // training cost of the toy classifier with and without the table
    {
        std::vector<Sample> train;
        for (int i = 0; i < 200; ++i) {
            Sample s;
            s.label = i % 2;
            s.patch = make_volume({9, 9, 9}, {1, 1, 1}, {0, 0, 0}, VolumeKind::normalized);
            for (float& f : s.patch.data) f = static_cast<float>(rng.next_double());
            train.push_back(std::move(s));
        }
        ToyClassifierConfig cfg;
        cfg.bins = 256;
        cfg.dim = 8;
        const double with_ms =
            time_median_ms(reps, [&] { train_toy(train, {}, cfg, 20, true); });
        const double without_ms =
            time_median_ms(reps, [&] { train_toy(train, {}, cfg, 20, false); });
        std::printf("\ntoy training, 200 patches x 20 epochs: %.2f ms with embedding, "
                    "%.2f ms without (%.2fx)\n",
                    with_ms, without_ms, with_ms / without_ms);
    }
    return 0;
}
