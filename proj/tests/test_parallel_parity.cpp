// Copyright 2026 The voxaug authors
// SPDX-License-Identifier: Apache-2.0

// The OpenMP kernels must match the serial reference implementations bit
// for bit: every kernel is a pure per-voxel map with no cross-voxel
// reductions, so scheduling cannot legitimately change any output.

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "voxaug/embedding.hpp"
#include "voxaug/mask.hpp"
#include "voxaug/preprocess.hpp"
#include "voxaug/reference.hpp"
#include "voxaug/rng.hpp"
#include "voxaug/stats_model.hpp"

using namespace voxaug;

namespace {

Volume random_ct(std::uint64_t seed, std::array<int, 3> dims) {
    Volume v = make_volume(dims, {0.8, 1.0, 1.2}, {-4, 3, 7}, VolumeKind::raw_ct);
    SplitMix64 rng(seed);
    for (float& f : v.data)
        f = static_cast<float>(static_cast<int>(rng.next_below(3200)) - 2200);
    return v;
}

Volume random_normalized(std::uint64_t seed, std::array<int, 3> dims) {
    Volume v = make_volume(dims, {1, 1, 1}, {0, 0, 0}, VolumeKind::normalized);
    SplitMix64 rng(seed);
    for (float& f : v.data) f = static_cast<float>(rng.next_double());
    return v;
}

NoduleStatsModel random_model(std::uint64_t seed, int side, int bins) {
    SplitMix64 rng(seed);
    NoduleStatsModel m;
    m.side = side;
    m.bins = bins;
    m.cube_count = 8;
    m.counts.assign(m.voxel_count(), {});
    for (auto& slot : m.counts) {
        if (rng.next_below(4) == 0) continue;
        const int entries = 1 + static_cast<int>(rng.next_below(3));
        std::uint32_t bin = static_cast<std::uint32_t>(rng.next_below(bins / 2));
        for (int e = 0; e < entries && bin < static_cast<std::uint32_t>(bins); ++e) {
            slot.push_back({bin, 1 + static_cast<std::uint32_t>(rng.next_below(7))});
            bin += 1 + static_cast<std::uint32_t>(rng.next_below(4));
        }
    }
    return m;
}

}  // namespace

TEST_CASE("window_normalize parity") {
    for (std::uint64_t seed = 0; seed < 6; ++seed) {
        const Volume v = random_ct(seed, {41, 37, 43});  // above the parallel grain
        const WindowSpec w{-680.0, 600.0};
        CHECK(window_normalize(v, w).data == reference::window_normalize(v, w).data);
    }
}

TEST_CASE("resample parity, trilinear and nearest") {
    for (std::uint64_t seed = 0; seed < 4; ++seed) {
        const Volume v = random_ct(100 + seed, {24, 30, 28});
        const ResampleSpec tri{{1.1, 0.9, 0.7}, Interp::trilinear};
        const Volume a = resample(v, tri);
        const Volume b = reference::resample(v, tri);
        CHECK(a.dims == b.dims);
        CHECK(a.data == b.data);

        Volume mask = random_normalized(200 + seed, {20, 20, 20});
        mask.kind = VolumeKind::mask;
        for (float& f : mask.data) f = f > 0.5f ? 1.0f : 0.0f;
        const ResampleSpec nn{{0.6, 0.6, 0.6}, Interp::nearest};
        CHECK(resample(mask, nn).data == reference::resample(mask, nn).data);
    }
}

TEST_CASE("make_mask parity") {
    for (std::uint64_t seed = 0; seed < 6; ++seed) {
        SplitMix64 rng(seed);
        Volume v = make_volume({40, 40, 40}, {0.9, 1.0, 1.1}, {-10, 0, 5}, VolumeKind::raw_ct);
        Annotation a;
        a.series_id = "s";
        a.center_world = {v.origin[0] + 10 + static_cast<double>(rng.next_below(15)),
                          v.origin[1] + 10 + static_cast<double>(rng.next_below(15)),
                          v.origin[2] + 10 + static_cast<double>(rng.next_below(15))};
        a.diameter_mm = 3.0 + static_cast<double>(rng.next_below(12));
        CHECK(make_mask(v, a).data == reference::make_mask(v, a).data);
    }
}

TEST_CASE("sample_nodule parity") {
    for (std::uint64_t seed = 0; seed < 4; ++seed) {
        const NoduleStatsModel m = random_model(seed, 33, 64);  // 35937 voxels
        const GeneratedNodule a = sample_nodule(m, 42 + seed, 0.2);
        const GeneratedNodule b = reference::sample_nodule(m, 42 + seed, 0.2);
        CHECK(a.cube == b.cube);
        CHECK(a.support == b.support);
    }
}

TEST_CASE("add_noise parity, both kinds") {
    const Volume patch = random_normalized(9, {36, 36, 36});
    for (std::uint64_t seed = 0; seed < 4; ++seed) {
        const NoiseSpec g{NoiseKind::gaussian, 0.15, seed};
        CHECK(add_noise(patch, g).data == reference::add_noise(patch, g).data);
        const NoiseSpec sp{NoiseKind::salt_pepper, 0.2, seed};
        CHECK(add_noise(patch, sp).data == reference::add_noise(patch, sp).data);
    }
}

TEST_CASE("embed_forward parity") {
    const EmbeddingTable t = make_embedding_table(128, 8, 0.05, 17);
    const Volume patch = random_normalized(21, {19, 19, 19});
    const EmbeddedPatch a = embed_forward(t, patch);
    const EmbeddedPatch b = reference::embed_forward(t, patch);
    CHECK(a.source_bins == b.source_bins);
    CHECK(a.data == b.data);
}
