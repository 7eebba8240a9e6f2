// Copyright 2026 The voxaug authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <filesystem>
#include <span>
#include <string>
#include <vector>

#include "voxaug/classifier.hpp"

namespace voxaug {

enum class Provenance : std::uint8_t {
    real,
    generated_stats,
    generated_gan_external,
    traditional_aug,
};

enum class Split : std::uint8_t { train, test };

const char* to_string(Provenance p);
const char* to_string(Split s);
Provenance provenance_from_string(const std::string& s);
Split split_from_string(const std::string& s);

struct ManifestEntry {
    std::string patch_path;
    std::string mask_path;  // empty = none ("-" on disk)
    int label = 0;          // {0,1}
    Provenance provenance = Provenance::real;

    friend bool operator==(const ManifestEntry&, const ManifestEntry&) = default;
};

/// A dataset split: one entry per patch. On disk, one record per line with
/// tab-separated fields: path, mask-path-or-dash, label, provenance, split.
struct DatasetManifest {
    std::vector<ManifestEntry> entries;
    Split split = Split::train;

    friend bool operator==(const DatasetManifest&, const DatasetManifest&) = default;
};

DatasetManifest read_manifest(const std::filesystem::path& path);
void write_manifest(const DatasetManifest& m, const std::filesystem::path& path);

struct AssembleOptions {
    bool balance = false;
    int n_per_class = 0;        // used when balance is set
    std::uint64_t seed = 0;
    Split split = Split::train;
    /// When balancing runs short of positives, expand them with the
    /// traditional set {3 axis flips, 3 axial 90-degree rotations}; the
    /// augmented volumes are written under augment_dir.
    bool allow_augment = false;
    std::filesystem::path augment_dir;
};

/// Pools the sources and draws without replacement (seeded shuffle). With
/// balance set the output holds exactly n_per_class entries per label and
/// never repeats an entry; provenance is preserved. Throws Error when a
/// class runs short (after augmentation, if enabled).
DatasetManifest assemble_dataset(std::span<const DatasetManifest> sources,
                                 const AssembleOptions& opts);

/// Loads every entry's patch volume. Throws IoError on missing files.
std::vector<Sample> materialize(const DatasetManifest& m);

}  // namespace voxaug
