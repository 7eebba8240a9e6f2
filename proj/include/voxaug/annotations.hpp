// Copyright 2026 The voxaug authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "voxaug/volume.hpp"

namespace voxaug {

enum class NoduleLabel : std::uint8_t { non_nodule = 0, nodule = 1 };

/// One nodule record. Annotation tables carry a diameter; candidate tables
/// carry a class label instead. Centres arrive as (x,y,z) world mm in the
/// CSV and are stored (z,y,x) like everything else here.
struct Annotation {
    std::string series_id;
    WorldPoint center_world;
    std::optional<double> diameter_mm;
    std::optional<NoduleLabel> label;
};

enum class AnnotationKind { annotations, candidates };

/// Parses a LUNA16-style CSV: header row, then
///   seriesuid,coordX,coordY,coordZ,diameter_mm   (annotations)
///   seriesuid,coordX,coordY,coordZ,class         (candidates, 1=nodule)
/// A row with the wrong column count or a non-numeric field raises
/// ParseError naming the offending line number.
std::vector<Annotation> read_annotations(const std::filesystem::path& path, AnnotationKind kind);

}  // namespace voxaug
