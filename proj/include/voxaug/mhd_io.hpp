// Copyright 2026 The voxaug authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <filesystem>

#include "voxaug/volume.hpp"

namespace voxaug {

/// Reads a MetaImage header (.mhd/.mha) plus its little-endian raw payload.
///
/// Recognized keys: NDims, DimSize, ElementSpacing, Offset, ElementType,
/// ElementByteOrderMSB / BinaryDataByteOrderMSB, CompressedData,
/// ElementDataFile (LOCAL or a path relative to the header). Header order
/// is x y z; storage order is z-major. Unknown keys are ignored with a
/// warning on stderr.
///
/// Volume kind is inferred from ElementType: MET_SHORT/MET_USHORT -> raw_ct,
/// MET_UCHAR -> mask, MET_FLOAT -> normalized. Float or uchar payloads whose
/// values fall outside [0,1] / {0,1} are demoted to raw_ct instead of
/// failing, since foreign files use those types for arbitrary scalars.
///
/// Throws IoError for a missing header or raw file, ParseError for a
/// malformed header, an unsupported element type, or a payload whose byte
/// length disagrees with DimSize.
Volume read_volume(const std::filesystem::path& header_path);

/// Writes `v` as a header + raw pair next to `header_path` (payload file
/// shares the stem, extension .raw). Element type follows kind: raw_ct is
/// persisted as MET_SHORT (values rounded to the nearest integer HU),
/// normalized as MET_FLOAT, mask as MET_UCHAR. read_volume inverts this
/// exactly. Throws IoError on write failure.
void write_volume(const Volume& v, const std::filesystem::path& header_path);

}  // namespace voxaug
