// Copyright 2026 The voxaug authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <stdexcept>
#include <string>

namespace voxaug {

/// Base class for all voxaug failures.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Filesystem-level failure: missing file, short read, unwritable path.
class IoError : public Error {
public:
    using Error::Error;
};

/// Malformed input: bad header field, bad CSV row, corrupt model payload.
class ParseError : public Error {
public:
    using Error::Error;
};

/// Index or world coordinate outside the valid grid.
class BoundsError : public Error {
public:
    using Error::Error;
};

}  // namespace voxaug
