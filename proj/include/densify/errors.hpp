// Copyright 2026 The densify Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace densify {

// Base class for all library errors.  Input/format problems map to exit
// code 1 in the CLI, everything else to exit code 2.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// --- I/O and input format ---
struct IoError : Error {
  using Error::Error;
};
struct NotFound : IoError {
  using IoError::IoError;
};
struct WrongBitDepth : IoError {
  using IoError::IoError;
};
struct WrongChannelCount : IoError {
  using IoError::IoError;
};
struct DepthOverflow : IoError {
  using IoError::IoError;
};
struct ParseError : IoError {
  using IoError::IoError;
};
struct InvalidConfig : IoError {
  using IoError::IoError;
};

// --- geometry / numerics ---
struct SingularM : Error {
  using Error::Error;
};
struct NonPositiveDepth : Error {
  using Error::Error;
};
struct DegenerateGeometry : Error {
  using Error::Error;
};
struct SingularSample : Error {
  using Error::Error;
};
struct RayParallelToPlane : Error {
  using Error::Error;
};
struct DegenerateHull : Error {
  using Error::Error;
};
struct ImageTooSmall : Error {
  using Error::Error;
};
struct PatchBehindCamera : Error {
  using Error::Error;
};

// --- sizes and evaluation ---
struct DimensionMismatch : Error {
  using Error::Error;
};
struct EmptyInput : Error {
  using Error::Error;
};
struct EmptyGroundTruth : Error {
  using Error::Error;
};

// Strict evaluation found ground-truth pixels without a prediction.
struct MissingPrediction : Error {
  MissingPrediction(const std::string& what, std::size_t count)
      : Error(what), missing_count(count) {}
  std::size_t missing_count = 0;
};

}  // namespace densify
