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

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "densify/camera.hpp"
#include "densify/depth_map.hpp"
#include "densify/png_io.hpp"

namespace densify {

// Depth PNG convention (KITTI depth completion):
//   16-bit single-channel grayscale, depth_meters = raw / 256, raw 0 = no
//   measurement.  Internally that is depth_mm = raw * 1000 / 256.
DepthMap read_depth_png(const std::filesystem::path& path);

// Inverse of read_depth_png on the representable lattice.  Values <= 0 are
// written as missing; values above the 16-bit range throw DepthOverflow.
void write_depth_png(const DepthMap& map, const std::filesystem::path& path);

// Intrinsics file: whitespace-separated reals, either a full 3x4 projection
// matrix (12 values, row-major) or a bare 3x3 camera matrix (9 values,
// fourth column taken as zero).  Units are meters.
CameraModel read_intrinsics(const std::filesystem::path& path);
CameraModel parse_intrinsics(const std::string& text,
                             const std::string& origin);

// Everything needed to complete one frame.
struct FrameBundle {
  ImageU8 rgb;
  DepthMap sparse;
  std::optional<DepthMap> ground_truth;
  CameraModel cam = CameraModel::pinhole(1, 1, 0, 0);
  std::string frame_id;
};

// Per-frame input paths discovered in a dataset directory:
//   image/         8-bit RGB guidance images
//   velodyne_raw/  16-bit sparse depth PNGs
//   groundtruth/   (or groundtruth_depth/) optional dense ground truth
//   intrinsics/<frame>.txt or a single intrinsics.txt for the sequence
// File stems may carry the KITTI folder token (e.g. *_velodyne_raw_*); the
// stems are canonicalized so the folders match up.
struct FrameInputs {
  std::string frame_id;
  std::filesystem::path rgb;
  std::filesystem::path sparse;
  std::optional<std::filesystem::path> ground_truth;
  std::filesystem::path intrinsics;
};

std::vector<FrameInputs> discover_frames(const std::filesystem::path& dir);

FrameBundle load_frame(const FrameInputs& inputs);

// False-color visualization of |pred - gt| for qualitative inspection.
// Colormap (documented, fixed): error 0 mm = blue, 2500 mm = green,
// >= 5000 mm = red, linear in between; pixels without ground truth or
// prediction are black.
void write_error_map_png(const DepthMap& pred, const DepthMap& gt,
                         const std::filesystem::path& path);

}  // namespace densify
