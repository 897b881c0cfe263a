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

#include <array>
#include <filesystem>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "densify/kitti_io.hpp"
#include "densify/plane.hpp"

namespace densify {

// A planar piece of the scene: plane coefficients (meters), a convex image
// region, and a solid guidance color.
struct PlanarPatch {
  Plane plane;
  std::vector<Eigen::Vector2d> polygon;  // convex, pixel coordinates
  std::array<std::uint8_t, 3> color = {128, 128, 128};
};

// LiDAR-like sampling: rows row_start, row_start + row_step, ... and within
// them columns col_start, col_start + col_step, ...
struct ScanPattern {
  int row_start = 0;
  int row_step = 4;
  int col_start = 0;
  int col_step = 2;
};

// Piecewise-planar scene with a virtual pinhole camera.  Patches are probed
// in order and the first one containing a pixel wins, so specific patches
// come first and a backdrop last; together they must cover every pixel.
struct SyntheticScene {
  std::string name;
  int width = 0;
  int height = 0;
  CameraModel cam = CameraModel::pinhole(1, 1, 0, 0);
  ScanPattern scan;
  std::vector<PlanarPatch> patches;

  // Optional deterministic artifact injectors, applied to the sparse map.
  double noise_sigma_mm = 0.0;
  double outlier_fraction = 0.0;
  int misalignment_offset_px = 0;
};

// Scene description file: '#' comments plus the directives
//   name <string>
//   size <width> <height>
//   projection <12 reals, row-major 3x4, meters>
//   scan <row_start> <row_step> <col_start> <col_step>
//   noise_sigma_mm <float>          (optional)
//   outlier_fraction <float>        (optional)
//   misalignment_offset <int px>    (optional)
//   patch <pi0 pi1 pi2 pi3> <r g b> <nverts> <u0 v0 ... >
SyntheticScene parse_scene(const std::string& text, const std::string& origin);
SyntheticScene load_scene(const std::filesystem::path& path);

// Ground truth from exact ray-plane intersections, sparse map from the scan
// pattern (plus any configured injectors), solid patch colors.
// Throws PatchBehindCamera when a patch has non-positive depth somewhere in
// its region.
FrameBundle render(const SyntheticScene& scene);

struct InjectionResult {
  FrameBundle frame;
  std::vector<PixelCoord> injected;  // where misaligned samples landed
};

// Reproduces the camera/LiDAR misalignment artifact: sparse samples sitting
// on geometry at least 1.5x deeper than the pixel `offset_px` to their
// right are moved there, planting background depths inside foreground
// regions.  Ground truth is left untouched.
InjectionResult inject_misalignment(const FrameBundle& frame, int offset_px);

}  // namespace densify
