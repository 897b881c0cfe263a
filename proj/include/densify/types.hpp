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

#include <Eigen/Core>

namespace densify {

// Depth values travel as millimeters; 3D geometry is computed in meters in
// the camera frame (X right, Y down, Z along the optical axis).
inline constexpr double kMmPerMeter = 1000.0;

// Pixel position: u is the column, v the row.
struct PixelCoord {
  int u = 0;
  int v = 0;

  friend bool operator==(const PixelCoord&, const PixelCoord&) = default;
};

using Point3 = Eigen::Vector3d;  // meters, camera frame

// One LiDAR measurement bound to a pixel.
struct KnownDepth {
  PixelCoord pixel;
  double depth_mm = 0.0;
};

}  // namespace densify
