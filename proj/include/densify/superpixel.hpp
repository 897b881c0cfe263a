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

#include <cstdint>
#include <vector>

#include "densify/color.hpp"
#include "densify/config.hpp"
#include "densify/depth_map.hpp"
#include "densify/types.hpp"

namespace densify {

// One segment with its measured (K) and unmeasured (U) pixel sets.
struct Superpixel {
  int id = 0;
  std::vector<PixelCoord> pixels;   // row-major order
  std::vector<KnownDepth> known;    // K: pixels with a depth measurement
  std::vector<PixelCoord> unknown;  // U: pixels to interpolate
  bool admissible = false;
};

// Label image plus per-superpixel pixel sets.  Labels are a partition:
// every pixel carries exactly one id and every id owns at least one pixel.
struct SuperpixelMap {
  int width = 0;
  int height = 0;
  std::vector<std::int32_t> labels;
  std::vector<Superpixel> superpixels;

  // Sum of assignment distances per iteration; diagnostic only.
  std::vector<double> iteration_energy;

  std::int32_t label_at(int u, int v) const {
    return labels[static_cast<std::size_t>(v) * width + u];
  }
};

// SLIC oversegmentation: grid-initialized centers perturbed to the lowest
// gradient position in a 3x3 window, iterative assignment with
// D = d_color + (compactness / S) * d_xy, then 4-connectivity enforcement
// that absorbs orphan regions into the largest adjacent superpixel.
// Fully deterministic; no RNG involved.
//
// Throws ImageTooSmall if k exceeds the pixel count.
SuperpixelMap slic(const LabImage& image, int k, int iterations,
                   double compactness);

// Populates known/unknown sets from the (filtered) sparse depth map and
// flags admissible superpixels: at least cfg.tau_m_min_points measurements
// spread over rows and columns at least 2 px apart (a projected stand-in
// for "seen by two different scan lines in both directions").
void bind_depths(SuperpixelMap& map, const DepthMap& filtered,
                 const PipelineConfig& cfg);

// Debug visualization: the guidance image with superpixel boundaries
// painted on top.
void write_boundary_overlay_png(const ImageU8& rgb, const SuperpixelMap& map,
                                const std::filesystem::path& path);

}  // namespace densify
