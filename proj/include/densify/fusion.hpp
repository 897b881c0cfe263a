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

#include <span>

#include "densify/color.hpp"
#include "densify/config.hpp"
#include "densify/depth_map.hpp"

namespace densify {

// Per-pixel median over the maps that carry a value there; pixels missing
// everywhere stay missing.  For an even count the lower-middle element is
// taken, so fused values always come from an input map.
DepthMap median_fuse(std::span<const DepthMap> maps);

// Fills every hole with a weighted mean over the K spatially nearest
// measured pixels, weighted by spatial and guide-color Gaussians (the
// nearest-neighbor variant of a joint bilateral filter; the support set
// adapts to the irregular measurement pattern instead of a fixed kernel).
// Measured pixels pass through unchanged.  Throws EmptyInput when the map
// carries no measurement at all.
DepthMap fill_nn_jbf(const DepthMap& partial, const LabImage& guide,
                     const PipelineConfig& cfg);

// Depth-agnostic fallback: level-synchronous dilation that gives each hole
// the depth of its nearest measurement (L1 pixel distance), preferring the
// smaller depth on ties.  Throws EmptyInput when there is no measurement.
DepthMap fill_morphological(const DepthMap& partial);

}  // namespace densify
