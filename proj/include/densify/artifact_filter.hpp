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

#include "densify/depth_map.hpp"

namespace densify {

// Rectangular neighborhood around a measurement.  LiDAR-camera misalignment
// smears background points vertically, so the default is taller than wide.
// (0, 0) makes the filter a no-op.
struct NeighborhoodSpec {
  int radius_u = 2;
  int radius_v = 4;
};

// Suppresses background measurements projected next to closer foreground
// measurements: any neighbor of a measured pixel whose depth is >= tau_n
// times that pixel's depth is cleared.
//
// All comparisons read the input map and write to a fresh output, so the
// result does not depend on pixel iteration order.  The measured set of the
// output is always a subset of the input's.
DepthMap suppress_misalignment(const DepthMap& sparse, double tau_n,
                               NeighborhoodSpec neighborhood);

}  // namespace densify
