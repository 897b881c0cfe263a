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
#include <vector>

#include "densify/superpixel.hpp"
#include "densify/types.hpp"

namespace densify {

// Convex hull in pixel coordinates, vertices counter-clockwise in (u, v)
// with strict turns (so vertices are a subset of the input points).
struct ConvexHullRegion {
  std::vector<PixelCoord> vertices;
};

// Monotone chain; exact integer arithmetic.  Throws DegenerateHull when the
// input has fewer than 3 points or is collinear.
ConvexHullRegion convex_hull(std::span<const PixelCoord> points);

// Inclusive point-in-hull test (boundary counts as inside).
bool hull_contains(const ConvexHullRegion& hull, PixelCoord p);

// Pixels of the superpixel that lie inside or on the hull, in the
// superpixel's pixel order.  Never leaks outside the superpixel.
std::vector<PixelCoord> rasterize_hull(const ConvexHullRegion& hull,
                                       const Superpixel& sp);

}  // namespace densify
