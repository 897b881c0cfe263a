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

#include "densify/convex_hull.hpp"

#include <algorithm>
#include <cstdint>

#include "densify/errors.hpp"

namespace densify {

namespace {

std::int64_t cross(PixelCoord o, PixelCoord a, PixelCoord b) {
  return static_cast<std::int64_t>(a.u - o.u) * (b.v - o.v) -
         static_cast<std::int64_t>(a.v - o.v) * (b.u - o.u);
}

}  // namespace

ConvexHullRegion convex_hull(std::span<const PixelCoord> points) {
  std::vector<PixelCoord> pts(points.begin(), points.end());
  std::sort(pts.begin(), pts.end(), [](PixelCoord a, PixelCoord b) {
    return a.u < b.u || (a.u == b.u && a.v < b.v);
  });
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  if (pts.size() < 3) throw DegenerateHull("hull needs 3 distinct points");

  // Monotone chain with strict turns; collinear points are dropped.
  std::vector<PixelCoord> hull(2 * pts.size());
  std::size_t k = 0;
  for (const PixelCoord& p : pts) {  // lower
    while (k >= 2 && cross(hull[k - 2], hull[k - 1], p) <= 0) --k;
    hull[k++] = p;
  }
  const std::size_t lower = k + 1;
  for (auto it = pts.rbegin() + 1; it != pts.rend(); ++it) {  // upper
    while (k >= lower && cross(hull[k - 2], hull[k - 1], *it) <= 0) --k;
    hull[k++] = *it;
  }
  hull.resize(k - 1);
  if (hull.size() < 3) throw DegenerateHull("points are collinear");
  return {std::move(hull)};
}

bool hull_contains(const ConvexHullRegion& hull, PixelCoord p) {
  const auto& v = hull.vertices;
  for (std::size_t i = 0; i < v.size(); ++i) {
    const PixelCoord a = v[i];
    const PixelCoord b = v[(i + 1) % v.size()];
    if (cross(a, b, p) < 0) return false;
  }
  return true;
}

std::vector<PixelCoord> rasterize_hull(const ConvexHullRegion& hull,
                                       const Superpixel& sp) {
  std::vector<PixelCoord> out;
  int min_u = hull.vertices[0].u, max_u = min_u;
  int min_v = hull.vertices[0].v, max_v = min_v;
  for (const PixelCoord& p : hull.vertices) {
    min_u = std::min(min_u, p.u);
    max_u = std::max(max_u, p.u);
    min_v = std::min(min_v, p.v);
    max_v = std::max(max_v, p.v);
  }
  for (const PixelCoord& p : sp.pixels) {
    if (p.u < min_u || p.u > max_u || p.v < min_v || p.v > max_v) continue;
    if (hull_contains(hull, p)) out.push_back(p);
  }
  return out;
}

}  // namespace densify
