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
#include <vector>

#include "densify/errors.hpp"
#include "densify/types.hpp"

namespace densify {

// Row-major grid of depths in millimeters.  0 always means "no measurement",
// never "zero distance"; all stored values are >= 0.
class DepthMap {
 public:
  DepthMap() = default;
  DepthMap(int width, int height) : width_(width), height_(height) {
    if (width <= 0 || height <= 0) {
      throw DimensionMismatch("DepthMap dimensions must be positive");
    }
    values_.assign(static_cast<std::size_t>(width) * height, 0.0);
  }

  int width() const { return width_; }
  int height() const { return height_; }
  std::size_t size() const { return values_.size(); }
  bool empty() const { return values_.empty(); }

  bool in_bounds(int u, int v) const {
    return u >= 0 && u < width_ && v >= 0 && v < height_;
  }
  bool in_bounds(PixelCoord p) const { return in_bounds(p.u, p.v); }

  double at(int u, int v) const { return values_[index(u, v)]; }
  double at(PixelCoord p) const { return at(p.u, p.v); }
  void set(int u, int v, double mm) { values_[index(u, v)] = mm; }
  void set(PixelCoord p, double mm) { set(p.u, p.v, mm); }
  void clear(int u, int v) { values_[index(u, v)] = 0.0; }

  bool has(int u, int v) const { return at(u, v) > 0.0; }
  bool has(PixelCoord p) const { return has(p.u, p.v); }

  std::size_t index(int u, int v) const {
    return static_cast<std::size_t>(v) * width_ + u;
  }

  std::size_t measurement_count() const {
    std::size_t n = 0;
    for (double d : values_) n += (d > 0.0);
    return n;
  }

  const std::vector<double>& values() const { return values_; }
  std::vector<double>& values() { return values_; }

  bool same_size(const DepthMap& other) const {
    return width_ == other.width_ && height_ == other.height_;
  }

 private:
  int width_ = 0;
  int height_ = 0;
  std::vector<double> values_;
};

}  // namespace densify
