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
#include <cstdint>
#include <vector>

#include "densify/config.hpp"
#include "densify/png_io.hpp"

namespace densify {

// Planar CIELAB image (D65 white point).  L in [0, 100].  In gray mode the
// a and b channels are zero, so color distances reduce to |dL|.
struct LabImage {
  int width = 0;
  int height = 0;
  std::vector<float> l;
  std::vector<float> a;
  std::vector<float> b;

  std::size_t index(int u, int v) const {
    return static_cast<std::size_t>(v) * width + u;
  }
};

// Scalar sRGB (8-bit) -> CIELAB, D65 reference.
std::array<double, 3> srgb_to_lab(std::uint8_t r, std::uint8_t g,
                                  std::uint8_t b);

LabImage to_lab(const ImageU8& rgb);

// Working colorspace for segmentation and filtering guides.
LabImage make_guide(const ImageU8& rgb, Colorspace colorspace);

}  // namespace densify
