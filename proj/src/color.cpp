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

#include "densify/color.hpp"

#include <cmath>

namespace densify {

namespace {

double srgb_linearize(std::uint8_t c8) {
  const double c = c8 / 255.0;
  return c <= 0.04045 ? c / 12.92 : std::pow((c + 0.055) / 1.055, 2.4);
}

double lab_f(double t) {
  constexpr double kDelta = 6.0 / 29.0;
  return t > kDelta * kDelta * kDelta
             ? std::cbrt(t)
             : t / (3.0 * kDelta * kDelta) + 4.0 / 29.0;
}

}  // namespace

std::array<double, 3> srgb_to_lab(std::uint8_t r8, std::uint8_t g8,
                                  std::uint8_t b8) {
  const double r = srgb_linearize(r8);
  const double g = srgb_linearize(g8);
  const double b = srgb_linearize(b8);

  // sRGB -> XYZ, D65.
  const double x = 0.4124564 * r + 0.3575761 * g + 0.1804375 * b;
  const double y = 0.2126729 * r + 0.7151522 * g + 0.0721750 * b;
  const double z = 0.0193339 * r + 0.1191920 * g + 0.9503041 * b;

  const double fx = lab_f(x / 0.95047);
  const double fy = lab_f(y / 1.0);
  const double fz = lab_f(z / 1.08883);

  return {116.0 * fy - 16.0, 500.0 * (fx - fy), 200.0 * (fy - fz)};
}

LabImage to_lab(const ImageU8& rgb) {
  LabImage out;
  out.width = rgb.width;
  out.height = rgb.height;
  const std::size_t n = static_cast<std::size_t>(rgb.width) * rgb.height;
  out.l.resize(n);
  out.a.resize(n);
  out.b.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    const auto lab =
        srgb_to_lab(rgb.data[3 * i], rgb.data[3 * i + 1], rgb.data[3 * i + 2]);
    out.l[i] = static_cast<float>(lab[0]);
    out.a[i] = static_cast<float>(lab[1]);
    out.b[i] = static_cast<float>(lab[2]);
  }
  return out;
}

LabImage make_guide(const ImageU8& rgb, Colorspace colorspace) {
  LabImage lab = to_lab(rgb);
  if (colorspace == Colorspace::kGray) {
    std::fill(lab.a.begin(), lab.a.end(), 0.0f);
    std::fill(lab.b.begin(), lab.b.end(), 0.0f);
  }
  return lab;
}

}  // namespace densify
