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
#include <filesystem>
#include <vector>

namespace densify {

// Interleaved 8-bit RGB image.
struct ImageU8 {
  int width = 0;
  int height = 0;
  std::vector<std::uint8_t> data;  // 3 * width * height

  std::size_t index(int u, int v) const {
    return 3 * (static_cast<std::size_t>(v) * width + u);
  }
};

// Single-channel 16-bit image in host byte order.
struct ImageU16 {
  int width = 0;
  int height = 0;
  std::vector<std::uint16_t> data;  // width * height

  std::uint16_t at(int u, int v) const {
    return data[static_cast<std::size_t>(v) * width + u];
  }
};

// 16-bit grayscale only; anything else throws WrongBitDepth /
// WrongChannelCount rather than silently rescaling.
ImageU16 read_png16_gray(const std::filesystem::path& path);
void write_png16_gray(const ImageU16& img, const std::filesystem::path& path);

// Accepts 8-bit gray / palette / RGB / RGBA inputs and expands to RGB;
// rejects 16-bit files.
ImageU8 read_png8_rgb(const std::filesystem::path& path);
void write_png8_rgb(const ImageU8& img, const std::filesystem::path& path);

}  // namespace densify
