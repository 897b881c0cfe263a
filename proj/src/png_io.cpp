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

#include "densify/png_io.hpp"

#include <png.h>

#include <cstdio>
#include <memory>

#include "densify/errors.hpp"

namespace densify {

namespace {

struct FileCloser {
  void operator()(std::FILE* f) const {
    if (f) std::fclose(f);
  }
};
using FilePtr = std::unique_ptr<std::FILE, FileCloser>;

struct PngReader {
  png_structp png = nullptr;
  png_infop info = nullptr;
  PngReader() {
    png = png_create_read_struct(PNG_LIBPNG_VER_STRING, nullptr, nullptr,
                                 nullptr);
    if (png) info = png_create_info_struct(png);
  }
  ~PngReader() { png_destroy_read_struct(&png, &info, nullptr); }
};

struct PngWriter {
  png_structp png = nullptr;
  png_infop info = nullptr;
  PngWriter() {
    png = png_create_write_struct(PNG_LIBPNG_VER_STRING, nullptr, nullptr,
                                  nullptr);
    if (png) info = png_create_info_struct(png);
  }
  ~PngWriter() { png_destroy_write_struct(&png, &info); }
};

bool host_is_little_endian() {
  const std::uint16_t probe = 1;
  return *reinterpret_cast<const std::uint8_t*>(&probe) == 1;
}

FilePtr open_for_read(const std::filesystem::path& path) {
  FilePtr fp(std::fopen(path.string().c_str(), "rb"));
  if (!fp) throw NotFound("cannot open " + path.string());
  return fp;
}

FilePtr open_for_write(const std::filesystem::path& path) {
  FilePtr fp(std::fopen(path.string().c_str(), "wb"));
  if (!fp) throw IoError("cannot create " + path.string());
  return fp;
}

}  // namespace

ImageU16 read_png16_gray(const std::filesystem::path& path) {
  FilePtr fp = open_for_read(path);
  PngReader r;
  if (!r.png || !r.info) throw IoError("libpng init failed");
  if (setjmp(png_jmpbuf(r.png))) {
    throw IoError("libpng failed reading " + path.string());
  }
  png_init_io(r.png, fp.get());
  png_read_info(r.png, r.info);

  const int bit_depth = png_get_bit_depth(r.png, r.info);
  const int color_type = png_get_color_type(r.png, r.info);
  if (bit_depth != 16) {
    throw WrongBitDepth(path.string() + ": expected 16-bit PNG, got " +
                        std::to_string(bit_depth) + "-bit");
  }
  if (color_type != PNG_COLOR_TYPE_GRAY) {
    throw WrongChannelCount(path.string() +
                            ": expected single-channel grayscale PNG");
  }

  ImageU16 img;
  img.width = static_cast<int>(png_get_image_width(r.png, r.info));
  img.height = static_cast<int>(png_get_image_height(r.png, r.info));
  img.data.resize(static_cast<std::size_t>(img.width) * img.height);

  if (host_is_little_endian()) png_set_swap(r.png);
  png_read_update_info(r.png, r.info);

  std::vector<png_bytep> rows(img.height);
  for (int v = 0; v < img.height; ++v) {
    rows[v] = reinterpret_cast<png_bytep>(
        img.data.data() + static_cast<std::size_t>(v) * img.width);
  }
  png_read_image(r.png, rows.data());
  png_read_end(r.png, nullptr);
  return img;
}

void write_png16_gray(const ImageU16& img, const std::filesystem::path& path) {
  if (img.width <= 0 || img.height <= 0 ||
      img.data.size() != static_cast<std::size_t>(img.width) * img.height) {
    throw DimensionMismatch("write_png16_gray: inconsistent image");
  }
  FilePtr fp = open_for_write(path);
  PngWriter w;
  if (!w.png || !w.info) throw IoError("libpng init failed");
  if (setjmp(png_jmpbuf(w.png))) {
    throw IoError("libpng failed writing " + path.string());
  }
  png_init_io(w.png, fp.get());
  png_set_IHDR(w.png, w.info, img.width, img.height, 16, PNG_COLOR_TYPE_GRAY,
               PNG_INTERLACE_NONE, PNG_COMPRESSION_TYPE_DEFAULT,
               PNG_FILTER_TYPE_DEFAULT);
  // Fixed compression settings keep output bytes reproducible.
  png_set_compression_level(w.png, 6);
  png_set_filter(w.png, 0, PNG_FILTER_NONE);
  png_write_info(w.png, w.info);
  if (host_is_little_endian()) png_set_swap(w.png);

  std::vector<png_bytep> rows(img.height);
  for (int v = 0; v < img.height; ++v) {
    rows[v] = const_cast<png_bytep>(reinterpret_cast<png_const_bytep>(
        img.data.data() + static_cast<std::size_t>(v) * img.width));
  }
  png_write_image(w.png, rows.data());
  png_write_end(w.png, nullptr);
}

ImageU8 read_png8_rgb(const std::filesystem::path& path) {
  FilePtr fp = open_for_read(path);
  PngReader r;
  if (!r.png || !r.info) throw IoError("libpng init failed");
  if (setjmp(png_jmpbuf(r.png))) {
    throw IoError("libpng failed reading " + path.string());
  }
  png_init_io(r.png, fp.get());
  png_read_info(r.png, r.info);

  if (png_get_bit_depth(r.png, r.info) > 8) {
    throw WrongBitDepth(path.string() + ": expected 8-bit color PNG");
  }
  png_set_expand(r.png);
  png_set_strip_alpha(r.png);
  if ((png_get_color_type(r.png, r.info) & PNG_COLOR_MASK_COLOR) == 0) {
    png_set_gray_to_rgb(r.png);
  }
  png_set_packing(r.png);
  png_read_update_info(r.png, r.info);

  if (png_get_channels(r.png, r.info) != 3) {
    throw WrongChannelCount(path.string() + ": cannot expand to RGB");
  }

  ImageU8 img;
  img.width = static_cast<int>(png_get_image_width(r.png, r.info));
  img.height = static_cast<int>(png_get_image_height(r.png, r.info));
  img.data.resize(3 * static_cast<std::size_t>(img.width) * img.height);

  std::vector<png_bytep> rows(img.height);
  for (int v = 0; v < img.height; ++v) {
    rows[v] = img.data.data() + 3 * static_cast<std::size_t>(v) * img.width;
  }
  png_read_image(r.png, rows.data());
  png_read_end(r.png, nullptr);
  return img;
}

void write_png8_rgb(const ImageU8& img, const std::filesystem::path& path) {
  if (img.width <= 0 || img.height <= 0 ||
      img.data.size() !=
          3 * static_cast<std::size_t>(img.width) * img.height) {
    throw DimensionMismatch("write_png8_rgb: inconsistent image");
  }
  FilePtr fp = open_for_write(path);
  PngWriter w;
  if (!w.png || !w.info) throw IoError("libpng init failed");
  if (setjmp(png_jmpbuf(w.png))) {
    throw IoError("libpng failed writing " + path.string());
  }
  png_init_io(w.png, fp.get());
  png_set_IHDR(w.png, w.info, img.width, img.height, 8, PNG_COLOR_TYPE_RGB,
               PNG_INTERLACE_NONE, PNG_COMPRESSION_TYPE_DEFAULT,
               PNG_FILTER_TYPE_DEFAULT);
  png_set_compression_level(w.png, 6);
  png_set_filter(w.png, 0, PNG_FILTER_NONE);
  png_write_info(w.png, w.info);

  std::vector<png_bytep> rows(img.height);
  for (int v = 0; v < img.height; ++v) {
    rows[v] = const_cast<png_bytep>(
        img.data.data() + 3 * static_cast<std::size_t>(v) * img.width);
  }
  png_write_image(w.png, rows.data());
  png_write_end(w.png, nullptr);
}

}  // namespace densify
