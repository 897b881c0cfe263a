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

#include "densify/kitti_io.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <fstream>
#include <sstream>

#include "densify/errors.hpp"

namespace densify {

namespace {

constexpr double kMmPerRaw = 1000.0 / 256.0;

// KITTI selection sets keep the same frame under different folder tokens;
// strip the token so the folders join on one id.
std::string canonical_frame_id(std::string stem) {
  for (const char* token :
       {"_velodyne_raw_", "_groundtruth_depth_", "_groundtruth_", "_image_"}) {
    const auto pos = stem.find(token);
    if (pos != std::string::npos) {
      return stem.substr(0, pos) + "_frame_" +
             stem.substr(pos + std::string(token).size());
    }
  }
  return stem;
}

std::array<std::uint8_t, 3> error_color(double err_mm) {
  // blue -> green -> red over [0, 5000] mm
  const double t = std::clamp(err_mm / 5000.0, 0.0, 1.0);
  double r = 0, g = 0, b = 0;
  if (t < 0.5) {
    const double s = t / 0.5;
    b = 1.0 - s;
    g = s;
  } else {
    const double s = (t - 0.5) / 0.5;
    g = 1.0 - s;
    r = s;
  }
  auto q = [](double x) {
    return static_cast<std::uint8_t>(std::lround(255.0 * x));
  };
  return {q(r), q(g), q(b)};
}

}  // namespace

DepthMap read_depth_png(const std::filesystem::path& path) {
  const ImageU16 raw = read_png16_gray(path);
  DepthMap map(raw.width, raw.height);
  for (std::size_t i = 0; i < raw.data.size(); ++i) {
    map.values()[i] = raw.data[i] * kMmPerRaw;
  }
  return map;
}

void write_depth_png(const DepthMap& map, const std::filesystem::path& path) {
  if (map.empty()) throw DimensionMismatch("cannot write an empty DepthMap");
  ImageU16 raw;
  raw.width = map.width();
  raw.height = map.height();
  raw.data.resize(map.size());
  for (std::size_t i = 0; i < map.size(); ++i) {
    const double mm = map.values()[i];
    if (mm <= 0.0) {
      raw.data[i] = 0;  // negative or missing -> missing
      continue;
    }
    const long long q = std::llround(mm / kMmPerRaw);
    if (q > 65535) {
      throw DepthOverflow("depth " + std::to_string(mm) +
                          " mm exceeds the 16-bit PNG range");
    }
    raw.data[i] = static_cast<std::uint16_t>(q);
  }
  write_png16_gray(raw, path);
}

CameraModel parse_intrinsics(const std::string& text,
                             const std::string& origin) {
  std::istringstream in(text);
  std::vector<double> vals;
  double x = 0;
  while (in >> x) vals.push_back(x);
  if (!in.eof()) {
    // Trailing garbage after the last parsed number.
    std::string rest;
    in.clear();
    in >> rest;
    if (!rest.empty()) {
      throw ParseError(origin + ": unexpected token '" + rest + "'");
    }
  }
  Eigen::Matrix<double, 3, 4> p = Eigen::Matrix<double, 3, 4>::Zero();
  if (vals.size() == 12) {
    for (int r = 0; r < 3; ++r) {
      for (int c = 0; c < 4; ++c) p(r, c) = vals[4 * r + c];
    }
  } else if (vals.size() == 9) {
    for (int r = 0; r < 3; ++r) {
      for (int c = 0; c < 3; ++c) p(r, c) = vals[3 * r + c];
    }
  } else {
    throw ParseError(origin + ": expected 9 or 12 values, got " +
                     std::to_string(vals.size()));
  }
  try {
    return CameraModel::from_projection(p);
  } catch (const SingularM&) {
    throw SingularM(origin + ": camera matrix M is singular");
  }
}

CameraModel read_intrinsics(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw NotFound("intrinsics file not found: " + path.string());
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_intrinsics(buf.str(), path.string());
}

std::vector<FrameInputs> discover_frames(const std::filesystem::path& dir) {
  namespace fs = std::filesystem;
  const fs::path image_dir = dir / "image";
  const fs::path sparse_dir = dir / "velodyne_raw";
  if (!fs::is_directory(sparse_dir)) {
    throw NotFound("no velodyne_raw/ directory under " + dir.string());
  }
  if (!fs::is_directory(image_dir)) {
    throw NotFound("no image/ directory under " + dir.string());
  }

  fs::path gt_dir = dir / "groundtruth";
  if (!fs::is_directory(gt_dir)) gt_dir = dir / "groundtruth_depth";
  const bool have_gt = fs::is_directory(gt_dir);
  const fs::path intr_dir = dir / "intrinsics";
  const fs::path shared_intrinsics = dir / "intrinsics.txt";

  auto index_dir = [](const fs::path& d) {
    std::vector<std::pair<std::string, fs::path>> out;
    for (const auto& e : fs::directory_iterator(d)) {
      if (!e.is_regular_file()) continue;
      const fs::path p = e.path();
      if (p.extension() != ".png" && p.extension() != ".txt") continue;
      out.emplace_back(canonical_frame_id(p.stem().string()), p);
    }
    std::sort(out.begin(), out.end());
    return out;
  };

  auto find_in = [](const std::vector<std::pair<std::string, fs::path>>& idx,
                    const std::string& id) -> std::optional<fs::path> {
    const auto it = std::lower_bound(
        idx.begin(), idx.end(), id,
        [](const auto& a, const std::string& b) { return a.first < b; });
    if (it != idx.end() && it->first == id) return it->second;
    return std::nullopt;
  };

  const auto images = index_dir(image_dir);
  const auto gts = have_gt ? index_dir(gt_dir)
                           : std::vector<std::pair<std::string, fs::path>>{};
  const auto intrs = fs::is_directory(intr_dir)
                         ? index_dir(intr_dir)
                         : std::vector<std::pair<std::string, fs::path>>{};

  std::vector<FrameInputs> frames;
  for (const auto& [id, sparse_path] : index_dir(sparse_dir)) {
    FrameInputs f;
    f.frame_id = id;
    f.sparse = sparse_path;
    if (auto rgb = find_in(images, id)) {
      f.rgb = *rgb;
    } else {
      throw NotFound("no RGB image for frame '" + id + "'");
    }
    if (auto gt = find_in(gts, id)) f.ground_truth = *gt;
    if (auto intr = find_in(intrs, id)) {
      f.intrinsics = *intr;
    } else if (fs::is_regular_file(shared_intrinsics)) {
      f.intrinsics = shared_intrinsics;
    } else {
      throw NotFound("no intrinsics for frame '" + id + "'");
    }
    frames.push_back(std::move(f));
  }
  if (frames.empty()) {
    throw NotFound("no frames found under " + dir.string());
  }
  return frames;
}

FrameBundle load_frame(const FrameInputs& inputs) {
  FrameBundle frame;
  frame.frame_id = inputs.frame_id;
  frame.rgb = read_png8_rgb(inputs.rgb);
  frame.sparse = read_depth_png(inputs.sparse);
  if (inputs.ground_truth) {
    frame.ground_truth = read_depth_png(*inputs.ground_truth);
  }
  frame.cam = read_intrinsics(inputs.intrinsics);
  if (frame.rgb.width != frame.sparse.width() ||
      frame.rgb.height != frame.sparse.height()) {
    throw DimensionMismatch("frame '" + inputs.frame_id +
                            "': RGB and sparse depth sizes differ");
  }
  if (frame.ground_truth && !frame.ground_truth->same_size(frame.sparse)) {
    throw DimensionMismatch("frame '" + inputs.frame_id +
                            "': ground truth size differs");
  }
  return frame;
}

void write_error_map_png(const DepthMap& pred, const DepthMap& gt,
                         const std::filesystem::path& path) {
  if (!pred.same_size(gt)) {
    throw DimensionMismatch("error map: prediction and ground truth differ");
  }
  ImageU8 img;
  img.width = pred.width();
  img.height = pred.height();
  img.data.assign(3 * pred.size(), 0);
  for (int v = 0; v < pred.height(); ++v) {
    for (int u = 0; u < pred.width(); ++u) {
      if (!gt.has(u, v) || !pred.has(u, v)) continue;
      const auto rgb = error_color(std::abs(pred.at(u, v) - gt.at(u, v)));
      const std::size_t i = img.index(u, v);
      img.data[i] = rgb[0];
      img.data[i + 1] = rgb[1];
      img.data[i + 2] = rgb[2];
    }
  }
  write_png8_rgb(img, path);
}

}  // namespace densify
