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

#include "densify/synth.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include "densify/errors.hpp"
#include "densify/prng.hpp"

namespace densify {

namespace {

// Inclusive point-in-convex-polygon, vertices counter-clockwise.
bool polygon_contains(const std::vector<Eigen::Vector2d>& poly, double u,
                      double v) {
  constexpr double kEps = 1e-9;
  for (std::size_t i = 0; i < poly.size(); ++i) {
    const Eigen::Vector2d& a = poly[i];
    const Eigen::Vector2d& b = poly[(i + 1) % poly.size()];
    const double cross =
        (b.x() - a.x()) * (v - a.y()) - (b.y() - a.y()) * (u - a.x());
    if (cross < -kEps) return false;
  }
  return true;
}

void normalize_polygon(std::vector<Eigen::Vector2d>& poly,
                       const std::string& origin) {
  if (poly.size() < 3) {
    throw ParseError(origin + ": patch polygon needs at least 3 vertices");
  }
  double area2 = 0.0;
  for (std::size_t i = 0; i < poly.size(); ++i) {
    const auto& a = poly[i];
    const auto& b = poly[(i + 1) % poly.size()];
    area2 += a.x() * b.y() - b.x() * a.y();
  }
  if (area2 < 0.0) std::reverse(poly.begin(), poly.end());
  for (std::size_t i = 0; i < poly.size(); ++i) {
    const auto& a = poly[i];
    const auto& b = poly[(i + 1) % poly.size()];
    const auto& c = poly[(i + 2) % poly.size()];
    const double cross = (b.x() - a.x()) * (c.y() - a.y()) -
                         (b.y() - a.y()) * (c.x() - a.x());
    if (cross < -1e-9) {
      throw ParseError(origin + ": patch polygon is not convex");
    }
  }
}

}  // namespace

SyntheticScene parse_scene(const std::string& text,
                           const std::string& origin) {
  SyntheticScene scene;
  bool have_size = false, have_projection = false;
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    std::istringstream ls(line);
    std::string keyword;
    if (!(ls >> keyword)) continue;
    const std::string where = origin + ":" + std::to_string(lineno);
    auto fail = [&](const std::string& msg) -> ParseError {
      return ParseError(where + ": " + msg);
    };
    if (keyword == "name") {
      if (!(ls >> scene.name)) throw fail("expected a name");
    } else if (keyword == "size") {
      if (!(ls >> scene.width >> scene.height) || scene.width <= 0 ||
          scene.height <= 0) {
        throw fail("expected positive width and height");
      }
      have_size = true;
    } else if (keyword == "projection") {
      Eigen::Matrix<double, 3, 4> p;
      for (int r = 0; r < 3; ++r) {
        for (int c = 0; c < 4; ++c) {
          if (!(ls >> p(r, c))) throw fail("expected 12 projection values");
        }
      }
      scene.cam = CameraModel::from_projection(p);
      have_projection = true;
    } else if (keyword == "scan") {
      if (!(ls >> scene.scan.row_start >> scene.scan.row_step >>
            scene.scan.col_start >> scene.scan.col_step) ||
          scene.scan.row_step <= 0 || scene.scan.col_step <= 0) {
        throw fail("expected: scan row_start row_step col_start col_step");
      }
    } else if (keyword == "noise_sigma_mm") {
      if (!(ls >> scene.noise_sigma_mm)) throw fail("expected a float");
    } else if (keyword == "outlier_fraction") {
      if (!(ls >> scene.outlier_fraction)) throw fail("expected a float");
    } else if (keyword == "misalignment_offset") {
      if (!(ls >> scene.misalignment_offset_px)) throw fail("expected an int");
    } else if (keyword == "patch") {
      PlanarPatch patch;
      Eigen::Vector4d beta;
      int r = 0, g = 0, b = 0, nverts = 0;
      if (!(ls >> beta[0] >> beta[1] >> beta[2] >> beta[3] >> r >> g >> b >>
            nverts)) {
        throw fail("expected: patch pi0 pi1 pi2 pi3 r g b nverts u v ...");
      }
      patch.plane = Plane::from_beta(beta, PlaneSource::kTls);
      patch.color = {static_cast<std::uint8_t>(r),
                     static_cast<std::uint8_t>(g),
                     static_cast<std::uint8_t>(b)};
      patch.polygon.resize(nverts);
      for (int i = 0; i < nverts; ++i) {
        if (!(ls >> patch.polygon[i].x() >> patch.polygon[i].y())) {
          throw fail("expected " + std::to_string(nverts) + " vertices");
        }
      }
      normalize_polygon(patch.polygon, where);
      scene.patches.push_back(std::move(patch));
    } else {
      throw fail("unknown directive '" + keyword + "'");
    }
  }
  if (!have_size) throw ParseError(origin + ": missing 'size'");
  if (!have_projection) throw ParseError(origin + ": missing 'projection'");
  if (scene.patches.empty()) throw ParseError(origin + ": no patches");
  if (scene.name.empty()) scene.name = origin;
  return scene;
}

SyntheticScene load_scene(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw NotFound("scene file not found: " + path.string());
  std::stringstream buf;
  buf << in.rdbuf();
  SyntheticScene scene = parse_scene(buf.str(), path.string());
  if (scene.name == path.string()) scene.name = path.stem().string();
  return scene;
}

FrameBundle render(const SyntheticScene& scene) {
  FrameBundle frame;
  frame.frame_id = scene.name;
  frame.cam = scene.cam;
  frame.rgb.width = scene.width;
  frame.rgb.height = scene.height;
  frame.rgb.data.assign(3 * static_cast<std::size_t>(scene.width) *
                            scene.height,
                        0);
  DepthMap gt(scene.width, scene.height);
  frame.sparse = DepthMap(scene.width, scene.height);

  for (int v = 0; v < scene.height; ++v) {
    for (int u = 0; u < scene.width; ++u) {
      const PlanarPatch* patch = nullptr;
      for (const PlanarPatch& p : scene.patches) {
        if (polygon_contains(p.polygon, u, v)) {
          patch = &p;
          break;
        }
      }
      if (!patch) {
        throw ParseError("scene '" + scene.name + "': pixel (" +
                         std::to_string(u) + ", " + std::to_string(v) +
                         ") is not covered by any patch");
      }
      const Eigen::Vector3d n = patch->plane.normal();
      const Eigen::Vector3d l = scene.cam.ray(u, v);
      const double denom = n.dot(l);
      const double num = -(patch->plane.pi3 + n.dot(scene.cam.center()));
      const double s = num / denom;
      if (!(std::abs(denom) > 1e-12) || !(s > 0.0) || !std::isfinite(s)) {
        throw PatchBehindCamera("scene '" + scene.name +
                                "': patch has non-positive depth at (" +
                                std::to_string(u) + ", " + std::to_string(v) +
                                ")");
      }
      gt.set(u, v, s * kMmPerMeter);
      const std::size_t ci = frame.rgb.index(u, v);
      frame.rgb.data[ci] = patch->color[0];
      frame.rgb.data[ci + 1] = patch->color[1];
      frame.rgb.data[ci + 2] = patch->color[2];
    }
  }

  CounterRng noise_rng(0x5eedULL, scene.name, 1);
  CounterRng outlier_rng(0x5eedULL, scene.name, 2);
  for (int v = scene.scan.row_start; v < scene.height;
       v += scene.scan.row_step) {
    for (int u = scene.scan.col_start; u < scene.width;
         u += scene.scan.col_step) {
      double d = gt.at(u, v);
      if (scene.noise_sigma_mm > 0.0) {
        d = std::max(1.0, d + scene.noise_sigma_mm * noise_rng.normal());
      }
      if (scene.outlier_fraction > 0.0 &&
          outlier_rng.uniform01() < scene.outlier_fraction) {
        d *= 2.0;  // background-like false return
      }
      frame.sparse.set(u, v, d);
    }
  }
  frame.ground_truth = std::move(gt);

  if (scene.misalignment_offset_px != 0) {
    frame = inject_misalignment(frame, scene.misalignment_offset_px).frame;
  }
  return frame;
}

InjectionResult inject_misalignment(const FrameBundle& frame, int offset_px) {
  InjectionResult result;
  result.frame = frame;
  if (offset_px == 0 || !frame.ground_truth) return result;
  const DepthMap& gt = *frame.ground_truth;
  DepthMap& sparse = result.frame.sparse;
  for (int v = 0; v < gt.height(); ++v) {
    for (int u = 0; u < gt.width(); ++u) {
      const double d = frame.sparse.at(u, v);
      if (d <= 0.0) continue;
      const int qu = u + offset_px;
      if (qu < 0 || qu >= gt.width()) continue;  // clipped at the border
      // Only a genuine depth discontinuity produces the artifact.
      if (!(gt.at(u, v) >= 1.5 * gt.at(qu, v)) || gt.at(qu, v) <= 0.0) {
        continue;
      }
      sparse.clear(u, v);
      sparse.set(qu, v, d);
      result.injected.push_back({qu, v});
    }
  }
  return result;
}

}  // namespace densify
