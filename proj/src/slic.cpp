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

#include <algorithm>
#include <cmath>
#include <limits>

#include "densify/errors.hpp"
#include "densify/superpixel.hpp"

namespace densify {

namespace {

struct Center {
  double l = 0, a = 0, b = 0;
  double u = 0, v = 0;
};

double color_dist(const LabImage& img, std::size_t i, const Center& c) {
  const double dl = img.l[i] - c.l;
  const double da = img.a[i] - c.a;
  const double db = img.b[i] - c.b;
  return std::sqrt(dl * dl + da * da + db * db);
}

// Squared Lab gradient magnitude with clamped sampling.
double gradient(const LabImage& img, int u, int v) {
  auto clamp_idx = [&](int uu, int vv) {
    uu = std::clamp(uu, 0, img.width - 1);
    vv = std::clamp(vv, 0, img.height - 1);
    return img.index(uu, vv);
  };
  const std::size_t xp = clamp_idx(u + 1, v), xm = clamp_idx(u - 1, v);
  const std::size_t yp = clamp_idx(u, v + 1), ym = clamp_idx(u, v - 1);
  auto sq = [](double x) { return x * x; };
  return sq(img.l[xp] - img.l[xm]) + sq(img.a[xp] - img.a[xm]) +
         sq(img.b[xp] - img.b[xm]) + sq(img.l[yp] - img.l[ym]) +
         sq(img.a[yp] - img.a[ym]) + sq(img.b[yp] - img.b[ym]);
}

std::vector<Center> init_centers(const LabImage& img, int k) {
  const int w = img.width;
  const int h = img.height;
  int ny = std::max<int>(
      1, static_cast<int>(std::lround(
             std::sqrt(static_cast<double>(k) * h / std::max(1, w)))));
  ny = std::min(ny, h);
  int nx = std::max<int>(
      1, static_cast<int>(std::lround(static_cast<double>(k) / ny)));
  nx = std::min(nx, w);

  std::vector<Center> centers;
  centers.reserve(static_cast<std::size_t>(nx) * ny);
  for (int j = 0; j < ny; ++j) {
    for (int i = 0; i < nx; ++i) {
      int cu = static_cast<int>((i + 0.5) * w / nx);
      int cv = static_cast<int>((j + 0.5) * h / ny);
      cu = std::clamp(cu, 0, w - 1);
      cv = std::clamp(cv, 0, h - 1);
      // Move the seed to the lowest-gradient spot in its 3x3 window so it
      // does not start on an edge.
      int best_u = cu, best_v = cv;
      double best_g = std::numeric_limits<double>::infinity();
      for (int dv = -1; dv <= 1; ++dv) {
        for (int du = -1; du <= 1; ++du) {
          const int uu = std::clamp(cu + du, 0, w - 1);
          const int vv = std::clamp(cv + dv, 0, h - 1);
          const double g = gradient(img, uu, vv);
          if (g < best_g) {
            best_g = g;
            best_u = uu;
            best_v = vv;
          }
        }
      }
      Center c;
      const std::size_t idx = img.index(best_u, best_v);
      c.l = img.l[idx];
      c.a = img.a[idx];
      c.b = img.b[idx];
      c.u = best_u;
      c.v = best_v;
      centers.push_back(c);
    }
  }
  return centers;
}

// Connected components (4-neighborhood) of the label image; orphan
// components hand their pixels to the largest adjacent superpixel.
void enforce_connectivity(SuperpixelMap& map) {
  const int w = map.width;
  const int h = map.height;
  const std::size_t n = map.labels.size();
  std::vector<std::int32_t> comp(n, -1);

  struct Component {
    std::int32_t label;
    std::vector<std::uint32_t> pixels;
  };
  std::vector<Component> comps;

  const int du[4] = {0, -1, 1, 0};
  const int dv[4] = {-1, 0, 0, 1};

  std::vector<std::uint32_t> stack;
  for (std::size_t start = 0; start < n; ++start) {
    if (comp[start] >= 0) continue;
    const std::int32_t label = map.labels[start];
    const std::int32_t cid = static_cast<std::int32_t>(comps.size());
    comps.push_back({label, {}});
    auto& pixels = comps.back().pixels;
    comp[start] = cid;
    stack.assign(1, static_cast<std::uint32_t>(start));
    while (!stack.empty()) {
      const std::uint32_t p = stack.back();
      stack.pop_back();
      pixels.push_back(p);
      const int u = static_cast<int>(p % w);
      const int v = static_cast<int>(p / w);
      for (int d = 0; d < 4; ++d) {
        const int uu = u + du[d];
        const int vv = v + dv[d];
        if (uu < 0 || uu >= w || vv < 0 || vv >= h) continue;
        const std::size_t q = static_cast<std::size_t>(vv) * w + uu;
        if (comp[q] < 0 && map.labels[q] == label) {
          comp[q] = cid;
          stack.push_back(static_cast<std::uint32_t>(q));
        }
      }
    }
    std::sort(pixels.begin(), pixels.end());
  }

  // Largest component of each label keeps it (ties: earliest first pixel,
  // i.e. discovery order).
  const std::int32_t num_labels =
      1 + *std::max_element(map.labels.begin(), map.labels.end());
  std::vector<std::int32_t> keeper(num_labels, -1);
  for (std::size_t c = 0; c < comps.size(); ++c) {
    const auto& comp_c = comps[c];
    if (keeper[comp_c.label] < 0 ||
        comps[keeper[comp_c.label]].pixels.size() < comp_c.pixels.size()) {
      keeper[comp_c.label] = static_cast<std::int32_t>(c);
    }
  }

  std::vector<std::size_t> label_count(num_labels, 0);
  for (std::int32_t l : map.labels) ++label_count[l];

  for (std::size_t c = 0; c < comps.size(); ++c) {
    auto& comp_c = comps[c];
    if (keeper[comp_c.label] == static_cast<std::int32_t>(c)) continue;
    // Adjacent labels under the live label map.
    std::int32_t best = -1;
    std::size_t best_count = 0;
    for (std::uint32_t p : comp_c.pixels) {
      const int u = static_cast<int>(p % w);
      const int v = static_cast<int>(p / w);
      for (int d = 0; d < 4; ++d) {
        const int uu = u + du[d];
        const int vv = v + dv[d];
        if (uu < 0 || uu >= w || vv < 0 || vv >= h) continue;
        const std::size_t q = static_cast<std::size_t>(vv) * w + uu;
        if (comp[q] == static_cast<std::int32_t>(c)) continue;
        const std::int32_t l = map.labels[q];
        if (l == comp_c.label) continue;
        if (label_count[l] > best_count ||
            (label_count[l] == best_count && (best < 0 || l < best))) {
          best = l;
          best_count = label_count[l];
        }
      }
    }
    if (best < 0) continue;  // isolated; nothing to absorb into
    for (std::uint32_t p : comp_c.pixels) map.labels[p] = best;
    label_count[comp_c.label] -= comp_c.pixels.size();
    label_count[best] += comp_c.pixels.size();
  }

  // Compact ids (some labels may have lost every pixel or never won one).
  std::vector<std::int32_t> remap(num_labels, -1);
  std::int32_t next = 0;
  for (std::int32_t l = 0; l < num_labels; ++l) {
    if (label_count[l] > 0) remap[l] = next++;
  }
  for (auto& l : map.labels) l = remap[l];

  map.superpixels.assign(static_cast<std::size_t>(next), {});
  for (std::int32_t id = 0; id < next; ++id) map.superpixels[id].id = id;
  for (int v = 0; v < h; ++v) {
    for (int u = 0; u < w; ++u) {
      map.superpixels[map.label_at(u, v)].pixels.push_back({u, v});
    }
  }
}

}  // namespace

SuperpixelMap slic(const LabImage& image, int k, int iterations,
                   double compactness) {
  const int w = image.width;
  const int h = image.height;
  if (w <= 0 || h <= 0) throw DimensionMismatch("slic: empty image");
  if (k < 1 || iterations < 1 || compactness <= 0.0) {
    throw InvalidConfig("slic: k and iterations must be >= 1, m > 0");
  }
  const std::size_t n = static_cast<std::size_t>(w) * h;
  if (static_cast<std::size_t>(k) > n) {
    throw ImageTooSmall("slic: requested " + std::to_string(k) +
                        " superpixels for " + std::to_string(n) + " pixels");
  }

  std::vector<Center> centers = init_centers(image, k);
  const double interval =
      std::sqrt(static_cast<double>(n) / centers.size());
  const double spatial_weight = compactness / interval;
  const int search = static_cast<int>(std::ceil(interval)) + 1;

  SuperpixelMap map;
  map.width = w;
  map.height = h;
  map.labels.assign(n, -1);

  std::vector<double> dist(n);

  for (int iter = 0; iter < iterations; ++iter) {
    std::fill(dist.begin(), dist.end(),
              std::numeric_limits<double>::infinity());
    std::fill(map.labels.begin(), map.labels.end(), -1);

    for (std::size_t ci = 0; ci < centers.size(); ++ci) {
      const Center& c = centers[ci];
      const int u0 = std::max(0, static_cast<int>(c.u) - search);
      const int u1 = std::min(w - 1, static_cast<int>(c.u) + search);
      const int v0 = std::max(0, static_cast<int>(c.v) - search);
      const int v1 = std::min(h - 1, static_cast<int>(c.v) + search);
      for (int v = v0; v <= v1; ++v) {
        for (int u = u0; u <= u1; ++u) {
          const std::size_t i = image.index(u, v);
          const double ds = std::sqrt((u - c.u) * (u - c.u) +
                                      (v - c.v) * (v - c.v));
          const double d = color_dist(image, i, c) + spatial_weight * ds;
          if (d < dist[i]) {
            dist[i] = d;
            map.labels[i] = static_cast<std::int32_t>(ci);
          }
        }
      }
    }

    // Pixels outside every search window (possible when centers drift):
    // assign against all centers.
    for (std::size_t i = 0; i < n; ++i) {
      if (map.labels[i] >= 0) continue;
      const int u = static_cast<int>(i % w);
      const int v = static_cast<int>(i / w);
      for (std::size_t ci = 0; ci < centers.size(); ++ci) {
        const Center& c = centers[ci];
        const double ds =
            std::sqrt((u - c.u) * (u - c.u) + (v - c.v) * (v - c.v));
        const double d = color_dist(image, i, c) + spatial_weight * ds;
        if (d < dist[i]) {
          dist[i] = d;
          map.labels[i] = static_cast<std::int32_t>(ci);
        }
      }
    }

    double energy = 0.0;
    for (double d : dist) energy += d;
    map.iteration_energy.push_back(energy);

    // Recenter on the assigned pixels.
    std::vector<double> sum_l(centers.size(), 0), sum_a(centers.size(), 0),
        sum_b(centers.size(), 0), sum_u(centers.size(), 0),
        sum_v(centers.size(), 0);
    std::vector<std::size_t> count(centers.size(), 0);
    for (std::size_t i = 0; i < n; ++i) {
      const std::int32_t l = map.labels[i];
      sum_l[l] += image.l[i];
      sum_a[l] += image.a[i];
      sum_b[l] += image.b[i];
      sum_u[l] += static_cast<double>(i % w);
      sum_v[l] += static_cast<double>(i / w);
      ++count[l];
    }
    for (std::size_t ci = 0; ci < centers.size(); ++ci) {
      if (count[ci] == 0) continue;
      const double inv = 1.0 / count[ci];
      centers[ci] = {sum_l[ci] * inv, sum_a[ci] * inv, sum_b[ci] * inv,
                     sum_u[ci] * inv, sum_v[ci] * inv};
    }
  }

  enforce_connectivity(map);
  return map;
}

void write_boundary_overlay_png(const ImageU8& rgb, const SuperpixelMap& map,
                                const std::filesystem::path& path) {
  if (rgb.width != map.width || rgb.height != map.height) {
    throw DimensionMismatch("overlay: image and label sizes differ");
  }
  ImageU8 out = rgb;
  for (int v = 0; v < map.height; ++v) {
    for (int u = 0; u < map.width; ++u) {
      const std::int32_t l = map.label_at(u, v);
      const bool boundary =
          (u + 1 < map.width && map.label_at(u + 1, v) != l) ||
          (v + 1 < map.height && map.label_at(u, v + 1) != l);
      if (!boundary) continue;
      const std::size_t i = out.index(u, v);
      out.data[i] = 255;
      out.data[i + 1] = 230;
      out.data[i + 2] = 40;
    }
  }
  write_png8_rgb(out, path);
}

void bind_depths(SuperpixelMap& map, const DepthMap& filtered,
                 const PipelineConfig& cfg) {
  if (filtered.width() != map.width || filtered.height() != map.height) {
    throw DimensionMismatch("bind_depths: depth map size differs");
  }
  for (auto& sp : map.superpixels) {
    sp.known.clear();
    sp.unknown.clear();
    int min_u = map.width, max_u = -1, min_v = map.height, max_v = -1;
    for (const PixelCoord& p : sp.pixels) {
      const double d = filtered.at(p);
      if (d > 0.0) {
        sp.known.push_back({p, d});
        min_u = std::min(min_u, p.u);
        max_u = std::max(max_u, p.u);
        min_v = std::min(min_v, p.v);
        max_v = std::max(max_v, p.v);
      } else {
        sp.unknown.push_back(p);
      }
    }
    sp.admissible =
        sp.known.size() >= static_cast<std::size_t>(cfg.tau_m_min_points) &&
        (max_v - min_v) >= 2 && (max_u - min_u) >= 2;
  }
}

}  // namespace densify
