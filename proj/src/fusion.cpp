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

#include "densify/fusion.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "densify/errors.hpp"

namespace densify {

DepthMap median_fuse(std::span<const DepthMap> maps) {
  if (maps.empty()) throw DimensionMismatch("median_fuse: no maps");
  for (const DepthMap& m : maps) {
    if (!m.same_size(maps.front())) {
      throw DimensionMismatch("median_fuse: map dimensions differ");
    }
  }
  DepthMap out(maps.front().width(), maps.front().height());
  std::vector<double> vals;
  vals.reserve(maps.size());
  for (std::size_t i = 0; i < out.size(); ++i) {
    vals.clear();
    for (const DepthMap& m : maps) {
      const double d = m.values()[i];
      if (d > 0.0) vals.push_back(d);
    }
    if (vals.empty()) continue;
    std::sort(vals.begin(), vals.end());
    out.values()[i] = vals[(vals.size() - 1) / 2];
  }
  return out;
}

namespace {

struct Support {
  double dist2;
  std::uint32_t index;  // linear pixel index; also the tie break
};

// Uniform-grid spatial index over measured pixels.
class MeasurementGrid {
 public:
  MeasurementGrid(const DepthMap& map, int cell)
      : cell_(cell),
        cols_((map.width() + cell - 1) / cell),
        rows_((map.height() + cell - 1) / cell),
        starts_(static_cast<std::size_t>(cols_) * rows_ + 1, 0) {
    const int w = map.width();
    std::vector<std::uint32_t> counts(starts_.size() - 1, 0);
    for (std::size_t i = 0; i < map.size(); ++i) {
      if (map.values()[i] <= 0.0) continue;
      ++counts[cell_of(static_cast<int>(i % w), static_cast<int>(i / w))];
    }
    for (std::size_t c = 0; c < counts.size(); ++c) {
      starts_[c + 1] = starts_[c] + counts[c];
    }
    entries_.resize(starts_.back());
    std::vector<std::uint32_t> cursor(starts_.begin(), starts_.end() - 1);
    for (std::size_t i = 0; i < map.size(); ++i) {
      if (map.values()[i] <= 0.0) continue;
      const std::size_t c =
          cell_of(static_cast<int>(i % w), static_cast<int>(i / w));
      entries_[cursor[c]++] = static_cast<std::uint32_t>(i);
    }
  }

  int cols() const { return cols_; }
  int rows() const { return rows_; }
  int cell_size() const { return cell_; }

  std::span<const std::uint32_t> cell(int cu, int cv) const {
    const std::size_t c = static_cast<std::size_t>(cv) * cols_ + cu;
    return {entries_.data() + starts_[c], starts_[c + 1] - starts_[c]};
  }

 private:
  std::size_t cell_of(int u, int v) const {
    return static_cast<std::size_t>(v / cell_) * cols_ + u / cell_;
  }

  int cell_;
  int cols_;
  int rows_;
  std::vector<std::uint32_t> starts_;
  std::vector<std::uint32_t> entries_;
};

// K nearest measured pixels by spatial distance, ties broken by linear
// index so the result is schedule independent.
void nearest_supports(const MeasurementGrid& grid, int width, int u, int v,
                      int k, std::vector<Support>& out) {
  out.clear();
  const int cell = grid.cell_size();
  const int cu = u / cell;
  const int cv = v / cell;
  auto worst = [&] {
    return out.size() < static_cast<std::size_t>(k)
               ? std::numeric_limits<double>::infinity()
               : out.back().dist2;
  };
  auto less = [](const Support& a, const Support& b) {
    return a.dist2 < b.dist2 || (a.dist2 == b.dist2 && a.index < b.index);
  };
  auto push = [&](Support s) {
    if (out.size() == static_cast<std::size_t>(k) && !less(s, out.back())) {
      return;  // not better than the current worst under (dist, index)
    }
    out.insert(std::lower_bound(out.begin(), out.end(), s, less), s);
    if (out.size() > static_cast<std::size_t>(k)) out.pop_back();
  };
  for (int ring = 0;; ++ring) {
    // Cells at Chebyshev distance `ring`; anything in them is at least
    // (ring - 1) * cell away in pixels.
    if (ring > 0) {
      const double min_dist = static_cast<double>(ring - 1) * cell;
      if (out.size() == static_cast<std::size_t>(k) &&
          min_dist * min_dist > worst()) {
        break;
      }
    }
    bool any_cell = false;
    for (int dv = -ring; dv <= ring; ++dv) {
      for (int du = -ring; du <= ring; ++du) {
        if (std::max(std::abs(du), std::abs(dv)) != ring) continue;
        const int gu = cu + du;
        const int gv = cv + dv;
        if (gu < 0 || gu >= grid.cols() || gv < 0 || gv >= grid.rows()) {
          continue;
        }
        any_cell = true;
        for (std::uint32_t idx : grid.cell(gu, gv)) {
          const int su = static_cast<int>(idx % width);
          const int sv = static_cast<int>(idx / width);
          const double dx = su - u;
          const double dy = sv - v;
          push({dx * dx + dy * dy, idx});
        }
      }
    }
    if (!any_cell && ring > grid.cols() + grid.rows()) break;
  }
}

}  // namespace

DepthMap fill_nn_jbf(const DepthMap& partial, const LabImage& guide,
                     const PipelineConfig& cfg) {
  if (partial.width() != guide.width || partial.height() != guide.height) {
    throw DimensionMismatch("fill_nn_jbf: guide size differs");
  }
  if (partial.measurement_count() == 0) {
    throw EmptyInput("fill_nn_jbf: no measurements to fill from");
  }
  const int w = partial.width();
  const int h = partial.height();
  const int cell = std::max(1, static_cast<int>(cfg.jbf_sigma_spatial_px));
  const MeasurementGrid grid(partial, cell);

  const double inv_2s2 =
      1.0 / (2.0 * cfg.jbf_sigma_spatial_px * cfg.jbf_sigma_spatial_px);
  const double inv_2c2 =
      1.0 / (2.0 * cfg.jbf_sigma_color * cfg.jbf_sigma_color);

  DepthMap out = partial;
  std::vector<Support> supports;
  for (int v = 0; v < h; ++v) {
    for (int u = 0; u < w; ++u) {
      if (partial.has(u, v)) continue;
      nearest_supports(grid, w, u, v, cfg.jbf_supports, supports);
      const std::size_t gi = guide.index(u, v);
      double sum_w = 0.0;
      double sum_wz = 0.0;
      for (const Support& s : supports) {
        const int su = static_cast<int>(s.index % w);
        const int sv = static_cast<int>(s.index / w);
        const std::size_t si = guide.index(su, sv);
        const double dl = guide.l[si] - guide.l[gi];
        const double da = guide.a[si] - guide.a[gi];
        const double db = guide.b[si] - guide.b[gi];
        const double color2 = dl * dl + da * da + db * db;
        const double weight =
            std::exp(-s.dist2 * inv_2s2) * std::exp(-color2 * inv_2c2);
        sum_w += weight;
        sum_wz += weight * partial.values()[s.index];
      }
      if (sum_w > 0.0) {
        out.set(u, v, sum_wz / sum_w);
      } else if (!supports.empty()) {
        // All weights underflowed; keep the nearest support's depth.
        out.set(u, v, partial.values()[supports.front().index]);
      }
    }
  }
  return out;
}

DepthMap fill_morphological(const DepthMap& partial) {
  if (partial.measurement_count() == 0) {
    throw EmptyInput("fill_morphological: no measurements to fill from");
  }
  const int w = partial.width();
  const int h = partial.height();
  DepthMap out = partial;

  // wave[q]: dilation step at which q was reached (0 for measurements).
  std::vector<std::int32_t> wave(partial.size(), -1);
  std::vector<std::uint32_t> frontier;
  frontier.reserve(partial.size());
  for (std::size_t i = 0; i < out.size(); ++i) {
    if (out.values()[i] > 0.0) {
      wave[i] = 0;
      frontier.push_back(static_cast<std::uint32_t>(i));
    }
  }

  const int du[4] = {0, -1, 1, 0};
  const int dv[4] = {-1, 0, 0, 1};
  std::vector<std::uint32_t> next;
  for (std::int32_t step = 1; !frontier.empty(); ++step) {
    next.clear();
    for (std::uint32_t p : frontier) {
      const int u = static_cast<int>(p % w);
      const int v = static_cast<int>(p / w);
      const double d = out.values()[p];
      for (int k = 0; k < 4; ++k) {
        const int uu = u + du[k];
        const int vv = v + dv[k];
        if (uu < 0 || uu >= w || vv < 0 || vv >= h) continue;
        const std::size_t q = static_cast<std::size_t>(vv) * w + uu;
        if (wave[q] >= 0 && wave[q] < step) continue;  // settled earlier
        double& target = out.values()[q];
        if (wave[q] < 0) {
          wave[q] = step;
          target = d;
          next.push_back(static_cast<std::uint32_t>(q));
        } else if (d < target) {
          target = d;  // same wave: min depth wins
        }
      }
    }
    frontier.swap(next);
  }
  return out;
}

}  // namespace densify
