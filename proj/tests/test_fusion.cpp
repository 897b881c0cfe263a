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

#include <doctest.h>

#include <cmath>

#include "densify/errors.hpp"
#include "densify/fusion.hpp"
#include "densify/prng.hpp"

using namespace densify;

namespace {

LabImage flat_guide(int w, int h, float l = 50.0f) {
  LabImage img;
  img.width = w;
  img.height = h;
  const std::size_t n = static_cast<std::size_t>(w) * h;
  img.l.assign(n, l);
  img.a.assign(n, 0.0f);
  img.b.assign(n, 0.0f);
  return img;
}

}  // namespace

TEST_CASE("median of one map is the identity") {
  DepthMap m(3, 3);
  m.set(1, 1, 4200.0);
  const DepthMap fused = median_fuse(std::vector<DepthMap>{m});
  for (std::size_t i = 0; i < m.size(); ++i) {
    CHECK(fused.values()[i] == m.values()[i]);
  }
}

TEST_CASE("median picks the middle value and skips missing entries") {
  DepthMap a(2, 1), b(2, 1), c(2, 1);
  a.set(0, 0, 4000.0);
  b.set(0, 0, 5000.0);
  c.set(0, 0, 9000.0);
  // second pixel: only b has a value
  b.set(1, 0, 5000.0);
  const DepthMap fused = median_fuse(std::vector<DepthMap>{a, b, c});
  CHECK(fused.at(0, 0) == 5000.0);
  CHECK(fused.at(1, 0) == 5000.0);
}

TEST_CASE("even-count median takes the lower middle element") {
  DepthMap a(1, 1), b(1, 1);
  a.set(0, 0, 4000.0);
  b.set(0, 0, 8000.0);
  const DepthMap fused = median_fuse(std::vector<DepthMap>{a, b});
  CHECK(fused.at(0, 0) == 4000.0);
}

TEST_CASE("median stays within the contributing values and sizes must match") {
  CounterRng rng(3, "median_bounds", 0);
  std::vector<DepthMap> maps(5, DepthMap(6, 4));
  for (auto& m : maps) {
    for (auto& v : m.values()) {
      if (rng.uniform01() < 0.6) v = rng.uniform(1000.0, 50000.0);
    }
  }
  const DepthMap fused = median_fuse(maps);
  for (std::size_t i = 0; i < fused.size(); ++i) {
    double lo = 1e300, hi = -1.0;
    int count = 0;
    for (const auto& m : maps) {
      const double v = m.values()[i];
      if (v > 0) {
        lo = std::min(lo, v);
        hi = std::max(hi, v);
        ++count;
      }
    }
    if (count == 0) {
      CHECK(fused.values()[i] == 0.0);
    } else {
      CHECK(fused.values()[i] >= lo);
      CHECK(fused.values()[i] <= hi);
    }
  }
  std::vector<DepthMap> bad = {DepthMap(2, 2), DepthMap(3, 2)};
  CHECK_THROWS_AS(median_fuse(bad), DimensionMismatch);
}

TEST_CASE("nn-jbf on a uniform-depth map fills with that depth") {
  PipelineConfig cfg;
  DepthMap partial(12, 9);
  for (int v = 0; v < 9; v += 3) {
    for (int u = 0; u < 12; u += 3) partial.set(u, v, 7500.0);
  }
  const DepthMap out = fill_nn_jbf(partial, flat_guide(12, 9), cfg);
  CHECK(out.measurement_count() == out.size());
  for (double v : out.values()) CHECK(v == doctest::Approx(7500.0));
}

TEST_CASE("nn-jbf: symmetric supports average to the midpoint") {
  PipelineConfig cfg;
  cfg.jbf_supports = 2;
  DepthMap partial(7, 1);
  partial.set(0, 0, 4000.0);
  partial.set(6, 0, 6000.0);
  const DepthMap out = fill_nn_jbf(partial, flat_guide(7, 1), cfg);
  CHECK(out.at(3, 0) == doctest::Approx(5000.0).epsilon(1e-12));
  CHECK(out.at(0, 0) == 4000.0);  // measurements unchanged
  CHECK(out.at(6, 0) == 6000.0);
}

TEST_CASE("nn-jbf matches an exhaustive all-pairs oracle on an 8x8 toy") {
  PipelineConfig cfg;
  cfg.jbf_supports = 4;
  cfg.jbf_sigma_spatial_px = 2.5;
  cfg.jbf_sigma_color = 8.0;

  // Guide with two color regions; depths correlated with color.
  LabImage guide = flat_guide(8, 8, 30.0f);
  for (int v = 0; v < 8; ++v) {
    for (int u = 4; u < 8; ++u) guide.l[guide.index(u, v)] = 70.0f;
  }
  DepthMap partial(8, 8);
  CounterRng rng(9, "jbf_oracle", 0);
  for (int v = 0; v < 8; v += 2) {
    for (int u = 0; u < 8; u += 2) {
      partial.set(u, v, u < 4 ? rng.uniform(4000, 5000) : rng.uniform(9000, 11000));
    }
  }

  const DepthMap out = fill_nn_jbf(partial, guide, cfg);

  for (int v = 0; v < 8; ++v) {
    for (int u = 0; u < 8; ++u) {
      if (partial.has(u, v)) {
        CHECK(out.at(u, v) == partial.at(u, v));
        continue;
      }
      // Oracle: scan all measurements, keep the 4 nearest (ties by linear
      // index), then the weighted mean.
      struct Cand {
        double d2;
        std::size_t idx;
      };
      std::vector<Cand> cands;
      for (int sv = 0; sv < 8; ++sv) {
        for (int su = 0; su < 8; ++su) {
          if (!partial.has(su, sv)) continue;
          const double d2 = (su - u) * (su - u) + (sv - v) * (sv - v);
          cands.push_back({d2, static_cast<std::size_t>(sv) * 8 + su});
        }
      }
      std::sort(cands.begin(), cands.end(), [](const Cand& a, const Cand& b) {
        return a.d2 < b.d2 || (a.d2 == b.d2 && a.idx < b.idx);
      });
      cands.resize(4);
      double sw = 0.0, swz = 0.0;
      for (const Cand& c : cands) {
        const double dl =
            guide.l[c.idx] - guide.l[guide.index(u, v)];
        const double w = std::exp(-c.d2 / (2 * 2.5 * 2.5)) *
                         std::exp(-dl * dl / (2 * 8.0 * 8.0));
        sw += w;
        swz += w * partial.values()[c.idx];
      }
      CHECK(out.at(u, v) == doctest::Approx(swz / sw).epsilon(1e-12));
    }
  }
}

TEST_CASE("fills are dense whenever one measurement exists, else they throw") {
  PipelineConfig cfg;
  DepthMap one(20, 15);
  one.set(13, 7, 3333.0);
  const DepthMap jbf = fill_nn_jbf(one, flat_guide(20, 15), cfg);
  CHECK(jbf.measurement_count() == jbf.size());
  for (double v : jbf.values()) CHECK(v == doctest::Approx(3333.0));

  const DepthMap morph = fill_morphological(one);
  CHECK(morph.measurement_count() == morph.size());
  for (double v : morph.values()) CHECK(v == 3333.0);

  const DepthMap empty_map(4, 4);
  CHECK_THROWS_AS(fill_nn_jbf(empty_map, flat_guide(4, 4), cfg), EmptyInput);
  CHECK_THROWS_AS(fill_morphological(empty_map), EmptyInput);
}

TEST_CASE("morphological fill splits space like an L1 voronoi diagram") {
  DepthMap partial(21, 9);
  partial.set(3, 4, 9000.0);
  partial.set(17, 4, 4000.0);
  const DepthMap out = fill_morphological(partial);
  for (int v = 0; v < 9; ++v) {
    for (int u = 0; u < 21; ++u) {
      const int d_left = std::abs(u - 3) + std::abs(v - 4);
      const int d_right = std::abs(u - 17) + std::abs(v - 4);
      double expect;
      if (d_left < d_right) {
        expect = 9000.0;
      } else if (d_right < d_left) {
        expect = 4000.0;
      } else {
        expect = 4000.0;  // tie: min depth
      }
      CHECK(out.at(u, v) == expect);
    }
  }
}

TEST_CASE("dense input passes through the morphological fill unchanged") {
  DepthMap dense(5, 5);
  CounterRng rng(15, "dense", 0);
  for (auto& v : dense.values()) v = rng.uniform(1000.0, 9000.0);
  const DepthMap out = fill_morphological(dense);
  for (std::size_t i = 0; i < dense.size(); ++i) {
    CHECK(out.values()[i] == dense.values()[i]);
  }
}
