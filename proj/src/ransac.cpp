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

#include "densify/ransac.hpp"

#include <cmath>

#include "densify/errors.hpp"
#include "densify/interpolate.hpp"
#include "densify/plane_fit.hpp"
#include "densify/prng.hpp"

namespace densify {

namespace {

constexpr double kMm2PerM2 = kMmPerMeter * kMmPerMeter;

// C(n, 3) without overflow for any realistic superpixel.
std::uint64_t triple_count(std::size_t n) {
  if (n < 3) return 0;
  const std::uint64_t m = n;
  return m * (m - 1) / 2 * (m - 2) / 3;
}

struct Scored {
  std::size_t inlier_count = 0;
  double rho = 0.0;
  std::vector<int> inliers;
  std::vector<double> losses_mm2;
};

// Per-point interpolation losses against one hypothesis.
Scored score_hypothesis(const Plane& plane, const CameraModel& cam,
                        const Superpixel& sp, double tau_inlier_mm2) {
  Scored s;
  const Eigen::Vector3d n = plane.normal();
  const Point3 l0 = cam.center();
  const double num = -(plane.pi3 + n.dot(l0));
  for (std::size_t i = 0; i < sp.known.size(); ++i) {
    const KnownDepth& k = sp.known[i];
    const Eigen::Vector3d l = cam.ray(k.pixel);
    const double denom = n.dot(l);
    if (std::abs(denom) <= 1e-12 * l.norm()) continue;  // parallel: outlier
    const double resid_m = k.depth_mm / kMmPerMeter - num / denom;
    const double loss_mm2 = 0.5 * resid_m * resid_m * kMm2PerM2;
    if (loss_mm2 <= tau_inlier_mm2) {
      s.inliers.push_back(static_cast<int>(i));
      s.losses_mm2.push_back(loss_mm2);
    }
  }
  s.inlier_count = s.inliers.size();
  double acc = 0.0;
  for (double e : s.losses_mm2) acc += e * e;
  s.rho = s.losses_mm2.empty() ? 0.0 : acc / s.losses_mm2.size();
  return s;
}

}  // namespace

std::optional<HypothesisScore> ransac_plane(const Superpixel& sp,
                                            const CameraModel& cam,
                                            const PipelineConfig& cfg,
                                            std::string_view frame_id) {
  const std::size_t n = sp.known.size();
  if (n < 3) return std::nullopt;

  std::vector<Point3> points = backproject_known(cam, sp.known);

  std::optional<HypothesisScore> best;
  std::size_t index = 0;
  auto consider = [&](int i, int j, int k) {
    const std::size_t hypothesis = index++;
    Plane plane;
    try {
      plane = fit_three_points(points[i], points[j], points[k]);
    } catch (const SingularSample&) {
      return;
    }
    Scored s = score_hypothesis(plane, cam, sp, cfg.tau_ransac_inlier_mm2);
    if (s.inlier_count == 0) return;
    const bool better =
        !best || s.inlier_count > best->inliers.size() ||
        (s.inlier_count == best->inliers.size() && s.rho < best->rho);
    if (better) {
      best = HypothesisScore{plane, std::move(s.inliers),
                             std::move(s.losses_mm2), s.rho, hypothesis};
    }
  };

  const std::uint64_t total = triple_count(n);
  if (total <= static_cast<std::uint64_t>(cfg.ransac_iterations)) {
    for (std::size_t i = 0; i + 2 < n; ++i) {
      for (std::size_t j = i + 1; j + 1 < n; ++j) {
        for (std::size_t k = j + 1; k < n; ++k) {
          consider(static_cast<int>(i), static_cast<int>(j),
                   static_cast<int>(k));
        }
      }
    }
  } else {
    CounterRng rng(cfg.rng_seed, frame_id, static_cast<std::uint64_t>(sp.id));
    for (int iter = 0; iter < cfg.ransac_iterations; ++iter) {
      const int i = static_cast<int>(rng.uniform_below(
          static_cast<std::uint32_t>(n)));
      int j = i, k = i;
      while (j == i) {
        j = static_cast<int>(rng.uniform_below(static_cast<std::uint32_t>(n)));
      }
      while (k == i || k == j) {
        k = static_cast<int>(rng.uniform_below(static_cast<std::uint32_t>(n)));
      }
      consider(i, j, k);
    }
  }
  return best;
}

bool ransac_validity(const HypothesisScore& score, std::size_t k_size,
                     const PipelineConfig& cfg) {
  if (k_size == 0) return false;
  const std::size_t p = score.inliers.size();
  return p >= static_cast<std::size_t>(cfg.tau_abs) ||
         static_cast<double>(p) / static_cast<double>(k_size) >= cfg.tau_rel;
}

}  // namespace densify
