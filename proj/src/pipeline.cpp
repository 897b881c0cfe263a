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

#include "densify/pipeline.hpp"

#include <chrono>
#include <vector>

#include "densify/artifact_filter.hpp"
#include "densify/color.hpp"
#include "densify/convex_hull.hpp"
#include "densify/errors.hpp"
#include "densify/fusion.hpp"
#include "densify/interpolate.hpp"
#include "densify/parallel.hpp"
#include "densify/plane_fit.hpp"
#include "densify/ransac.hpp"
#include "densify/superpixel.hpp"

namespace densify {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

// Outcome of the per-superpixel plane decision.
struct SuperpixelPlan {
  bool interpolate = false;
  Plane plane;
  // Hull restriction for the RANSAC path; empty means "whole superpixel".
  std::vector<PixelCoord> allowed_unknown;
  bool restricted = false;
};

SuperpixelPlan plan_superpixel(const Superpixel& sp, const CameraModel& cam,
                               const PipelineConfig& cfg,
                               const std::string& frame_id) {
  SuperpixelPlan plan;
  if (!sp.admissible) return plan;

  // Total least squares first.
  bool tls_ok = false;
  Plane tls;
  try {
    const std::vector<Point3> points = backproject_known(cam, sp.known);
    tls = fit_tls(points);
    tls_ok = true;
  } catch (const DegenerateGeometry&) {
  }
  if (tls_ok) {
    const LossStats stats = interpolation_loss_stats(tls, cam, sp.known);
    if (validity(stats.mean_mm2, stats.min_zint_mm, cfg)) {
      tls.valid = true;
      if (cfg.refine_loss) tls = refine(tls, cam, sp.known);
      plan.interpolate = true;
      plan.plane = tls;
      return plan;
    }
  }

  // Fallback: RANSAC restricted to the convex hull of its inliers.
  if (!cfg.use_convex_hull) return plan;
  const auto score = ransac_plane(sp, cam, cfg, frame_id);
  if (!score || !ransac_validity(*score, sp.known.size(), cfg)) return plan;

  std::vector<PixelCoord> inlier_pixels;
  inlier_pixels.reserve(score->inliers.size());
  for (int idx : score->inliers) {
    inlier_pixels.push_back(sp.known[idx].pixel);
  }
  try {
    const ConvexHullRegion hull = convex_hull(inlier_pixels);
    plan.allowed_unknown = rasterize_hull(hull, sp);
  } catch (const DegenerateHull&) {
    return plan;  // collinear inliers: nothing to interpolate
  }
  plan.interpolate = true;
  plan.restricted = true;
  plan.plane = score->plane;
  plan.plane.valid = true;
  return plan;
}

}  // namespace

DepthMap compose_pipeline(const FrameBundle& frame, const PipelineConfig& cfg,
                          StageTimings* timings, int threads) {
  cfg.validate();
  StageTimings local;
  StageTimings& t = timings ? *timings : local;

  auto t0 = Clock::now();
  const DepthMap filtered = suppress_misalignment(
      frame.sparse, cfg.tau_n, {cfg.filter_radius_u, cfg.filter_radius_v});
  t.filter_s += seconds_since(t0);

  t0 = Clock::now();
  const LabImage guide = make_guide(frame.rgb, cfg.colorspace);
  t.segment_s += seconds_since(t0);

  std::vector<DepthMap> tentative;
  tentative.reserve(cfg.slic_superpixel_counts.size());

  for (int k : cfg.slic_superpixel_counts) {
    t0 = Clock::now();
    SuperpixelMap seg = slic(guide, k, cfg.slic_iterations,
                             cfg.slic_compactness);
    bind_depths(seg, filtered, cfg);
    t.segment_s += seconds_since(t0);

    t0 = Clock::now();
    std::vector<SuperpixelPlan> plans(seg.superpixels.size());
    parallel_for(seg.superpixels.size(), threads, [&](std::size_t i) {
      plans[i] =
          plan_superpixel(seg.superpixels[i], frame.cam, cfg, frame.frame_id);
    });
    t.fit_s += seconds_since(t0);

    t0 = Clock::now();
    // Measurements pass through; interpolation writes only unknown pixels,
    // and superpixels are disjoint, so parallel writes never collide.
    DepthMap map = filtered;
    parallel_for(seg.superpixels.size(), threads, [&](std::size_t i) {
      const SuperpixelPlan& plan = plans[i];
      if (!plan.interpolate) return;
      const Superpixel& sp = seg.superpixels[i];
      const InterpolationResult result = interpolate_superpixel(
          sp, plan.plane, frame.cam, cfg,
          plan.restricted ? &plan.allowed_unknown : nullptr);
      for (std::size_t j = 0; j < sp.pixels.size(); ++j) {
        const double d = result.depths_mm[j];
        if (d > 0.0 && !filtered.has(sp.pixels[j])) {
          map.set(sp.pixels[j], d);
        }
      }
    });
    t.interpolate_s += seconds_since(t0);
    tentative.push_back(std::move(map));
  }

  t0 = Clock::now();
  DepthMap fused = median_fuse(tentative);
  // Filtered measurements win over any interpolated value.
  for (std::size_t i = 0; i < fused.size(); ++i) {
    if (filtered.values()[i] > 0.0) fused.values()[i] = filtered.values()[i];
  }
  t.fuse_s += seconds_since(t0);

  t0 = Clock::now();
  DepthMap out = std::move(fused);
  switch (cfg.fill_method) {
    case FillMethod::kNnJbf:
      out = fill_nn_jbf(out, guide, cfg);
      break;
    case FillMethod::kMorphological:
      out = fill_morphological(out);
      break;
    case FillMethod::kNone:
      break;
  }
  t.fill_s += seconds_since(t0);
  return out;
}

}  // namespace densify
