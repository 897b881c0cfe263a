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

#include "densify/interpolate.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "densify/errors.hpp"

namespace densify {

namespace {

constexpr double kParallelTol = 1e-12;
constexpr double kParallelPenaltyMm2 = 1e12;
constexpr double kMm2PerM2 = kMmPerMeter * kMmPerMeter;
constexpr double kRadToDeg = 180.0 / 3.14159265358979323846;

}  // namespace

RayPlaneContext make_context(const Plane& plane, const CameraModel& cam) {
  RayPlaneContext ctx;
  ctx.plane = plane;
  ctx.p0 = plane.point_on_plane();
  ctx.l0 = cam.center();
  ctx.cam = &cam;
  return ctx;
}

std::optional<double> intersect_depth_m(const RayPlaneContext& ctx,
                                        PixelCoord x) {
  const Eigen::Vector3d n = ctx.plane.normal();
  const Eigen::Vector3d l = ctx.cam->ray(x);
  const double denom = n.dot(l);
  if (std::abs(denom) <= kParallelTol * n.norm() * l.norm()) {
    return std::nullopt;
  }
  const Eigen::Vector3d w = ctx.l0 - ctx.p0;
  return -n.dot(w) / denom;
}

Point3 intersect(const RayPlaneContext& ctx, PixelCoord x) {
  const auto s = intersect_depth_m(ctx, x);
  if (!s) throw RayParallelToPlane("ray is parallel to the plane");
  return ctx.l0 + *s * ctx.cam->ray(x);
}

double intersection_angle_deg(const Plane& plane, const Eigen::Vector3d& ray) {
  const Eigen::Vector3d n = plane.normal();
  const double denom = n.norm() * ray.norm();
  if (!(denom > 0.0)) return 0.0;
  const double sin_theta = std::clamp(std::abs(n.dot(ray)) / denom, 0.0, 1.0);
  return std::asin(sin_theta) * kRadToDeg;
}

double interpolation_loss_beta(const Eigen::Vector4d& beta,
                               const CameraModel& cam,
                               std::span<const KnownDepth> known,
                               Eigen::Vector4d* grad) {
  const Eigen::Vector3d n = beta.head<3>();
  const Point3 l0 = cam.center();
  const double n_norm = n.norm();
  const double num = -(beta[3] + n.dot(l0));  // shared numerator of s

  double loss_m2 = 0.0;
  Eigen::Vector4d g = Eigen::Vector4d::Zero();
  for (const KnownDepth& k : known) {
    const Eigen::Vector3d l = cam.ray(k.pixel);
    const double denom = n.dot(l);
    if (std::abs(denom) <= kParallelTol * n_norm * l.norm()) {
      loss_m2 += kParallelPenaltyMm2 / kMm2PerM2;
      continue;  // flat penalty region: no gradient contribution
    }
    const double s = num / denom;
    const double resid = k.depth_mm / kMmPerMeter - s;
    loss_m2 += 0.5 * resid * resid;
    if (grad) {
      const double inv_d2 = 1.0 / (denom * denom);
      // ds/dbeta_j = (-l0_j * denom - num * l_j) / denom^2, ds/dbeta_3 = -1/denom
      Eigen::Vector4d ds;
      ds[0] = (-l0.x() * denom - num * l.x()) * inv_d2;
      ds[1] = (-l0.y() * denom - num * l.y()) * inv_d2;
      ds[2] = (-l0.z() * denom - num * l.z()) * inv_d2;
      ds[3] = -1.0 / denom;
      g -= resid * ds;
    }
  }
  if (grad) *grad = g * kMm2PerM2;
  return loss_m2 * kMm2PerM2;
}

double interpolation_loss(const Plane& plane, const CameraModel& cam,
                          std::span<const KnownDepth> known) {
  return interpolation_loss_beta(plane.beta(), cam, known);
}

LossStats interpolation_loss_stats(const Plane& plane, const CameraModel& cam,
                                   std::span<const KnownDepth> known) {
  LossStats stats;
  stats.min_zint_mm = std::numeric_limits<double>::infinity();
  const Eigen::Vector3d n = plane.normal();
  const Point3 l0 = cam.center();
  const double n_norm = n.norm();
  const double num = -(plane.pi3 + n.dot(l0));
  for (const KnownDepth& k : known) {
    const Eigen::Vector3d l = cam.ray(k.pixel);
    const double denom = n.dot(l);
    if (std::abs(denom) <= kParallelTol * n_norm * l.norm()) {
      stats.total_mm2 += kParallelPenaltyMm2;
      ++stats.parallel_count;
      continue;
    }
    const double s = num / denom;
    const double resid_m = k.depth_mm / kMmPerMeter - s;
    stats.total_mm2 += 0.5 * resid_m * resid_m * kMm2PerM2;
    stats.min_zint_mm = std::min(stats.min_zint_mm, s * kMmPerMeter);
  }
  if (!known.empty()) {
    stats.mean_mm2 = stats.total_mm2 / static_cast<double>(known.size());
  }
  return stats;
}

bool validity(double mean_loss_mm2, double min_zint_mm,
              const PipelineConfig& cfg) {
  return mean_loss_mm2 <= cfg.tau_pi_mm2 ||
         (min_zint_mm >= cfg.tau_dist_mm &&
          mean_loss_mm2 <= cfg.tau_pi_far_mm2);
}

InterpolationResult interpolate_superpixel(
    const Superpixel& sp, const Plane& plane, const CameraModel& cam,
    const PipelineConfig& cfg, const std::vector<PixelCoord>* allowed_unknown) {
  InterpolationResult result;
  result.depths_mm.assign(sp.pixels.size(), 0.0);

  const LossStats stats = interpolation_loss_stats(plane, cam, sp.known);
  result.mean_loss_mm2 = stats.mean_mm2;
  result.valid = validity(stats.mean_mm2, stats.min_zint_mm, cfg);

  const RayPlaneContext ctx = make_context(plane, cam);

  // known/unknown are subsequences of pixels (bind_depths preserves the
  // row-major order), so one cursor each suffices.
  std::size_t ki = 0;
  std::size_t ui = 0;
  std::size_t ai = 0;
  for (std::size_t i = 0; i < sp.pixels.size(); ++i) {
    const PixelCoord p = sp.pixels[i];
    if (ki < sp.known.size() && sp.known[ki].pixel == p) {
      result.depths_mm[i] = sp.known[ki].depth_mm;
      ++ki;
      continue;
    }
    ++ui;
    if (allowed_unknown) {
      while (ai < allowed_unknown->size() &&
             ((*allowed_unknown)[ai].v < p.v ||
              ((*allowed_unknown)[ai].v == p.v &&
               (*allowed_unknown)[ai].u < p.u))) {
        ++ai;
      }
      if (ai >= allowed_unknown->size() || !((*allowed_unknown)[ai] == p)) {
        continue;
      }
    }
    const Eigen::Vector3d l = cam.ray(p);
    if (intersection_angle_deg(plane, l) <= cfg.tau_theta_deg) {
      ++result.theta_rejections;
      continue;
    }
    const auto s = intersect_depth_m(ctx, p);
    if (!s) continue;
    const double depth_mm = *s * kMmPerMeter;
    if (!(depth_mm > 0.0) || !std::isfinite(depth_mm)) continue;
    result.depths_mm[i] = depth_mm;
  }
  (void)ui;
  return result;
}

Plane refine(const Plane& initial, const CameraModel& cam,
             std::span<const KnownDepth> known) {
  // Work in m^2 so tolerances are scale-independent of the mm^2 interface.
  auto eval = [&](const Eigen::Vector4d& b, Eigen::Vector4d* g) {
    const double f = interpolation_loss_beta(b, cam, known, g) / kMm2PerM2;
    if (g) *g /= kMm2PerM2;
    return f;
  };

  Eigen::Vector4d x = initial.beta();
  Eigen::Vector4d g;
  double f = eval(x, &g);
  const double f_init = f;

  Eigen::Matrix4d h = Eigen::Matrix4d::Identity();
  Eigen::Vector4d best_x = x;
  double best_f = f;

  for (int iter = 0; iter < 50; ++iter) {
    if (g.norm() <= 1e-8) break;
    Eigen::Vector4d p = -(h * g);
    double slope = g.dot(p);
    if (!(slope < 0.0)) {
      h.setIdentity();
      p = -g;
      slope = g.dot(p);
      if (!(slope < 0.0)) break;
    }
    double t = 1.0;
    double f_new = f;
    Eigen::Vector4d x_new = x;
    bool accepted = false;
    for (int ls = 0; ls < 40; ++ls) {
      x_new = x + t * p;
      f_new = eval(x_new, nullptr);
      if (std::isfinite(f_new) && f_new <= f + 1e-4 * t * slope) {
        accepted = true;
        break;
      }
      t *= 0.5;
    }
    if (!accepted) break;

    Eigen::Vector4d g_new;
    eval(x_new, &g_new);
    const Eigen::Vector4d s = x_new - x;
    const Eigen::Vector4d y = g_new - g;
    const double sy = s.dot(y);
    if (sy > 1e-16) {
      const Eigen::Matrix4d id = Eigen::Matrix4d::Identity();
      const double rho = 1.0 / sy;
      h = (id - rho * s * y.transpose()) * h *
              (id - rho * y * s.transpose()) +
          rho * s * s.transpose();
    } else {
      h.setIdentity();
    }
    x = x_new;
    f = f_new;
    g = g_new;
    if (f < best_f) {
      best_f = f;
      best_x = x;
    }
  }

  if (!(best_f < f_init)) return initial;
  try {
    Plane refined = Plane::from_beta(best_x, initial.source);
    refined.valid = initial.valid;
    // Normalization keeps the loss unchanged (it is scale invariant in
    // beta), but guard against pathological cases anyway.
    if (interpolation_loss(refined, cam, known) >
        interpolation_loss(initial, cam, known) + 1e-9) {
      return initial;
    }
    return refined;
  } catch (const DegenerateGeometry&) {
    return initial;
  }
}

}  // namespace densify
