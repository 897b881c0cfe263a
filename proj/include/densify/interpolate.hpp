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

#include <optional>
#include <span>

#include "densify/camera.hpp"
#include "densify/config.hpp"
#include "densify/plane.hpp"
#include "densify/superpixel.hpp"
#include "densify/types.hpp"

namespace densify {

// Ray-plane setup shared across the pixels of one superpixel.  Rays are
// parameterized as X(t) = l0 + t * l(x') with l0 the camera center and
// l(x') = M^-1 x', so the intersection parameter IS the projective depth:
// a measured pixel lying exactly on the plane intersects at its own depth.
struct RayPlaneContext {
  Plane plane;
  Point3 p0 = Point3::Zero();  // a fixed point on the plane
  Point3 l0 = Point3::Zero();  // camera center
  const CameraModel* cam = nullptr;
};

RayPlaneContext make_context(const Plane& plane, const CameraModel& cam);

// Intersection parameter (meters) of the pixel ray with the plane, or
// nothing when the ray is parallel (|n.l| <= 1e-12 * ||n|| ||l||).
std::optional<double> intersect_depth_m(const RayPlaneContext& ctx,
                                        PixelCoord x);

// 3D intersection point; throws RayParallelToPlane.
Point3 intersect(const RayPlaneContext& ctx, PixelCoord x);

// Angle between ray and plane in degrees, in [0, 90]; 90 means the ray is
// parallel to the normal (head-on), 0 means it grazes the plane.
double intersection_angle_deg(const Plane& plane, const Eigen::Vector3d& ray);

// Interpolation loss for an arbitrary (not necessarily unit) beta:
//   E = 1/2 sum_k (Z_lid,k - Z_int,k(beta))^2   [mm^2]
// Pixels whose ray is parallel to the plane contribute a fixed 1e12 mm^2
// penalty (and a zero gradient term) instead of a NaN.
// When grad is non-null it receives dE/dbeta (analytic).
double interpolation_loss_beta(const Eigen::Vector4d& beta,
                               const CameraModel& cam,
                               std::span<const KnownDepth> known,
                               Eigen::Vector4d* grad = nullptr);

double interpolation_loss(const Plane& plane, const CameraModel& cam,
                          std::span<const KnownDepth> known);

struct LossStats {
  double total_mm2 = 0.0;
  double mean_mm2 = 0.0;
  double min_zint_mm = 0.0;  // +inf when every known ray is parallel
  int parallel_count = 0;
};

LossStats interpolation_loss_stats(const Plane& plane, const CameraModel& cam,
                                   std::span<const KnownDepth> known);

// Plane acceptance: mean loss below tau_pi, or everything far away
// (min interpolated depth >= tau_dist) with mean loss below the relaxed
// far threshold.
bool validity(double mean_loss_mm2, double min_zint_mm,
              const PipelineConfig& cfg);

struct InterpolationResult {
  // Aligned with Superpixel::pixels: measured depth for known pixels,
  // interpolated depth for unknowns, 0 where nothing was emitted.
  std::vector<double> depths_mm;
  double mean_loss_mm2 = 0.0;
  bool valid = false;
  int theta_rejections = 0;
};

// Densifies one superpixel from a plane.  Unknown pixels are skipped when
// the intersection angle is at or below cfg.tau_theta_deg, when the ray is
// parallel, or when the interpolated depth is not a positive finite value.
// Known pixels keep their measurements.  When allowed_unknown is non-null
// only those unknown pixels are interpolated (the convex hull restriction).
InterpolationResult interpolate_superpixel(
    const Superpixel& sp, const Plane& plane, const CameraModel& cam,
    const PipelineConfig& cfg,
    const std::vector<PixelCoord>* allowed_unknown = nullptr);

// Local minimization of the interpolation loss over all four plane
// coefficients (BFGS with the analytic gradient, backtracking line search,
// at most 50 iterations).  Deterministic; returns the initial plane when no
// improvement is found, so the loss never increases.
Plane refine(const Plane& initial, const CameraModel& cam,
             std::span<const KnownDepth> known);

}  // namespace densify
