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
#include "densify/interpolate.hpp"
#include "densify/plane_fit.hpp"
#include "densify/prng.hpp"
#include "oracles.hpp"

using namespace densify;

namespace {

const CameraModel kCam = CameraModel::pinhole(700.0, 700.0, 320.0, 240.0);

Plane plane_from(double pi0, double pi1, double pi2, double pi3) {
  return Plane::from_beta({pi0, pi1, pi2, pi3}, PlaneSource::kTls);
}

// Measurements lying exactly on a plane, seen by the given camera.
std::vector<KnownDepth> known_on_plane(const Plane& plane,
                                       const CameraModel& cam,
                                       std::span<const PixelCoord> pixels) {
  std::vector<KnownDepth> known;
  const RayPlaneContext ctx = make_context(plane, cam);
  for (const PixelCoord& p : pixels) {
    const auto s = intersect_depth_m(ctx, p);
    REQUIRE(s.has_value());
    REQUIRE(*s > 0.0);
    known.push_back({p, *s * 1000.0});
  }
  return known;
}

}  // namespace

TEST_CASE("fronto-parallel plane intersections have constant depth") {
  const Plane plane = plane_from(0, 0, -1, 5.0);  // Z = 5
  const RayPlaneContext ctx = make_context(plane, kCam);
  CHECK(std::abs(ctx.p0.z() - 5.0) < 1e-12);  // anchor point on the plane

  const Point3 center_hit = intersect(ctx, {320, 240});
  CHECK((center_hit - Point3(0, 0, 5)).norm() < 1e-9);

  for (const PixelCoord p :
       {PixelCoord{0, 0}, PixelCoord{639, 479}, PixelCoord{100, 400}}) {
    const Point3 hit = intersect(ctx, p);
    CHECK(hit.z() == doctest::Approx(5.0).epsilon(1e-12));
    CHECK(std::abs(plane.signed_distance_m(hit)) < 1e-7);
  }
}

TEST_CASE("tilted plane intersection matches the linear-system oracle") {
  // Z = 2 + 0.1 X  ->  0.1 X - Z + 2 = 0
  const Plane plane = plane_from(0.1, 0.0, -1.0, 2.0);
  const RayPlaneContext ctx = make_context(plane, kCam);
  for (const PixelCoord p :
       {PixelCoord{500, 100}, PixelCoord{40, 470}, PixelCoord{321, 239}}) {
    const Point3 hit = intersect(ctx, p);
    CHECK(std::abs(plane.signed_distance_m(hit)) < 1e-7);
    double z_oracle = 0.0;
    REQUIRE(oracle::zint_linear_system(plane, kCam, p, &z_oracle));
    CHECK(kCam.depth_of(hit) == doctest::Approx(z_oracle).epsilon(1e-9));
    const auto s = intersect_depth_m(ctx, p);
    CHECK(*s == doctest::Approx(z_oracle).epsilon(1e-9));
  }
}

TEST_CASE("parallel rays are reported") {
  // Plane through the camera center, normal orthogonal to the central ray.
  const Plane plane = plane_from(1, 0, 0, 0);  // X = 0
  const RayPlaneContext ctx = make_context(plane, kCam);
  CHECK_THROWS_AS(intersect(ctx, {320, 240}), RayParallelToPlane);
}

TEST_CASE("intersection angles: parallel, orthogonal, 45 degrees") {
  const Plane plane = plane_from(0, 0, 1, -5);
  CHECK(intersection_angle_deg(plane, {0, 0, 1}) ==
        doctest::Approx(90.0).epsilon(1e-12));
  CHECK(intersection_angle_deg(plane, {1, 0, 0}) ==
        doctest::Approx(0.0).epsilon(1e-12));
  CHECK(intersection_angle_deg(plane, Eigen::Vector3d(1, 0, 1).normalized()) ==
        doctest::Approx(45.0).epsilon(1e-12));
}

TEST_CASE("interpolation loss is zero exactly on the plane") {
  const Plane plane = plane_from(0.05, -0.1, -1.0, 8.0);
  const std::vector<PixelCoord> pixels = {{100, 100}, {400, 300}, {320, 240},
                                          {50, 450}};
  const auto known = known_on_plane(plane, kCam, pixels);
  CHECK(interpolation_loss(plane, kCam, known) <= 1e-9);
}

TEST_CASE("one point one meter off costs half a squared meter") {
  const Plane plane = plane_from(0, 0, -1, 11.0);  // Z = 11
  // Principal-point ray hits at exactly 11 m; measured depth is 10 m.
  const std::vector<KnownDepth> known = {{{320, 240}, 10000.0}};
  const double loss = interpolation_loss(plane, kCam, known);
  CHECK(loss == doctest::Approx(0.5 * 1000.0 * 1000.0).epsilon(1e-12));
}

TEST_CASE("loss agrees with the scalar formula oracle on random cases") {
  CounterRng rng(11, "loss_oracle", 0);
  for (int trial = 0; trial < 20; ++trial) {
    const Plane plane = plane_from(rng.uniform(-0.3, 0.3),
                                   rng.uniform(-0.3, 0.3), -1.0,
                                   rng.uniform(4.0, 30.0));
    std::vector<KnownDepth> known;
    for (int i = 0; i < 8; ++i) {
      known.push_back({{static_cast<int>(rng.uniform_below(640)),
                        static_cast<int>(rng.uniform_below(480))},
                       rng.uniform(2000.0, 40000.0)});
    }
    double expect = 0.0;
    for (const KnownDepth& k : known) {
      double z_oracle = 0.0;
      REQUIRE(oracle::zint_linear_system(plane, kCam, k.pixel, &z_oracle));
      const double r = k.depth_mm / 1000.0 - z_oracle;
      expect += 0.5 * r * r * 1e6;
    }
    const double got = interpolation_loss(plane, kCam, known);
    CHECK(got == doctest::Approx(expect).epsilon(1e-9));
  }
}

TEST_CASE("analytic gradient matches central differences") {
  CounterRng rng(21, "grad_check", 0);
  for (int trial = 0; trial < 20; ++trial) {
    Eigen::Vector4d beta(rng.uniform(-0.5, 0.5), rng.uniform(-0.5, 0.5),
                         rng.uniform(-1.5, -0.5), rng.uniform(2.0, 25.0));
    std::vector<KnownDepth> known;
    for (int i = 0; i < 10; ++i) {
      known.push_back({{static_cast<int>(rng.uniform_below(640)),
                        static_cast<int>(rng.uniform_below(480))},
                       rng.uniform(2000.0, 50000.0)});
    }
    Eigen::Vector4d grad;
    interpolation_loss_beta(beta, kCam, known, &grad);
    double scale = grad.cwiseAbs().maxCoeff();
    for (int j = 0; j < 4; ++j) {
      const double h = 1e-6 * std::max(1.0, std::abs(beta[j]));
      Eigen::Vector4d hi = beta, lo = beta;
      hi[j] += h;
      lo[j] -= h;
      const double fd = (interpolation_loss_beta(hi, kCam, known) -
                         interpolation_loss_beta(lo, kCam, known)) /
                        (2.0 * h);
      CHECK(std::abs(grad[j] - fd) <=
            1e-4 * std::max({std::abs(grad[j]), std::abs(fd), 1e-9 * scale}));
    }
  }
}

TEST_CASE("validity truth table") {
  PipelineConfig cfg;
  cfg.tau_pi_mm2 = 100.0;
  cfg.tau_pi_far_mm2 = 1000.0;
  cfg.tau_dist_mm = 30000.0;
  CHECK(validity(0.0, 1000.0, cfg));                  // zero loss
  CHECK(validity(100.0, 1000.0, cfg));                // boundary inclusive
  CHECK_FALSE(validity(100.0001, 1000.0, cfg));       // just above, near
  CHECK(validity(500.0, 30000.0, cfg));               // far relaxation fires
  CHECK_FALSE(validity(500.0, 29999.0, cfg));         // not far enough
  CHECK_FALSE(validity(1000.1, 50000.0, cfg));        // above even far bound
  // Exhaustive over the 2x2x2 corner grid of (loss branch, dist, far loss).
  for (const double loss : {50.0, 700.0, 2000.0}) {
    for (const double dist : {10000.0, 40000.0}) {
      const bool expect =
          loss <= 100.0 || (dist >= 30000.0 && loss <= 1000.0);
      CHECK(validity(loss, dist, cfg) == expect);
    }
  }
}

TEST_CASE("interpolating a superpixel on a tilted plane is exact") {
  // Ground-like plane Y = 1.5 ->  (0, 1, 0) . X - 1.5 = 0.
  const Plane plane = plane_from(0, -1, 0, 1.5);
  Superpixel sp;
  sp.id = 0;
  int idx = 0;
  for (int v = 400; v < 420; ++v) {
    for (int u = 300; u < 330; ++u) {
      sp.pixels.push_back({u, v});
      ++idx;
    }
  }
  const RayPlaneContext ctx = make_context(plane, kCam);
  for (std::size_t i = 0; i < sp.pixels.size(); ++i) {
    if (i % 7 == 0) {
      const auto s = intersect_depth_m(ctx, sp.pixels[i]);
      sp.known.push_back({sp.pixels[i], *s * 1000.0});
    } else {
      sp.unknown.push_back(sp.pixels[i]);
    }
  }
  sp.admissible = true;

  PipelineConfig cfg;
  const InterpolationResult result =
      interpolate_superpixel(sp, plane, kCam, cfg);
  CHECK(result.valid);
  CHECK(result.mean_loss_mm2 <= 1e-9);
  std::size_t interpolated = 0;
  for (std::size_t i = 0; i < sp.pixels.size(); ++i) {
    const double got = result.depths_mm[i];
    REQUIRE(got > 0.0);
    const auto s = intersect_depth_m(ctx, sp.pixels[i]);
    const double expect = *s * 1000.0;
    CHECK(std::abs(got - expect) / expect < 1e-6);
    ++interpolated;
  }
  CHECK(interpolated == sp.pixels.size());
  CHECK(result.theta_rejections == 0);
}

TEST_CASE("angle gate boundaries: 90 degrees blocks all, tiny tau admits") {
  const Plane plane = plane_from(0, 0, -1, 6.0);
  Superpixel sp;
  for (int v = 100; v < 104; ++v) {
    for (int u = 200; u < 204; ++u) sp.pixels.push_back({u, v});
  }
  sp.unknown = sp.pixels;
  sp.known = {{{200, 100}, 6000.0}};
  sp.unknown.erase(sp.unknown.begin());

  PipelineConfig cfg;
  cfg.tau_theta_deg = 90.0;
  InterpolationResult all_blocked = interpolate_superpixel(sp, plane, kCam, cfg);
  for (std::size_t i = 1; i < all_blocked.depths_mm.size(); ++i) {
    CHECK(all_blocked.depths_mm[i] == 0.0);
  }
  CHECK(all_blocked.theta_rejections ==
        static_cast<int>(sp.unknown.size()));

  cfg.tau_theta_deg = 1e-9;
  InterpolationResult all_open = interpolate_superpixel(sp, plane, kCam, cfg);
  for (std::size_t i = 0; i < all_open.depths_mm.size(); ++i) {
    CHECK(all_open.depths_mm[i] > 0.0);
  }
}

TEST_CASE("plane through the camera center rejects every pixel") {
  // Contains the center (origin): pi3 = 0, normal orthogonal-ish to rays.
  const Plane plane = plane_from(1, 0, 0, 0);
  Superpixel sp;
  for (int u = 310; u < 330; ++u) sp.pixels.push_back({u, 240});
  sp.unknown = sp.pixels;
  PipelineConfig cfg;  // tau_theta = 4 degrees
  const InterpolationResult result =
      interpolate_superpixel(sp, plane, kCam, cfg);
  for (double d : result.depths_mm) CHECK(d == 0.0);
  CHECK(result.theta_rejections == static_cast<int>(sp.pixels.size()));
}

TEST_CASE("negative intersections are dropped, not emitted") {
  // Plane behind the camera: Z = -3.
  const Plane plane = plane_from(0, 0, -1, -3.0);
  Superpixel sp;
  sp.pixels = {{10, 10}, {600, 400}};
  sp.unknown = sp.pixels;
  PipelineConfig cfg;
  const InterpolationResult result =
      interpolate_superpixel(sp, plane, kCam, cfg);
  for (double d : result.depths_mm) CHECK(d == 0.0);
}

TEST_CASE("per-point loss dominates the orthogonal distance via the ray") {
  CounterRng rng(31, "dominance", 0);
  for (int trial = 0; trial < 50; ++trial) {
    const Plane plane = plane_from(rng.uniform(-0.4, 0.4),
                                   rng.uniform(-0.4, 0.4), -1.0,
                                   rng.uniform(3.0, 20.0));
    const PixelCoord pixel{static_cast<int>(rng.uniform_below(640)),
                           static_cast<int>(rng.uniform_below(480))};
    const double z_mm = rng.uniform(2000.0, 30000.0);
    const Eigen::Vector3d l = kCam.ray(pixel);
    const RayPlaneContext ctx = make_context(plane, kCam);
    const auto s = intersect_depth_m(ctx, pixel);
    if (!s) continue;
    const Point3 x = kCam.backproject(pixel, z_mm);
    const double dz = z_mm / 1000.0 - *s;
    const double d_orth = std::abs(plane.signed_distance_m(x));
    const double theta = intersection_angle_deg(plane, l);
    // Identity: orthogonal distance = |dZ| * ||l|| * sin(theta).
    CHECK(d_orth == doctest::Approx(std::abs(dz) * l.norm() *
                                    std::sin(theta * M_PI / 180.0))
                        .epsilon(1e-9));
    // Dominance along the ray; equality only at theta = 90.
    CHECK(dz * dz * l.squaredNorm() >= d_orth * d_orth - 1e-12);
    if (theta < 89.999) {
      CHECK(dz * dz * l.squaredNorm() > d_orth * d_orth - 1e-12);
    }
  }
}

TEST_CASE("refine leaves an exact plane alone") {
  const Plane plane = plane_from(0.1, -0.05, -1.0, 7.0);
  const std::vector<PixelCoord> pixels = {
      {100, 100}, {500, 120}, {320, 240}, {60, 400}, {600, 460}};
  const auto known = known_on_plane(plane, kCam, pixels);
  const Plane refined = refine(plane, kCam, known);
  CHECK((refined.beta() - plane.beta()).norm() < 1e-9);
}

TEST_CASE("refine never raises the loss and beats a coarse grid oracle") {
  CounterRng rng(41, "refine_grid", 0);
  for (int trial = 0; trial < 5; ++trial) {
    const Plane truth = plane_from(rng.uniform(-0.2, 0.2),
                                   rng.uniform(-0.2, 0.2), -1.0,
                                   rng.uniform(5.0, 15.0));
    std::vector<PixelCoord> pixels;
    for (int i = 0; i < 12; ++i) {
      pixels.push_back({static_cast<int>(40 + rng.uniform_below(560)),
                        static_cast<int>(40 + rng.uniform_below(400))});
    }
    auto known = known_on_plane(truth, kCam, pixels);
    for (auto& k : known) k.depth_mm += rng.normal() * 20.0;  // 2 cm noise

    // Perturbed starting point.
    Eigen::Vector4d noisy = truth.beta();
    for (int j = 0; j < 4; ++j) noisy[j] += rng.uniform(-0.05, 0.05);
    const Plane start = Plane::from_beta(noisy, PlaneSource::kTls);

    const double loss_start = interpolation_loss(start, kCam, known);
    const Plane refined = refine(start, kCam, known);
    const double loss_refined = interpolation_loss(refined, kCam, known);
    CHECK(loss_refined <= loss_start + 1e-9);

    // Coarse 4-D grid around the start (normals with pi2 = -1 + offsets).
    double grid_min = loss_start;
    for (int i0 = -4; i0 <= 4; ++i0) {
      for (int i1 = -4; i1 <= 4; ++i1) {
        for (int i3 = -6; i3 <= 6; ++i3) {
          const Eigen::Vector4d cand(start.pi0 / -start.pi2 + 0.02 * i0,
                                     start.pi1 / -start.pi2 + 0.02 * i1, -1.0,
                                     start.pi3 / -start.pi2 + 0.05 * i3);
          grid_min = std::min(grid_min,
                              interpolation_loss_beta(cand, kCam, known));
        }
      }
    }
    CHECK(loss_refined <= grid_min * 1.05 + 1e-6);
  }
}

TEST_CASE("refining toward the image plane reduces the loss and lifts the angle") {
  // Slightly mis-tilted ground plane: the optimum for rays hitting below
  // the horizon tilts back toward image-plane parallelism.
  const Plane truth = plane_from(0, -1, 0, 1.5);  // Y = 1.5, true geometry
  std::vector<PixelCoord> pixels;
  for (int v = 330; v <= 470; v += 20) {
    for (int u = 120; u <= 520; u += 80) pixels.push_back({u, v});
  }
  const auto known = known_on_plane(truth, kCam, pixels);

  // Start from a plane tilted toward being parallel to the rays.
  const Plane start =
      Plane::from_beta({0.0, -1.0, 0.12, 1.30}, PlaneSource::kTls);
  const double loss_start = interpolation_loss(start, kCam, known);
  const Plane refined = refine(start, kCam, known);
  const double loss_refined = interpolation_loss(refined, kCam, known);
  CHECK(loss_refined < loss_start);

  // Intersection angle at the centroid pixel grows.
  PixelCoord centroid{0, 0};
  for (const PixelCoord& p : pixels) {
    centroid.u += p.u;
    centroid.v += p.v;
  }
  centroid.u /= static_cast<int>(pixels.size());
  centroid.v /= static_cast<int>(pixels.size());
  const Eigen::Vector3d l = kCam.ray(centroid);
  CHECK(intersection_angle_deg(refined, l) >
        intersection_angle_deg(start, l));
}
