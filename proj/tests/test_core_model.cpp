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

#include "densify/camera.hpp"
#include "densify/config.hpp"
#include "densify/depth_map.hpp"
#include "densify/errors.hpp"
#include "densify/plane.hpp"
#include "densify/prng.hpp"
#include "oracles.hpp"

using namespace densify;

namespace {
const CameraModel kKitti = CameraModel::pinhole(721.5377, 721.5377, 609.5593,
                                                172.854);
}

TEST_CASE("backproject through the principal point lies on the optical axis") {
  const CameraModel cam = CameraModel::pinhole(700.0, 700.0, 320.0, 240.0);
  const Point3 p = cam.backproject({320, 240}, 5000.0);
  CHECK(p.x() == doctest::Approx(0.0).epsilon(1e-12));
  CHECK(p.y() == doctest::Approx(0.0).epsilon(1e-12));
  CHECK(p.z() == doctest::Approx(5.0).epsilon(1e-12));
}

TEST_CASE("project inverts backproject for every in-bounds pixel") {
  // Full sweep on a small camera at 1, 10 and 80 m.
  const CameraModel small = CameraModel::pinhole(50.0, 48.0, 31.5, 23.5);
  double worst = 0.0;
  for (const double z_mm : {1000.0, 10000.0, 80000.0}) {
    for (int v = 0; v < 48; ++v) {
      for (int u = 0; u < 64; ++u) {
        const Point3 p = small.backproject({u, v}, z_mm);
        const Eigen::Vector2d uv = small.project(p);
        worst = std::max({worst, std::abs(uv.x() - u), std::abs(uv.y() - v)});
      }
    }
  }
  CHECK(worst < 1e-6);

  // Spot checks at KITTI scale, including the depth inverse.
  const CameraModel cam = kKitti;
  for (const double z_mm : {1000.0, 10000.0, 80000.0}) {
    for (const PixelCoord x : {PixelCoord{0, 0}, PixelCoord{1215, 0},
                               PixelCoord{0, 351}, PixelCoord{1215, 351},
                               PixelCoord{609, 172}, PixelCoord{100, 300}}) {
      const Point3 p = cam.backproject(x, z_mm);
      const Eigen::Vector2d uv = cam.project(p);
      CHECK(std::abs(uv.x() - x.u) < 1e-6);
      CHECK(std::abs(uv.y() - x.v) < 1e-6);
      CHECK(cam.depth_of(p) ==
            doctest::Approx(z_mm / 1000.0).epsilon(1e-9));
    }
  }
}

TEST_CASE("backproject matches an independent linear solve") {
  // Camera with a non-trivial fourth column (stereo-style baseline).
  Eigen::Matrix<double, 3, 4> proj;
  proj << 721.5377, 0, 609.5593, 44.85728, 0, 721.5377, 172.854, 0.2163791, 0,
      0, 1, 0;
  const CameraModel cam = CameraModel::from_projection(proj);
  const PixelCoord x{609, 172};
  const double z_mm = 10000.0;

  const Point3 got = cam.backproject(x, z_mm);

  // Oracle: solve M X = Z x' - p4 by Cramer's rule.
  const Eigen::Vector3d rhs =
      10.0 * Eigen::Vector3d(x.u, x.v, 1.0) - proj.col(3);
  Eigen::Vector3d expect;
  REQUIRE(oracle::solve3_cramer(proj.leftCols<3>(), rhs, &expect));
  CHECK((got - expect).norm() < 1e-9);
}

TEST_CASE("rays are parallel to back-projected directions") {
  const CameraModel cam = kKitti;
  for (const PixelCoord x :
       {PixelCoord{0, 0}, PixelCoord{400, 100}, PixelCoord{609, 172}}) {
    const Eigen::Vector3d ray = cam.ray(x).normalized();
    for (const double z : {1000.0, 10000.0, 80000.0}) {
      const Eigen::Vector3d dir =
          (cam.backproject(x, z) - cam.center()).normalized();
      CHECK(dir.cross(ray).norm() < 1e-9);
    }
  }
}

TEST_CASE("ray through the principal point is the optical axis") {
  const CameraModel cam = CameraModel::pinhole(500.0, 500.0, 100.0, 80.0);
  const Eigen::Vector3d r = cam.ray({100, 80}).normalized();
  CHECK((r - Eigen::Vector3d(0, 0, 1)).norm() < 1e-12);
}

TEST_CASE("distinct pixels give non-parallel rays") {
  const CameraModel cam = kKitti;
  const Eigen::Vector3d a = cam.ray({10, 10});
  const Eigen::Vector3d b = cam.ray({11, 10});
  CHECK(a.cross(b).norm() > 0.0);
}

TEST_CASE("off-center ray equals the inverse-matrix oracle") {
  Eigen::Matrix3d m;
  m << 600.0, 2.0, 300.0, 0.0, 590.0, 200.0, 0.0, 0.0, 1.0;
  const CameraModel cam(m, Eigen::Vector3d(1.0, -2.0, 0.0));
  const PixelCoord x{123, 45};
  // Oracle: solve M r = x' instead of using the cached inverse.
  Eigen::Vector3d expect;
  REQUIRE(oracle::solve3_cramer(m, Eigen::Vector3d(x.u, x.v, 1.0), &expect));
  CHECK((cam.ray(x) - expect).norm() < 1e-9);
}

TEST_CASE("camera model rejects bad inputs") {
  Eigen::Matrix3d singular = Eigen::Matrix3d::Zero();
  singular(0, 0) = 1.0;
  singular(1, 1) = 1.0;
  CHECK_THROWS_AS(CameraModel(singular, Eigen::Vector3d::Zero()), SingularM);

  const CameraModel cam = kKitti;
  CHECK_THROWS_AS(cam.backproject({0, 0}, 0.0), NonPositiveDepth);
  CHECK_THROWS_AS(cam.backproject({0, 0}, -5.0), NonPositiveDepth);
}

TEST_CASE("M * M^-1 stays within 1e-9 of identity") {
  const CameraModel cam = kKitti;
  const Eigen::Matrix3d should_be_identity = cam.m() * cam.m_inv();
  CHECK((should_be_identity - Eigen::Matrix3d::Identity())
            .cwiseAbs()
            .maxCoeff() < 1e-9);
}

TEST_CASE("DepthMap basics and bounds") {
  DepthMap map(4, 3);
  CHECK(map.size() == 12);
  CHECK(map.measurement_count() == 0);
  map.set(2, 1, 1234.5);
  CHECK(map.at(2, 1) == 1234.5);
  CHECK(map.has(2, 1));
  CHECK_FALSE(map.has(0, 0));
  CHECK(map.measurement_count() == 1);
  CHECK_THROWS_AS(DepthMap(0, 5), DimensionMismatch);
}

TEST_CASE("planes normalize to unit normal with canonical sign") {
  const Plane p = Plane::from_beta({0, 0, 2.0, -10.0}, PlaneSource::kTls);
  CHECK(p.normal().norm() == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(p.pi2 == doctest::Approx(-1.0));
  CHECK(p.pi3 == doctest::Approx(5.0));
  CHECK_THROWS_AS(Plane::from_beta({0, 0, 0, 1.0}, PlaneSource::kTls),
                  DegenerateGeometry);
}

TEST_CASE("config validation catches bad thresholds") {
  PipelineConfig cfg;
  CHECK_NOTHROW(cfg.validate());
  cfg.tau_n = 1.0;
  CHECK_THROWS_AS(cfg.validate(), InvalidConfig);
  cfg = PipelineConfig{};
  cfg.tau_rel = 1.5;
  CHECK_THROWS_AS(cfg.validate(), InvalidConfig);
  cfg = PipelineConfig{};
  cfg.slic_superpixel_counts.clear();
  CHECK_THROWS_AS(cfg.validate(), InvalidConfig);
}

TEST_CASE("config keys round-trip through apply") {
  PipelineConfig cfg;
  cfg.apply("tau_n", "1.3");
  cfg.apply("slic_superpixel_counts", "500, 1000,2000");
  cfg.apply("colorspace", "gray");
  cfg.apply("fill_method", "morph");
  cfg.apply("refine_loss", "true");
  CHECK(cfg.tau_n == 1.3);
  CHECK(cfg.slic_superpixel_counts == std::vector<int>{500, 1000, 2000});
  CHECK(cfg.colorspace == Colorspace::kGray);
  CHECK(cfg.fill_method == FillMethod::kMorphological);
  CHECK(cfg.refine_loss);
  CHECK_THROWS_AS(cfg.apply("no_such_key", "1"), InvalidConfig);
  CHECK_THROWS_AS(cfg.apply("tau_n", "abc"), InvalidConfig);
}

TEST_CASE("counter rng is stateless in the counter") {
  CounterRng a(7, "frame_x", 42);
  CounterRng b(7, "frame_x", 42);
  const auto v0 = a.next();
  const auto v1 = a.next();
  CHECK(b.at(0) == v0);
  CHECK(b.at(1) == v1);
  CounterRng c(7, "frame_y", 42);
  CHECK(c.at(0) != v0);  // different stream, different values
}
