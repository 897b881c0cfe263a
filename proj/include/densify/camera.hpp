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

#include <Eigen/Core>

#include "densify/types.hpp"

namespace densify {

// Pinhole camera with projection P = [M | p4], M invertible.
//
// A pixel x' = [u, v, 1]^T at depth Z back-projects to
//   X(Z) = M^-1 (Z x' - p4)            (meters)
// so the camera center is c = -M^-1 p4 and X(Z) = c + Z * M^-1 x'.
// depth_of() returns the projective scale (M X + p4)_3, which inverts the
// parameterization exactly: depth_of(backproject(x', Z)) == Z for any
// invertible M.  For the usual intrinsics (third row [0 0 1], p4_3 = 0) it
// is simply the camera-frame Z coordinate.
class CameraModel {
 public:
  CameraModel(const Eigen::Matrix3d& m, const Eigen::Vector3d& p4);

  // Row-major 3x4 projection matrix.
  static CameraModel from_projection(const Eigen::Matrix<double, 3, 4>& p);
  static CameraModel pinhole(double fx, double fy, double cx, double cy);

  const Eigen::Matrix3d& m() const { return m_; }
  const Eigen::Matrix3d& m_inv() const { return m_inv_; }
  const Eigen::Vector3d& p4() const { return p4_; }
  const Point3& center() const { return center_; }

  // Direction of the viewing ray through a pixel: l(x') = M^-1 x'.
  // Not normalized.
  Eigen::Vector3d ray(PixelCoord x) const {
    return ray(static_cast<double>(x.u), static_cast<double>(x.v));
  }
  Eigen::Vector3d ray(double u, double v) const {
    return m_inv_ * Eigen::Vector3d(u, v, 1.0);
  }

  // Throws NonPositiveDepth when depth_mm <= 0.
  Point3 backproject(PixelCoord x, double depth_mm) const;

  Eigen::Vector2d project(const Point3& x) const;

  // Projective depth scale in meters; matches the Z argument of backproject.
  double depth_of(const Point3& x) const {
    return m_.row(2).dot(x) + p4_.z();
  }

 private:
  Eigen::Matrix3d m_;
  Eigen::Vector3d p4_;
  Eigen::Matrix3d m_inv_;
  Point3 center_;
};

}  // namespace densify
