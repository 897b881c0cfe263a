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

#include "densify/camera.hpp"

#include <cmath>

#include <Eigen/LU>

#include "densify/errors.hpp"

namespace densify {

CameraModel::CameraModel(const Eigen::Matrix3d& m, const Eigen::Vector3d& p4)
    : m_(m), p4_(p4) {
  const double det = m.determinant();
  if (!std::isfinite(det) || std::abs(det) <= 1e-9) {
    throw SingularM("camera matrix M is singular or ill conditioned");
  }
  m_inv_ = m.inverse();
  center_ = -(m_inv_ * p4_);
}

CameraModel CameraModel::from_projection(
    const Eigen::Matrix<double, 3, 4>& p) {
  return CameraModel(p.leftCols<3>(), p.col(3));
}

CameraModel CameraModel::pinhole(double fx, double fy, double cx, double cy) {
  Eigen::Matrix3d m;
  m << fx, 0, cx, 0, fy, cy, 0, 0, 1;
  return CameraModel(m, Eigen::Vector3d::Zero());
}

Point3 CameraModel::backproject(PixelCoord x, double depth_mm) const {
  if (!(depth_mm > 0.0)) {
    throw NonPositiveDepth("backproject requires a positive depth");
  }
  const double z = depth_mm / kMmPerMeter;
  const Eigen::Vector3d xh(static_cast<double>(x.u), static_cast<double>(x.v),
                           1.0);
  return m_inv_ * (z * xh - p4_);
}

Eigen::Vector2d CameraModel::project(const Point3& x) const {
  const Eigen::Vector3d h = m_ * x + p4_;
  return {h.x() / h.z(), h.y() / h.z()};
}

}  // namespace densify
