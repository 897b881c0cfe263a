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

#include "densify/plane_fit.hpp"

#include <array>
#include <cmath>

#include <Eigen/Dense>

#include "densify/errors.hpp"

namespace densify {

Plane fit_tls(std::span<const Point3> points) {
  if (points.size() < 3) {
    throw DegenerateGeometry("fit_tls needs at least 3 points");
  }
  Point3 mean = Point3::Zero();
  for (const Point3& p : points) mean += p;
  mean /= static_cast<double>(points.size());

  Eigen::MatrixXd a(points.size(), 3);
  for (std::size_t i = 0; i < points.size(); ++i) {
    a.row(i) = (points[i] - mean).transpose();
  }

  Eigen::JacobiSVD<Eigen::MatrixXd> svd(a, Eigen::ComputeFullV);
  const Eigen::Vector3d sv = svd.singularValues();
  if (!(sv(0) > 0.0) || sv(1) < 1e-12 * sv(0)) {
    throw DegenerateGeometry("fit_tls: points are (near-)collinear");
  }
  const Eigen::Vector3d n = svd.matrixV().col(2);
  const double pi3 = -n.dot(mean);
  Plane plane =
      Plane::from_beta({n.x(), n.y(), n.z(), pi3}, PlaneSource::kTls);
  return plane;
}

Plane fit_three_points(const Point3& p0, const Point3& p1, const Point3& p2) {
  // Rows of [X Y 1][a b d]^T = Z; partial-pivot Gaussian elimination.
  std::array<std::array<double, 4>, 3> m = {{
      {p0.x(), p0.y(), 1.0, p0.z()},
      {p1.x(), p1.y(), 1.0, p1.z()},
      {p2.x(), p2.y(), 1.0, p2.z()},
  }};
  double scale = 1.0;
  for (const auto& row : m) {
    for (int c = 0; c < 3; ++c) scale = std::max(scale, std::abs(row[c]));
  }
  const double tol = 1e-12 * scale;

  for (int col = 0; col < 3; ++col) {
    int pivot = col;
    for (int r = col + 1; r < 3; ++r) {
      if (std::abs(m[r][col]) > std::abs(m[pivot][col])) pivot = r;
    }
    if (std::abs(m[pivot][col]) <= tol) {
      throw SingularSample("fit_three_points: degenerate sample");
    }
    std::swap(m[col], m[pivot]);
    for (int r = col + 1; r < 3; ++r) {
      const double f = m[r][col] / m[col][col];
      for (int c = col; c < 4; ++c) m[r][c] -= f * m[col][c];
    }
  }
  double x[3];
  for (int r = 2; r >= 0; --r) {
    double s = m[r][3];
    for (int c = r + 1; c < 3; ++c) s -= m[r][c] * x[c];
    x[r] = s / m[r][r];
  }
  // Z = a X + b Y + d  ->  (a, b, -1, d) . (X, Y, Z, 1) = 0
  return Plane::from_beta({x[0], x[1], -1.0, x[2]}, PlaneSource::kRansac);
}

std::vector<Point3> backproject_known(const CameraModel& cam,
                                      std::span<const KnownDepth> known) {
  std::vector<Point3> out;
  out.reserve(known.size());
  for (const KnownDepth& k : known) {
    out.push_back(cam.backproject(k.pixel, k.depth_mm));
  }
  return out;
}

}  // namespace densify
