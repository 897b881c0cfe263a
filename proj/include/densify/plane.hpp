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

enum class PlaneSource { kTls, kRansac };

// Plane n . X + pi3 = 0 in meters with n = (pi0, pi1, pi2).
// Stored with ||n|| = 1 and a canonical sign (pi2 <= 0) so planes from the
// two fitting routes compare directly.
struct Plane {
  double pi0 = 0.0;
  double pi1 = 0.0;
  double pi2 = 0.0;
  double pi3 = 0.0;
  PlaneSource source = PlaneSource::kTls;
  bool valid = false;

  Eigen::Vector3d normal() const { return {pi0, pi1, pi2}; }
  Eigen::Vector4d beta() const { return {pi0, pi1, pi2, pi3}; }

  double signed_distance_m(const Point3& x) const {
    return pi0 * x.x() + pi1 * x.y() + pi2 * x.z() + pi3;
  }

  // A fixed representative point on the plane (the one closest to the
  // origin); used to anchor the ray-plane parameterization reproducibly.
  Point3 point_on_plane() const { return -pi3 * normal(); }

  // Normalizes to unit normal and canonical sign.
  // Throws DegenerateGeometry when the normal part is (near) zero.
  static Plane from_beta(const Eigen::Vector4d& beta, PlaneSource source);
};

}  // namespace densify
