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

#include "densify/plane.hpp"

#include <cmath>

#include "densify/errors.hpp"

namespace densify {

Plane Plane::from_beta(const Eigen::Vector4d& beta, PlaneSource source) {
  const double norm =
      std::sqrt(beta[0] * beta[0] + beta[1] * beta[1] + beta[2] * beta[2]);
  if (!(norm > 1e-12) || !std::isfinite(norm)) {
    throw DegenerateGeometry("plane normal is degenerate");
  }
  Eigen::Vector4d b = beta / norm;
  // Canonical sign: pi2 <= 0, ties broken on pi0 then pi1.
  bool flip = b[2] > 0.0;
  if (b[2] == 0.0) {
    flip = b[0] < 0.0 || (b[0] == 0.0 && b[1] < 0.0);
  }
  if (flip) b = -b;
  Plane p;
  p.pi0 = b[0];
  p.pi1 = b[1];
  p.pi2 = b[2];
  p.pi3 = b[3];
  p.source = source;
  return p;
}

}  // namespace densify
