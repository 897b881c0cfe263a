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

#include "densify/artifact_filter.hpp"

#include <algorithm>

#include "densify/errors.hpp"

namespace densify {

DepthMap suppress_misalignment(const DepthMap& sparse, double tau_n,
                               NeighborhoodSpec neighborhood) {
  if (!(tau_n > 1.0)) {
    throw InvalidConfig("suppress_misalignment requires tau_n > 1");
  }
  if (neighborhood.radius_u < 0 || neighborhood.radius_v < 0) {
    throw InvalidConfig("suppress_misalignment radii must be >= 0");
  }
  DepthMap out = sparse;
  if (sparse.empty()) return out;

  const int w = sparse.width();
  const int h = sparse.height();
  const int ru = neighborhood.radius_u;
  const int rv = neighborhood.radius_v;
  for (int v = 0; v < h; ++v) {
    for (int u = 0; u < w; ++u) {
      const double d = sparse.at(u, v);
      if (d <= 0.0) continue;
      const double cutoff = d * tau_n;
      const int v0 = std::max(0, v - rv);
      const int v1 = std::min(h - 1, v + rv);
      const int u0 = std::max(0, u - ru);
      const int u1 = std::min(w - 1, u + ru);
      for (int nv = v0; nv <= v1; ++nv) {
        for (int nu = u0; nu <= u1; ++nu) {
          const double dn = sparse.at(nu, nv);
          if (dn > 0.0 && dn >= cutoff) out.clear(nu, nv);
        }
      }
    }
  }
  return out;
}

}  // namespace densify
