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

#include <span>
#include <vector>

#include "densify/camera.hpp"
#include "densify/plane.hpp"
#include "densify/types.hpp"

namespace densify {

// Total least squares plane: the normal is the right singular vector of the
// mean-centered design matrix for its smallest singular value, the offset
// follows from the centroid.  Minimizes the sum of squared orthogonal
// distances.
//
// Throws DegenerateGeometry for < 3 points or a (near-)collinear set
// (the two smallest singular values both below 1e-12 times the largest).
Plane fit_tls(std::span<const Point3> points);

// Exact plane through three points, solved as Z = a X + b Y + d by Gaussian
// elimination and renormalized to a unit normal.  Throws SingularSample for
// collinear triples and for planes that have no Z = f(X, Y) form (vertical
// planes); RANSAC skips such samples.
Plane fit_three_points(const Point3& p0, const Point3& p1, const Point3& p2);

// Back-projects measured pixels to camera-frame meters; output order
// matches input order.
std::vector<Point3> backproject_known(const CameraModel& cam,
                                      std::span<const KnownDepth> known);

}  // namespace densify
