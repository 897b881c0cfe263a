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
#include <string_view>
#include <vector>

#include "densify/camera.hpp"
#include "densify/config.hpp"
#include "densify/plane.hpp"
#include "densify/superpixel.hpp"

namespace densify {

// Winning RANSAC hypothesis for one superpixel.
struct HypothesisScore {
  Plane plane;
  std::vector<int> inliers;           // indices into Superpixel::known
  std::vector<double> losses_mm2;     // per-inlier interpolation losses G
  double rho = 0.0;                   // mean of squared entries of G
  std::size_t hypothesis_index = 0;   // for reproducibility diagnostics
};

// Plane search scored by the interpolation loss: a point is an inlier when
// its per-point loss 1/2 (Z_lid - Z_int)^2 is at most tau_ransac_inlier.
// The winner maximizes the inlier count, breaking ties by minimal rho and
// then by the lowest hypothesis index.
//
// When C(|K|, 3) <= cfg.ransac_iterations every triple is enumerated in
// lexicographic order (no RNG at all); otherwise cfg.ransac_iterations
// triples are drawn from a counter-based generator seeded with
// (rng_seed, frame_id, superpixel id), which keeps runs reproducible.
//
// Returns nothing when |K| < 3 or every hypothesis was degenerate.
std::optional<HypothesisScore> ransac_plane(const Superpixel& sp,
                                            const CameraModel& cam,
                                            const PipelineConfig& cfg,
                                            std::string_view frame_id);

// Acceptance of the winning plane: enough inliers in absolute count or as a
// fraction of the measurements.
bool ransac_validity(const HypothesisScore& score, std::size_t k_size,
                     const PipelineConfig& cfg);

}  // namespace densify
