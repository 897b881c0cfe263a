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

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

namespace densify {

enum class Colorspace { kCielab, kGray };
enum class FillMethod { kNnJbf, kMorphological, kNone };

// Every threshold and ablation knob of the pipeline.
//
// All defaults are this project's own tuning; none of them come from an
// authoritative published source.  Units are part of the key names in the
// config file format (see docs/README): depths and distances in mm, losses
// in mm^2, angles in degrees.
struct PipelineConfig {
  // Misalignment filter (background suppression ratio; must be > 1).
  double tau_n = 1.15;
  int filter_radius_u = 2;  // neighborhood half width, px
  int filter_radius_v = 4;  // neighborhood half height, px

  // Superpixel admission.
  int tau_m_min_points = 12;

  // Interpolation angle gate, degrees.
  double tau_theta_deg = 4.0;

  // Plane validity: mean interpolation loss thresholds (mm^2 per point) and
  // the far-distance relaxation (mm).
  double tau_pi_mm2 = 12500.0;
  double tau_pi_far_mm2 = 80000.0;
  double tau_dist_mm = 30000.0;

  // RANSAC fallback.
  double tau_ransac_inlier_mm2 = 5000.0;
  int tau_abs = 10;
  double tau_rel = 0.5;
  int ransac_iterations = 200;

  // Segmentation.
  int slic_iterations = 5;
  std::vector<int> slic_superpixel_counts = {1100};
  double slic_compactness = 10.0;
  Colorspace colorspace = Colorspace::kCielab;

  // Pipeline switches.
  bool refine_loss = false;
  bool use_convex_hull = true;
  FillMethod fill_method = FillMethod::kNnJbf;

  // Hole filling (nearest-neighbor joint bilateral filter).
  int jbf_supports = 9;
  double jbf_sigma_spatial_px = 10.0;
  double jbf_sigma_color = 10.0;

  std::uint64_t rng_seed = 0;

  // Throws InvalidConfig when an invariant is violated.
  void validate() const;

  // Applies "key = value" (same keys as the config file).  Throws
  // InvalidConfig on unknown keys or unparsable values.
  void apply(const std::string& key, const std::string& value);
};

// Reads a config file: one "key = value" pair per line, '#' comments.
PipelineConfig load_config(const std::filesystem::path& path);

// Parses overrides of the form "key=value".
void apply_overrides(PipelineConfig& cfg,
                     const std::vector<std::string>& overrides);

std::string to_string(Colorspace c);
std::string to_string(FillMethod f);
Colorspace colorspace_from_string(const std::string& s);
FillMethod fill_method_from_string(const std::string& s);

// Serializes the full configuration (stable key order).
std::string config_to_string(const PipelineConfig& cfg);

}  // namespace densify
