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

#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "densify/config.hpp"
#include "densify/metrics.hpp"
#include "densify/pipeline.hpp"
#include "densify/synth.hpp"

namespace densify {

struct RunOptions {
  std::filesystem::path input_dir;
  std::filesystem::path output_dir;  // empty: keep everything in memory
  PipelineConfig config;
  int threads = 0;  // 0 = all cores; DENSIFY_THREADS caps either way
  bool emit_error_maps = false;
  bool emit_segmentation = false;  // superpixel boundary overlays
  bool write_pngs = true;
  std::optional<int> max_frames;
  // Default: strict when the output is dense (fill != none), diagnostic
  // otherwise.
  std::optional<EvalMode> eval_mode;
};

struct FrameResult {
  std::string frame_id;
  StageTimings timings;
  double pipeline_seconds = 0.0;
  std::optional<ErrorReport> report;
};

struct RunSummary {
  std::vector<FrameResult> frames;  // frame-id order
  std::optional<ErrorReport> pooled;
  double mean_pipeline_seconds = 0.0;
};

// Completes every frame under input_dir (kitti_io layout).  Dense maps go
// to output_dir/<frame_id>.png, error maps to output_dir/error/.  The
// metrics report (metrics.txt) carries only deterministic content; wall
// clock timings go to the separate timing.txt.
RunSummary run_complete(const RunOptions& opts);

// metrics.txt content: config echo plus pooled metrics, stable bytes for
// identical inputs regardless of the worker count.
std::string metrics_report_text(const RunSummary& summary,
                                const PipelineConfig& cfg);
// timing.txt content: per-frame stage breakdown (not deterministic).
std::string timing_report_text(const RunSummary& summary);

struct SweepDelta {
  std::string name;
  std::vector<std::string> overrides;  // key=value applied over the baseline
};

struct AblationRow {
  std::string name;
  ErrorReport report;
  double mean_pipeline_seconds = 0.0;
};

struct AblationTable {
  AblationRow baseline;
  std::vector<AblationRow> rows;
  std::string to_text() const;  // with delta-vs-baseline columns
};

// Runs the baseline config and one run per delta over the same frames.
AblationTable run_ablation(const RunOptions& base,
                           std::span<const SweepDelta> deltas);

// Sweep file: one delta per line, "name: key=value, key=value".
std::vector<SweepDelta> parse_sweep_file(const std::filesystem::path& path);

// Built-in sweep mirroring the ablation knobs (segmentation resolutions,
// SLIC iterations, colorspace, loss refinement, convex hull).
std::vector<SweepDelta> default_sweep();

// Renders a scene into the kitti_io directory layout (image/, velodyne_raw/,
// groundtruth/, intrinsics/) so the CLI can consume synthetic scenes.
void render_scene_to_dir(const SyntheticScene& scene,
                         const std::filesystem::path& dir);

}  // namespace densify
