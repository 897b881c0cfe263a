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

#include <doctest.h>

#include <filesystem>
#include <fstream>

#include "densify/errors.hpp"
#include "densify/runner.hpp"

using namespace densify;
namespace fs = std::filesystem;

namespace {

SyntheticScene small_scene(const std::string& name) {
  SyntheticScene scene;
  scene.name = name;
  scene.width = 160;
  scene.height = 96;
  scene.cam = CameraModel::pinhole(100.0, 100.0, 80.0, 40.0);
  scene.scan = {0, 4, 0, 2};
  PlanarPatch near_patch;
  near_patch.plane = Plane::from_beta({0, 0, -1, 4.0}, PlaneSource::kTls);
  near_patch.polygon = {{-1, -1}, {79.5, -1}, {79.5, 96}, {-1, 96}};
  near_patch.color = {210, 60, 40};
  PlanarPatch far_patch;
  far_patch.plane = Plane::from_beta({0, 0, -1, 8.0}, PlaneSource::kTls);
  far_patch.polygon = {{-1, -1}, {160, -1}, {160, 96}, {-1, 96}};
  far_patch.color = {40, 80, 210};
  scene.patches = {near_patch, far_patch};
  return scene;
}

struct TempDir {
  fs::path path;
  explicit TempDir(const std::string& tag)
      : path(fs::temp_directory_path() /
             ("densify_runner_" + tag + "_" + std::to_string(::getpid()))) {
    fs::remove_all(path);
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
};

PipelineConfig fast_config() {
  PipelineConfig cfg;
  cfg.slic_superpixel_counts = {60};
  return cfg;
}

}  // namespace

TEST_CASE("run_complete produces maps, reports, and per-frame timing") {
  TempDir tmp("complete");
  render_scene_to_dir(small_scene("frame_a"), tmp.path / "in");
  render_scene_to_dir(small_scene("frame_b"), tmp.path / "in");

  RunOptions opts;
  opts.input_dir = tmp.path / "in";
  opts.output_dir = tmp.path / "out";
  opts.config = fast_config();
  opts.emit_error_maps = true;
  opts.emit_segmentation = true;
  const RunSummary summary = run_complete(opts);

  REQUIRE(summary.frames.size() == 2);
  CHECK(summary.frames[0].frame_id == "frame_a");
  CHECK(summary.frames[1].frame_id == "frame_b");
  REQUIRE(summary.pooled.has_value());
  CHECK(summary.pooled->mae_mm < 10.0);  // quantization-level error only
  for (const FrameResult& f : summary.frames) {
    CHECK(f.pipeline_seconds > 0.0);
    CHECK(f.report.has_value());
  }
  CHECK(fs::exists(tmp.path / "out" / "frame_a.png"));
  CHECK(fs::exists(tmp.path / "out" / "error" / "frame_a.png"));
  CHECK(fs::exists(tmp.path / "out" / "segmentation" / "frame_a.png"));
  CHECK(fs::exists(tmp.path / "out" / "metrics.txt"));
  CHECK(fs::exists(tmp.path / "out" / "timing.txt"));

  // The dense map round-trips as a valid depth PNG.
  const DepthMap dense = read_depth_png(tmp.path / "out" / "frame_a.png");
  CHECK(dense.measurement_count() == dense.size());
}

TEST_CASE("metrics report bytes are stable across reruns") {
  TempDir tmp("stable");
  render_scene_to_dir(small_scene("frame_a"), tmp.path / "in");
  RunOptions opts;
  opts.input_dir = tmp.path / "in";
  opts.output_dir = tmp.path / "out";
  opts.config = fast_config();
  const RunSummary a = run_complete(opts);
  const std::string text_a = metrics_report_text(a, opts.config);
  const RunSummary b = run_complete(opts);
  CHECK(text_a == metrics_report_text(b, opts.config));
}

TEST_CASE("fill none switches evaluation to diagnostic coverage") {
  TempDir tmp("diagnostic");
  SyntheticScene scene = small_scene("frame_a");
  scene.scan.row_step = 12;  // sparser: some superpixels stay inadmissible
  render_scene_to_dir(scene, tmp.path / "in");
  RunOptions opts;
  opts.input_dir = tmp.path / "in";
  opts.config = fast_config();
  opts.config.fill_method = FillMethod::kNone;
  opts.write_pngs = false;
  const RunSummary summary = run_complete(opts);
  REQUIRE(summary.pooled.has_value());
  CHECK(summary.pooled->coverage <= 1.0);

  // Forcing strict mode on a holey output is an error.
  opts.eval_mode = EvalMode::kStrict;
  CHECK_THROWS_AS(run_complete(opts), MissingPrediction);
}

TEST_CASE("missing inputs fail loudly") {
  TempDir tmp("errors");
  CHECK_THROWS_AS(discover_frames(tmp.path / "nowhere"), NotFound);

  // A dataset without intrinsics is rejected.
  render_scene_to_dir(small_scene("frame_a"), tmp.path / "in");
  fs::remove_all(tmp.path / "in" / "intrinsics");
  RunOptions opts;
  opts.input_dir = tmp.path / "in";
  opts.config = fast_config();
  CHECK_THROWS_AS(run_complete(opts), NotFound);
}

TEST_CASE("sweep files parse into deltas and drive the ablation table") {
  TempDir tmp("sweep");
  {
    std::ofstream sweep(tmp.path / "sweep.txt");
    sweep << "# comment\n"
          << "gray: colorspace=gray\n"
          << "coarse: slic_superpixel_counts=30, slic_iterations=3\n";
  }
  const auto deltas = parse_sweep_file(tmp.path / "sweep.txt");
  REQUIRE(deltas.size() == 2);
  CHECK(deltas[0].name == "gray");
  CHECK(deltas[1].overrides.size() == 2);
  CHECK_THROWS_AS(parse_sweep_file(tmp.path / "missing.txt"), NotFound);
  {
    std::ofstream bad(tmp.path / "bad.txt");
    bad << "no colon here\n";
  }
  CHECK_THROWS_AS(parse_sweep_file(tmp.path / "bad.txt"), ParseError);

  render_scene_to_dir(small_scene("frame_a"), tmp.path / "in");
  RunOptions opts;
  opts.input_dir = tmp.path / "in";
  opts.config = fast_config();
  const AblationTable table = run_ablation(opts, deltas);
  CHECK(table.rows.size() == 2);
  const std::string text = table.to_text();
  CHECK(text.find("baseline") != std::string::npos);
  CHECK(text.find("gray") != std::string::npos);
  CHECK(text.find("d_mae") != std::string::npos);
}

TEST_CASE("empty sweeps produce a baseline-only table") {
  TempDir tmp("baseline_only");
  render_scene_to_dir(small_scene("frame_a"), tmp.path / "in");
  RunOptions opts;
  opts.input_dir = tmp.path / "in";
  opts.config = fast_config();
  const AblationTable table = run_ablation(opts, {});
  CHECK(table.rows.empty());
  CHECK(table.baseline.report.evaluated_points > 0);
}
