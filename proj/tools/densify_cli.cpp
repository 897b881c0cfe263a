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

#include <CLI11.hpp>
#include <iostream>

#include "densify/errors.hpp"
#include "densify/runner.hpp"

namespace {

using densify::PipelineConfig;

// Flags shared by `complete` and `ablate`; CLI values override config-file
// values, which override the built-in defaults.
struct ConfigFlags {
  std::string config_path;
  std::string fill;
  std::string colorspace;
  int slic_iters = -1;
  std::string resolutions;
  bool refine = false;
  bool no_refine = false;
  bool no_hull = false;
  long long seed = -1;
  std::vector<std::string> overrides;

  void attach(CLI::App* app) {
    app->add_option("--config", config_path, "Config file (key = value)");
    app->add_option("--fill", fill, "Hole fill: nn-jbf|morph|none");
    app->add_option("--colorspace", colorspace, "Guide colorspace: lab|gray");
    app->add_option("--slic-iters", slic_iters, "SLIC iterations");
    app->add_option("--resolutions", resolutions,
                    "Superpixel counts, comma separated (one map each)");
    app->add_flag("--refine", refine, "Enable interpolation-loss refinement");
    app->add_flag("--no-refine", no_refine, "Disable refinement");
    app->add_flag("--no-hull", no_hull, "Disable the convex hull fallback");
    app->add_option("--seed", seed, "RNG seed for sampled RANSAC");
    app->add_option("--set", overrides,
                    "Extra key=value override (repeatable)");
  }

  PipelineConfig build() const {
    PipelineConfig cfg;
    if (!config_path.empty()) cfg = densify::load_config(config_path);
    if (!fill.empty()) cfg.apply("fill_method", fill);
    if (!colorspace.empty()) cfg.apply("colorspace", colorspace);
    if (slic_iters > 0) cfg.slic_iterations = slic_iters;
    if (!resolutions.empty()) cfg.apply("slic_superpixel_counts", resolutions);
    if (refine) cfg.refine_loss = true;
    if (no_refine) cfg.refine_loss = false;
    if (no_hull) cfg.use_convex_hull = false;
    if (seed >= 0) cfg.rng_seed = static_cast<std::uint64_t>(seed);
    densify::apply_overrides(cfg, overrides);
    cfg.validate();
    return cfg;
  }
};

int run(int argc, char** argv) {
  CLI::App app{"Deterministic guided LiDAR depth map completion"};
  app.require_subcommand(1);

  // --- complete ---
  auto* complete = app.add_subcommand(
      "complete", "Densify every frame of a dataset directory");
  std::string input_dir, output_dir;
  complete->add_option("input", input_dir, "Dataset directory")->required();
  complete->add_option("output", output_dir, "Output directory")->required();
  ConfigFlags complete_flags;
  complete_flags.attach(complete);
  int threads = 0;
  int max_frames = 0;
  bool emit_error_maps = false;
  bool strict_eval = false;
  complete->add_option("--threads", threads, "Worker threads (0 = all cores)");
  complete->add_option("--max-frames", max_frames, "Process first N frames");
  bool emit_segmentation = false;
  complete->add_flag("--emit-error-maps", emit_error_maps,
                     "Write false-color error maps (needs ground truth)");
  complete->add_flag("--emit-segmentation", emit_segmentation,
                     "Write superpixel boundary overlays");
  complete->add_flag("--strict-eval", strict_eval,
                     "Fail when a ground-truth pixel has no prediction");

  // --- ablate ---
  auto* ablate = app.add_subcommand(
      "ablate", "Metric/runtime impact of config deltas vs a baseline");
  std::string ablate_input, sweep_path, table_path;
  ablate->add_option("input", ablate_input, "Dataset directory")->required();
  ConfigFlags ablate_flags;
  ablate_flags.attach(ablate);
  int ablate_threads = 0;
  int ablate_max_frames = 0;
  ablate->add_option("--sweep", sweep_path,
                     "Sweep file (name: key=value, ...); built-in when unset");
  ablate->add_option("--output", table_path, "Also write the table here");
  ablate->add_option("--threads", ablate_threads, "Worker threads");
  ablate->add_option("--max-frames", ablate_max_frames,
                     "Process first N frames");

  // --- render ---
  auto* render = app.add_subcommand(
      "render", "Render synthetic scene files into a dataset directory");
  std::vector<std::string> scene_paths;
  std::string render_output;
  render->add_option("scenes", scene_paths, "Scene description files")
      ->required();
  render->add_option("--output", render_output, "Dataset directory")
      ->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  }

  if (complete->parsed()) {
    densify::RunOptions opts;
    opts.input_dir = input_dir;
    opts.output_dir = output_dir;
    opts.config = complete_flags.build();
    opts.threads = threads;
    opts.emit_error_maps = emit_error_maps;
    opts.emit_segmentation = emit_segmentation;
    if (max_frames > 0) opts.max_frames = max_frames;
    if (strict_eval) opts.eval_mode = densify::EvalMode::kStrict;
    std::cerr << "completing frames under " << input_dir << "\n";
    const densify::RunSummary summary = densify::run_complete(opts);
    std::cerr << "frames: " << summary.frames.size()
              << ", mean pipeline time: " << summary.mean_pipeline_seconds
              << " s\n";
    if (summary.pooled) {
      std::cerr << densify::report_to_string(*summary.pooled);
    } else {
      std::cerr << "no ground truth found; metrics skipped\n";
    }
    std::cerr << "report: " << (opts.output_dir / "metrics.txt").string()
              << "\n";
    return 0;
  }

  if (ablate->parsed()) {
    densify::RunOptions opts;
    opts.input_dir = ablate_input;
    opts.config = ablate_flags.build();
    opts.threads = ablate_threads;
    if (ablate_max_frames > 0) opts.max_frames = ablate_max_frames;
    const std::vector<densify::SweepDelta> deltas =
        sweep_path.empty() ? densify::default_sweep()
                           : densify::parse_sweep_file(sweep_path);
    std::cerr << "running " << (deltas.size() + 1) << " configurations\n";
    const densify::AblationTable table = densify::run_ablation(opts, deltas);
    const std::string text = table.to_text();
    std::cout << text;
    if (!table_path.empty()) {
      std::ofstream out(table_path);
      out << text;
    }
    return 0;
  }

  if (render->parsed()) {
    for (const std::string& path : scene_paths) {
      const densify::SyntheticScene scene = densify::load_scene(path);
      densify::render_scene_to_dir(scene, render_output);
      std::cerr << "rendered " << scene.name << " into " << render_output
                << "\n";
    }
    return 0;
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run(argc, argv);
  } catch (const densify::IoError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const densify::DimensionMismatch& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const densify::EmptyGroundTruth& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const densify::EmptyInput& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const densify::MissingPrediction& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 2;
  }
}
