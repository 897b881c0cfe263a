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

#include "densify/runner.hpp"

#include <chrono>
#include <fstream>
#include <iomanip>
#include <sstream>

#include "densify/errors.hpp"
#include "densify/parallel.hpp"
#include "densify/superpixel.hpp"

namespace densify {

namespace fs = std::filesystem;

namespace {

EvalMode resolve_eval_mode(const RunOptions& opts) {
  if (opts.eval_mode) return *opts.eval_mode;
  return opts.config.fill_method == FillMethod::kNone ? EvalMode::kDiagnostic
                                                      : EvalMode::kStrict;
}

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

}  // namespace

RunSummary run_complete(const RunOptions& opts) {
  opts.config.validate();
  std::vector<FrameInputs> inputs = discover_frames(opts.input_dir);
  if (opts.max_frames && inputs.size() > static_cast<std::size_t>(*opts.max_frames)) {
    inputs.resize(static_cast<std::size_t>(*opts.max_frames));
  }

  const bool write_output = !opts.output_dir.empty() && opts.write_pngs;
  if (write_output) {
    fs::create_directories(opts.output_dir);
    if (opts.emit_error_maps) fs::create_directories(opts.output_dir / "error");
    if (opts.emit_segmentation) {
      fs::create_directories(opts.output_dir / "segmentation");
    }
  }

  const int workers = effective_threads(opts.threads);
  const int inner_threads = inputs.size() == 1 ? workers : 1;
  const EvalMode eval_mode = resolve_eval_mode(opts);

  RunSummary summary;
  summary.frames.resize(inputs.size());
  std::vector<MetricAccumulator> accumulators(inputs.size());
  std::vector<bool> has_metrics(inputs.size(), false);

  parallel_for(inputs.size(), workers, [&](std::size_t i) {
    const FrameBundle frame = load_frame(inputs[i]);
    FrameResult& result = summary.frames[i];
    result.frame_id = frame.frame_id;

    const auto t0 = std::chrono::steady_clock::now();
    const DepthMap dense =
        compose_pipeline(frame, opts.config, &result.timings, inner_threads);
    result.pipeline_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
            .count();

    if (write_output) {
      write_depth_png(dense, opts.output_dir / (frame.frame_id + ".png"));
      if (opts.emit_segmentation) {
        // SLIC is deterministic, so re-running it reproduces exactly the
        // segmentation the pipeline used for the first resolution.
        const LabImage guide = make_guide(frame.rgb, opts.config.colorspace);
        const SuperpixelMap seg =
            slic(guide, opts.config.slic_superpixel_counts.front(),
                 opts.config.slic_iterations, opts.config.slic_compactness);
        write_boundary_overlay_png(frame.rgb, seg,
                                   opts.output_dir / "segmentation" /
                                       (frame.frame_id + ".png"));
      }
    }
    if (frame.ground_truth) {
      accumulators[i].add(dense, *frame.ground_truth, eval_mode);
      has_metrics[i] = true;
      result.report = accumulators[i].report();
      if (write_output && opts.emit_error_maps) {
        write_error_map_png(dense, *frame.ground_truth,
                            opts.output_dir / "error" /
                                (frame.frame_id + ".png"));
      }
    }
  });

  MetricAccumulator pooled;
  bool any = false;
  for (std::size_t i = 0; i < accumulators.size(); ++i) {
    if (!has_metrics[i]) continue;
    pooled.merge(accumulators[i]);
    any = true;
  }
  if (any) summary.pooled = pooled.report();

  double total_s = 0.0;
  for (const FrameResult& f : summary.frames) total_s += f.pipeline_seconds;
  summary.mean_pipeline_seconds =
      summary.frames.empty() ? 0.0 : total_s / summary.frames.size();

  if (!opts.output_dir.empty()) {
    fs::create_directories(opts.output_dir);
    std::ofstream metrics(opts.output_dir / "metrics.txt");
    metrics << metrics_report_text(summary, opts.config);
    std::ofstream timing(opts.output_dir / "timing.txt");
    timing << timing_report_text(summary);
  }
  return summary;
}

std::string metrics_report_text(const RunSummary& summary,
                                const PipelineConfig& cfg) {
  std::ostringstream out;
  out << "# configuration\n" << config_to_string(cfg) << "# results\n";
  out << "frames " << summary.frames.size() << "\n";
  if (summary.pooled) {
    out << report_to_string(*summary.pooled);
  } else {
    out << "no_ground_truth 1\n";
  }
  return out.str();
}

std::string timing_report_text(const RunSummary& summary) {
  std::ostringstream out;
  out.setf(std::ios::fixed);
  out.precision(4);
  out << "frame_id total_s filter_s segment_s fit_s interpolate_s fuse_s "
         "fill_s\n";
  for (const FrameResult& f : summary.frames) {
    out << f.frame_id << " " << f.pipeline_seconds << " "
        << f.timings.filter_s << " " << f.timings.segment_s << " "
        << f.timings.fit_s << " " << f.timings.interpolate_s << " "
        << f.timings.fuse_s << " " << f.timings.fill_s << "\n";
  }
  out << "mean_pipeline_seconds " << summary.mean_pipeline_seconds << "\n";
  return out.str();
}

AblationTable run_ablation(const RunOptions& base,
                           std::span<const SweepDelta> deltas) {
  auto run_one = [&](const PipelineConfig& cfg) {
    RunOptions opts = base;
    opts.config = cfg;
    opts.write_pngs = false;
    opts.emit_error_maps = false;
    opts.output_dir.clear();
    // Partial maps from ablated settings must still be comparable.
    if (!opts.eval_mode) opts.eval_mode = EvalMode::kDiagnostic;
    return run_complete(opts);
  };

  AblationTable table;
  const RunSummary base_summary = run_one(base.config);
  if (!base_summary.pooled) {
    throw EmptyGroundTruth("run_ablation needs ground truth to compare");
  }
  table.baseline = {"baseline", *base_summary.pooled,
                    base_summary.mean_pipeline_seconds};

  for (const SweepDelta& delta : deltas) {
    PipelineConfig cfg = base.config;
    apply_overrides(cfg, delta.overrides);
    const RunSummary s = run_one(cfg);
    table.rows.push_back(
        {delta.name, *s.pooled, s.mean_pipeline_seconds});
  }
  return table;
}

std::string AblationTable::to_text() const {
  std::ostringstream out;
  out.setf(std::ios::fixed);
  out.precision(3);
  out << std::setw(28) << std::left << "parameter"
      << " mae_mm    rmse_mm   imae      irmse     time_s   "
      << "d_mae     d_rmse    d_imae    d_irmse   d_time\n";
  auto row = [&](const AblationRow& r, bool with_delta) {
    out << std::setw(28) << std::left << r.name << " " << std::setw(9)
        << r.report.mae_mm << " " << std::setw(9) << r.report.rmse_mm << " "
        << std::setw(9) << r.report.imae_per_km << " " << std::setw(9)
        << r.report.irmse_per_km << " " << std::setw(8)
        << r.mean_pipeline_seconds;
    if (with_delta) {
      auto delta = [&](double a, double b) {
        std::ostringstream d;
        d.setf(std::ios::fixed);
        d.precision(3);
        d << std::showpos << (a - b);
        return d.str();
      };
      out << " " << std::setw(9) << delta(r.report.mae_mm, baseline.report.mae_mm)
          << " " << std::setw(9)
          << delta(r.report.rmse_mm, baseline.report.rmse_mm) << " "
          << std::setw(9)
          << delta(r.report.imae_per_km, baseline.report.imae_per_km) << " "
          << std::setw(9)
          << delta(r.report.irmse_per_km, baseline.report.irmse_per_km) << " "
          << std::setw(8)
          << delta(r.mean_pipeline_seconds, baseline.mean_pipeline_seconds);
    }
    out << "\n";
  };
  row(baseline, false);
  for (const AblationRow& r : rows) row(r, true);
  return out.str();
}

std::vector<SweepDelta> parse_sweep_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw NotFound("sweep file not found: " + path.string());
  std::vector<SweepDelta> deltas;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto colon = line.find(':');
    if (colon == std::string::npos) {
      throw ParseError(path.string() + ":" + std::to_string(lineno) +
                       ": expected 'name: key=value, ...'");
    }
    SweepDelta delta;
    delta.name = trim(line.substr(0, colon));
    std::stringstream rest(line.substr(colon + 1));
    std::string item;
    while (std::getline(rest, item, ',')) {
      item = trim(item);
      if (!item.empty()) delta.overrides.push_back(item);
    }
    if (delta.name.empty() || delta.overrides.empty()) {
      throw ParseError(path.string() + ":" + std::to_string(lineno) +
                       ": empty sweep entry");
    }
    deltas.push_back(std::move(delta));
  }
  return deltas;
}

std::vector<SweepDelta> default_sweep() {
  return {
      {"maps-3", {"slic_superpixel_counts=600,1100,2000"}},
      {"slic-iter-20-gray", {"slic_iterations=20", "colorspace=gray"}},
      {"colorspace-gray", {"colorspace=gray"}},
      {"refine-off", {"refine_loss=false"}},
      {"hull-off", {"use_convex_hull=false"}},
  };
}

void render_scene_to_dir(const SyntheticScene& scene,
                         const std::filesystem::path& dir) {
  const FrameBundle frame = render(scene);
  fs::create_directories(dir / "image");
  fs::create_directories(dir / "velodyne_raw");
  fs::create_directories(dir / "groundtruth");
  fs::create_directories(dir / "intrinsics");
  write_png8_rgb(frame.rgb, dir / "image" / (frame.frame_id + ".png"));
  write_depth_png(frame.sparse,
                  dir / "velodyne_raw" / (frame.frame_id + ".png"));
  write_depth_png(*frame.ground_truth,
                  dir / "groundtruth" / (frame.frame_id + ".png"));
  std::ofstream intr(dir / "intrinsics" / (frame.frame_id + ".txt"));
  intr << std::setprecision(17);
  const Eigen::Matrix3d& m = frame.cam.m();
  const Eigen::Vector3d& p4 = frame.cam.p4();
  for (int r = 0; r < 3; ++r) {
    intr << m(r, 0) << " " << m(r, 1) << " " << m(r, 2) << " " << p4(r)
         << (r == 2 ? "\n" : " ");
  }
}

}  // namespace densify
