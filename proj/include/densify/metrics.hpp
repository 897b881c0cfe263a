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

#include <cstddef>
#include <string>

#include "densify/depth_map.hpp"

namespace densify {

// The four depth-completion error metrics.  MAE/RMSE in mm; the inverse
// metrics weight near-range errors more and are reported in 1/km.
struct ErrorReport {
  double mae_mm = 0.0;
  double rmse_mm = 0.0;
  double imae_per_km = 0.0;
  double irmse_per_km = 0.0;
  std::size_t evaluated_points = 0;
  // Fraction of ground-truth pixels with a prediction (diagnostic mode).
  double coverage = 1.0;
};

enum class EvalMode {
  kStrict,      // missing prediction on a ground-truth pixel is an error
  kDiagnostic,  // skip such pixels and report coverage
};

// Pixel-pooled accumulation so that a dataset-level metric equals the
// metric over the concatenated pixel errors (which, for RMSE, is not the
// mean of the per-frame RMSEs).
class MetricAccumulator {
 public:
  // Throws DimensionMismatch / EmptyGroundTruth / MissingPrediction.
  void add(const DepthMap& pred, const DepthMap& gt, EvalMode mode);

  // Folds another accumulator in; callers merge in a fixed order to keep
  // pooled results identical across scheduling.
  void merge(const MetricAccumulator& other);

  ErrorReport report() const;
  std::size_t evaluated_points() const { return n_; }

 private:
  double sum_abs_m_ = 0.0;
  double sum_sq_m2_ = 0.0;
  double sum_abs_inv_ = 0.0;  // 1/m
  double sum_sq_inv_ = 0.0;
  std::size_t n_ = 0;
  std::size_t gt_points_ = 0;
};

ErrorReport evaluate(const DepthMap& pred, const DepthMap& gt,
                     EvalMode mode = EvalMode::kStrict);

// One metric per line, machine readable.
std::string report_to_string(const ErrorReport& report);

}  // namespace densify
