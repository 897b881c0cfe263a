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

#include "densify/metrics.hpp"

#include <cmath>
#include <sstream>

#include "densify/errors.hpp"
#include "densify/types.hpp"

namespace densify {

void MetricAccumulator::add(const DepthMap& pred, const DepthMap& gt,
                            EvalMode mode) {
  if (!pred.same_size(gt)) {
    throw DimensionMismatch("evaluate: prediction and ground truth differ");
  }
  std::size_t gt_count = 0;
  std::size_t missing = 0;
  double sum_abs = 0.0, sum_sq = 0.0, sum_abs_inv = 0.0, sum_sq_inv = 0.0;
  std::size_t n = 0;
  for (std::size_t i = 0; i < gt.size(); ++i) {
    const double g_mm = gt.values()[i];
    if (g_mm <= 0.0) continue;
    ++gt_count;
    const double p_mm = pred.values()[i];
    if (p_mm <= 0.0) {
      ++missing;
      continue;
    }
    const double g = g_mm / kMmPerMeter;
    const double p = p_mm / kMmPerMeter;
    const double e = g - p;
    const double e_inv = 1.0 / g - 1.0 / p;
    sum_abs += std::abs(e);
    sum_sq += e * e;
    sum_abs_inv += std::abs(e_inv);
    sum_sq_inv += e_inv * e_inv;
    ++n;
  }
  if (gt_count == 0) {
    throw EmptyGroundTruth("evaluate: ground truth has no valid pixel");
  }
  if (mode == EvalMode::kStrict && missing > 0) {
    throw MissingPrediction(
        "evaluate: " + std::to_string(missing) +
            " ground-truth pixels have no prediction (strict mode)",
        missing);
  }
  sum_abs_m_ += sum_abs;
  sum_sq_m2_ += sum_sq;
  sum_abs_inv_ += sum_abs_inv;
  sum_sq_inv_ += sum_sq_inv;
  n_ += n;
  gt_points_ += gt_count;
}

void MetricAccumulator::merge(const MetricAccumulator& other) {
  sum_abs_m_ += other.sum_abs_m_;
  sum_sq_m2_ += other.sum_sq_m2_;
  sum_abs_inv_ += other.sum_abs_inv_;
  sum_sq_inv_ += other.sum_sq_inv_;
  n_ += other.n_;
  gt_points_ += other.gt_points_;
}

ErrorReport MetricAccumulator::report() const {
  ErrorReport r;
  r.evaluated_points = n_;
  if (n_ == 0) return r;
  const double inv_n = 1.0 / static_cast<double>(n_);
  r.mae_mm = sum_abs_m_ * inv_n * kMmPerMeter;
  r.rmse_mm = std::sqrt(sum_sq_m2_ * inv_n) * kMmPerMeter;
  // 1/m -> 1/km
  r.imae_per_km = sum_abs_inv_ * inv_n * 1000.0;
  r.irmse_per_km = std::sqrt(sum_sq_inv_ * inv_n) * 1000.0;
  r.coverage =
      gt_points_ ? static_cast<double>(n_) / static_cast<double>(gt_points_)
                 : 0.0;
  return r;
}

ErrorReport evaluate(const DepthMap& pred, const DepthMap& gt, EvalMode mode) {
  MetricAccumulator acc;
  acc.add(pred, gt, mode);
  return acc.report();
}

std::string report_to_string(const ErrorReport& report) {
  std::ostringstream out;
  out.setf(std::ios::fixed);
  out.precision(6);
  out << "mae_mm " << report.mae_mm << "\n"
      << "rmse_mm " << report.rmse_mm << "\n"
      << "imae_per_km " << report.imae_per_km << "\n"
      << "irmse_per_km " << report.irmse_per_km << "\n"
      << "evaluated_points " << report.evaluated_points << "\n"
      << "coverage_percent " << 100.0 * report.coverage << "\n";
  return out.str();
}

}  // namespace densify
