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

#include "densify/config.hpp"
#include "densify/kitti_io.hpp"

namespace densify {

// Wall-clock seconds per stage of one frame.
struct StageTimings {
  double filter_s = 0.0;
  double segment_s = 0.0;
  double fit_s = 0.0;
  double interpolate_s = 0.0;
  double fuse_s = 0.0;
  double fill_s = 0.0;

  double total() const {
    return filter_s + segment_s + fit_s + interpolate_s + fuse_s + fill_s;
  }

  StageTimings& operator+=(const StageTimings& o) {
    filter_s += o.filter_s;
    segment_s += o.segment_s;
    fit_s += o.fit_s;
    interpolate_s += o.interpolate_s;
    fuse_s += o.fuse_s;
    fill_s += o.fill_s;
    return *this;
  }
};

// Full completion of one frame:
//   misalignment filter -> per segmentation resolution {SLIC, depth
//   binding, per-superpixel plane decision and interpolation} -> per-pixel
//   median fusion -> hole filling per cfg.fill_method.
//
// Measurements surviving the filter appear verbatim in the output.  The
// result is bit-identical for every worker count.
DepthMap compose_pipeline(const FrameBundle& frame, const PipelineConfig& cfg,
                          StageTimings* timings = nullptr, int threads = 1);

}  // namespace densify
