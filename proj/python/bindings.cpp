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

#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <map>
#include <string>

#include "densify/artifact_filter.hpp"
#include "densify/color.hpp"
#include "densify/config.hpp"
#include "densify/errors.hpp"
#include "densify/fusion.hpp"
#include "densify/kitti_io.hpp"
#include "densify/metrics.hpp"
#include "densify/pipeline.hpp"
#include "densify/plane_fit.hpp"
#include "densify/superpixel.hpp"
#include "densify/synth.hpp"

namespace py = pybind11;

namespace {

using densify::CameraModel;
using densify::DepthMap;
using densify::ImageU8;
using densify::PipelineConfig;

using ArrayF64 = py::array_t<double, py::array::c_style | py::array::forcecast>;
using ArrayU8 = py::array_t<std::uint8_t, py::array::c_style | py::array::forcecast>;

DepthMap depth_from_array(const ArrayF64& arr, const char* name) {
  if (arr.ndim() != 2) {
    throw py::value_error(std::string(name) + " must be a HxW array");
  }
  DepthMap map(static_cast<int>(arr.shape(1)), static_cast<int>(arr.shape(0)));
  const double* data = arr.data();
  std::copy(data, data + map.size(), map.values().begin());
  return map;
}

ArrayF64 depth_to_array(const DepthMap& map) {
  ArrayF64 out({static_cast<py::ssize_t>(map.height()),
                static_cast<py::ssize_t>(map.width())});
  std::copy(map.values().begin(), map.values().end(), out.mutable_data());
  return out;
}

ImageU8 rgb_from_array(const ArrayU8& arr) {
  if (arr.ndim() != 3 || arr.shape(2) != 3) {
    throw py::value_error("rgb must be a HxWx3 uint8 array");
  }
  ImageU8 img;
  img.height = static_cast<int>(arr.shape(0));
  img.width = static_cast<int>(arr.shape(1));
  img.data.assign(arr.data(), arr.data() + arr.size());
  return img;
}

CameraModel camera_from_array(const ArrayF64& p) {
  Eigen::Matrix<double, 3, 4> proj = Eigen::Matrix<double, 3, 4>::Zero();
  if (p.ndim() == 2 && p.shape(0) == 3 && p.shape(1) == 4) {
    for (int r = 0; r < 3; ++r) {
      for (int c = 0; c < 4; ++c) proj(r, c) = p.at(r, c);
    }
  } else if (p.ndim() == 2 && p.shape(0) == 3 && p.shape(1) == 3) {
    for (int r = 0; r < 3; ++r) {
      for (int c = 0; c < 3; ++c) proj(r, c) = p.at(r, c);
    }
  } else {
    throw py::value_error("projection must be 3x4 or 3x3");
  }
  return CameraModel::from_projection(proj);
}

PipelineConfig config_from_overrides(
    const std::map<std::string, std::string>& overrides) {
  PipelineConfig cfg;
  for (const auto& [key, value] : overrides) cfg.apply(key, value);
  cfg.validate();
  return cfg;
}

py::dict report_to_dict(const densify::ErrorReport& r) {
  py::dict d;
  d["mae_mm"] = r.mae_mm;
  d["rmse_mm"] = r.rmse_mm;
  d["imae_per_km"] = r.imae_per_km;
  d["irmse_per_km"] = r.irmse_per_km;
  d["evaluated_points"] = r.evaluated_points;
  d["coverage"] = r.coverage;
  return d;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Deterministic guided LiDAR depth map completion";
  m.attr("__version__") = "0.1.0";

  py::register_exception<densify::Error>(m, "DensifyError",
                                         PyExc_RuntimeError);

  m.def(
      "complete",
      [](const ArrayU8& rgb, const ArrayF64& sparse_mm,
         const ArrayF64& projection,
         const std::map<std::string, std::string>& config,
         const std::string& frame_id) {
        densify::FrameBundle frame;
        frame.rgb = rgb_from_array(rgb);
        frame.sparse = depth_from_array(sparse_mm, "sparse_mm");
        frame.cam = camera_from_array(projection);
        frame.frame_id = frame_id;
        if (frame.rgb.width != frame.sparse.width() ||
            frame.rgb.height != frame.sparse.height()) {
          throw py::value_error("rgb and sparse_mm sizes differ");
        }
        const PipelineConfig cfg = config_from_overrides(config);
        DepthMap out;
        {
          py::gil_scoped_release release;
          out = densify::compose_pipeline(frame, cfg);
        }
        return depth_to_array(out);
      },
      py::arg("rgb"), py::arg("sparse_mm"), py::arg("projection"),
      py::arg("config") = std::map<std::string, std::string>{},
      py::arg("frame_id") = "frame",
      "Densify one frame. Depths are millimeters, 0 = missing; config maps "
      "config-file keys to values, e.g. {'fill_method': 'none'}.");

  m.def(
      "evaluate",
      [](const ArrayF64& pred_mm, const ArrayF64& gt_mm, bool strict) {
        const DepthMap pred = depth_from_array(pred_mm, "pred_mm");
        const DepthMap gt = depth_from_array(gt_mm, "gt_mm");
        return report_to_dict(densify::evaluate(
            pred, gt,
            strict ? densify::EvalMode::kStrict
                   : densify::EvalMode::kDiagnostic));
      },
      py::arg("pred_mm"), py::arg("gt_mm"), py::arg("strict") = true,
      "MAE/RMSE in mm and iMAE/iRMSE in 1/km over pixels with ground truth.");

  m.def(
      "suppress_misalignment",
      [](const ArrayF64& sparse_mm, double tau_n, int radius_u, int radius_v) {
        return depth_to_array(densify::suppress_misalignment(
            depth_from_array(sparse_mm, "sparse_mm"), tau_n,
            {radius_u, radius_v}));
      },
      py::arg("sparse_mm"), py::arg("tau_n") = 1.15, py::arg("radius_u") = 2,
      py::arg("radius_v") = 4,
      "Remove background points projected next to foreground measurements.");

  m.def(
      "slic_labels",
      [](const ArrayU8& rgb, int k, int iterations, double compactness,
         const std::string& colorspace) {
        const densify::LabImage guide = densify::make_guide(
            rgb_from_array(rgb), densify::colorspace_from_string(colorspace));
        const densify::SuperpixelMap map =
            densify::slic(guide, k, iterations, compactness);
        py::array_t<std::int32_t> out(
            {static_cast<py::ssize_t>(map.height),
             static_cast<py::ssize_t>(map.width)});
        std::copy(map.labels.begin(), map.labels.end(), out.mutable_data());
        return out;
      },
      py::arg("rgb"), py::arg("k"), py::arg("iterations") = 5,
      py::arg("compactness") = 10.0, py::arg("colorspace") = "lab",
      "SLIC oversegmentation label image (deterministic).");

  m.def(
      "fit_plane_tls",
      [](const ArrayF64& points) {
        if (points.ndim() != 2 || points.shape(1) != 3) {
          throw py::value_error("points must be Nx3 (meters)");
        }
        std::vector<densify::Point3> pts(points.shape(0));
        for (py::ssize_t i = 0; i < points.shape(0); ++i) {
          pts[i] = {points.at(i, 0), points.at(i, 1), points.at(i, 2)};
        }
        const densify::Plane p = densify::fit_tls(pts);
        return py::make_tuple(p.pi0, p.pi1, p.pi2, p.pi3);
      },
      py::arg("points"),
      "Total least squares plane (pi0, pi1, pi2, pi3), unit normal.");

  m.def(
      "median_fuse",
      [](const std::vector<ArrayF64>& maps) {
        std::vector<DepthMap> depth_maps;
        depth_maps.reserve(maps.size());
        for (const auto& m : maps) {
          depth_maps.push_back(depth_from_array(m, "maps[i]"));
        }
        return depth_to_array(densify::median_fuse(depth_maps));
      },
      py::arg("maps"),
      "Per-pixel median across maps; missing (0) entries are excluded.");

  m.def(
      "read_depth_png",
      [](const std::string& path) {
        return depth_to_array(densify::read_depth_png(path));
      },
      py::arg("path"), "Read a 16-bit depth PNG into a float64 mm array.");

  m.def(
      "write_depth_png",
      [](const ArrayF64& depth_mm, const std::string& path) {
        densify::write_depth_png(depth_from_array(depth_mm, "depth_mm"),
                                 path);
      },
      py::arg("depth_mm"), py::arg("path"),
      "Write a float64 mm array as a 16-bit depth PNG.");

  m.def(
      "render_scene",
      [](const std::string& path) {
        const densify::SyntheticScene scene = densify::load_scene(path);
        const densify::FrameBundle frame = densify::render(scene);
        py::dict d;
        py::array_t<std::uint8_t> rgb(
            {static_cast<py::ssize_t>(frame.rgb.height),
             static_cast<py::ssize_t>(frame.rgb.width),
             static_cast<py::ssize_t>(3)});
        std::copy(frame.rgb.data.begin(), frame.rgb.data.end(),
                  rgb.mutable_data());
        d["rgb"] = rgb;
        d["sparse_mm"] = depth_to_array(frame.sparse);
        d["ground_truth_mm"] = depth_to_array(*frame.ground_truth);
        ArrayF64 proj({static_cast<py::ssize_t>(3),
                       static_cast<py::ssize_t>(4)});
        for (int r = 0; r < 3; ++r) {
          for (int c = 0; c < 3; ++c) {
            proj.mutable_at(r, c) = frame.cam.m()(r, c);
          }
          proj.mutable_at(r, 3) = frame.cam.p4()(r);
        }
        d["projection"] = proj;
        d["frame_id"] = frame.frame_id;
        return d;
      },
      py::arg("path"), "Render a synthetic scene description file.");

  m.def(
      "default_config",
      []() {
        py::dict d;
        std::istringstream text(densify::config_to_string(PipelineConfig{}));
        std::string line;
        while (std::getline(text, line)) {
          const auto eq = line.find(" = ");
          if (eq == std::string::npos) continue;
          d[py::str(line.substr(0, eq))] = line.substr(eq + 3);
        }
        return d;
      },
      "All config keys with their default values, as strings.");
}
