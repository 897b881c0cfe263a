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

#include "densify/config.hpp"

#include <fstream>
#include <sstream>

#include "densify/errors.hpp"

namespace densify {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

double parse_double(const std::string& key, const std::string& v) {
  std::size_t pos = 0;
  double d = 0;
  try {
    d = std::stod(v, &pos);
  } catch (const std::exception&) {
    throw InvalidConfig("config key '" + key + "': bad number '" + v + "'");
  }
  if (pos != v.size()) {
    throw InvalidConfig("config key '" + key + "': bad number '" + v + "'");
  }
  return d;
}

long parse_int(const std::string& key, const std::string& v) {
  std::size_t pos = 0;
  long n = 0;
  try {
    n = std::stol(v, &pos);
  } catch (const std::exception&) {
    throw InvalidConfig("config key '" + key + "': bad integer '" + v + "'");
  }
  if (pos != v.size()) {
    throw InvalidConfig("config key '" + key + "': bad integer '" + v + "'");
  }
  return n;
}

bool parse_bool(const std::string& key, const std::string& v) {
  if (v == "true" || v == "1" || v == "yes" || v == "on") return true;
  if (v == "false" || v == "0" || v == "no" || v == "off") return false;
  throw InvalidConfig("config key '" + key + "': bad boolean '" + v + "'");
}

std::vector<int> parse_int_list(const std::string& key, const std::string& v) {
  std::vector<int> out;
  std::stringstream ss(v);
  std::string item;
  while (std::getline(ss, item, ',')) {
    item = trim(item);
    if (item.empty()) continue;
    out.push_back(static_cast<int>(parse_int(key, item)));
  }
  return out;
}

}  // namespace

std::string to_string(Colorspace c) {
  return c == Colorspace::kCielab ? "lab" : "gray";
}

std::string to_string(FillMethod f) {
  switch (f) {
    case FillMethod::kNnJbf:
      return "nn-jbf";
    case FillMethod::kMorphological:
      return "morph";
    case FillMethod::kNone:
      return "none";
  }
  return "none";
}

Colorspace colorspace_from_string(const std::string& s) {
  if (s == "lab" || s == "cielab") return Colorspace::kCielab;
  if (s == "gray" || s == "grey") return Colorspace::kGray;
  throw InvalidConfig("unknown colorspace '" + s + "' (use lab|gray)");
}

FillMethod fill_method_from_string(const std::string& s) {
  if (s == "nn-jbf" || s == "nn_jbf" || s == "jbf") return FillMethod::kNnJbf;
  if (s == "morph" || s == "morphological") return FillMethod::kMorphological;
  if (s == "none") return FillMethod::kNone;
  throw InvalidConfig("unknown fill method '" + s +
                      "' (use nn-jbf|morph|none)");
}

void PipelineConfig::validate() const {
  auto require = [](bool ok, const char* what) {
    if (!ok) throw InvalidConfig(std::string("invalid config: ") + what);
  };
  require(tau_n > 1.0, "tau_n must be > 1");
  require(filter_radius_u >= 0 && filter_radius_v >= 0,
          "filter radii must be >= 0");
  require(tau_m_min_points > 0, "tau_m_min_points must be > 0");
  require(tau_theta_deg > 0.0, "tau_theta_deg must be > 0");
  require(tau_pi_mm2 > 0.0, "tau_pi_mm2 must be > 0");
  require(tau_pi_far_mm2 > 0.0, "tau_pi_far_mm2 must be > 0");
  require(tau_dist_mm > 0.0, "tau_dist_mm must be > 0");
  require(tau_ransac_inlier_mm2 > 0.0, "tau_ransac_inlier_mm2 must be > 0");
  require(tau_abs > 0, "tau_abs must be > 0");
  require(tau_rel > 0.0 && tau_rel <= 1.0, "tau_rel must be in (0, 1]");
  require(ransac_iterations > 0, "ransac_iterations must be > 0");
  require(slic_iterations > 0, "slic_iterations must be > 0");
  require(!slic_superpixel_counts.empty(),
          "slic_superpixel_counts must be non-empty");
  for (int k : slic_superpixel_counts) {
    require(k > 0, "slic superpixel counts must be > 0");
  }
  require(slic_compactness > 0.0, "slic_compactness must be > 0");
  require(jbf_supports > 0, "jbf_supports must be > 0");
  require(jbf_sigma_spatial_px > 0.0, "jbf_sigma_spatial_px must be > 0");
  require(jbf_sigma_color > 0.0, "jbf_sigma_color must be > 0");
}

void PipelineConfig::apply(const std::string& key, const std::string& value) {
  const std::string v = trim(value);
  if (key == "tau_n") {
    tau_n = parse_double(key, v);
  } else if (key == "filter_radius_u") {
    filter_radius_u = static_cast<int>(parse_int(key, v));
  } else if (key == "filter_radius_v") {
    filter_radius_v = static_cast<int>(parse_int(key, v));
  } else if (key == "tau_m_min_points") {
    tau_m_min_points = static_cast<int>(parse_int(key, v));
  } else if (key == "tau_theta_deg") {
    tau_theta_deg = parse_double(key, v);
  } else if (key == "tau_pi_mm2") {
    tau_pi_mm2 = parse_double(key, v);
  } else if (key == "tau_pi_far_mm2") {
    tau_pi_far_mm2 = parse_double(key, v);
  } else if (key == "tau_dist_mm") {
    tau_dist_mm = parse_double(key, v);
  } else if (key == "tau_ransac_inlier_mm2") {
    tau_ransac_inlier_mm2 = parse_double(key, v);
  } else if (key == "tau_abs") {
    tau_abs = static_cast<int>(parse_int(key, v));
  } else if (key == "tau_rel") {
    tau_rel = parse_double(key, v);
  } else if (key == "ransac_iterations") {
    ransac_iterations = static_cast<int>(parse_int(key, v));
  } else if (key == "slic_iterations") {
    slic_iterations = static_cast<int>(parse_int(key, v));
  } else if (key == "slic_superpixel_counts") {
    slic_superpixel_counts = parse_int_list(key, v);
  } else if (key == "slic_compactness") {
    slic_compactness = parse_double(key, v);
  } else if (key == "colorspace") {
    colorspace = colorspace_from_string(v);
  } else if (key == "refine_loss") {
    refine_loss = parse_bool(key, v);
  } else if (key == "use_convex_hull") {
    use_convex_hull = parse_bool(key, v);
  } else if (key == "fill_method") {
    fill_method = fill_method_from_string(v);
  } else if (key == "jbf_supports") {
    jbf_supports = static_cast<int>(parse_int(key, v));
  } else if (key == "jbf_sigma_spatial_px") {
    jbf_sigma_spatial_px = parse_double(key, v);
  } else if (key == "jbf_sigma_color") {
    jbf_sigma_color = parse_double(key, v);
  } else if (key == "rng_seed") {
    rng_seed = static_cast<std::uint64_t>(parse_int(key, v));
  } else {
    throw InvalidConfig("unknown config key '" + key + "'");
  }
}

PipelineConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw NotFound("config file not found: " + path.string());
  PipelineConfig cfg;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw ParseError(path.string() + ":" + std::to_string(lineno) +
                       ": expected 'key = value'");
    }
    cfg.apply(trim(line.substr(0, eq)), trim(line.substr(eq + 1)));
  }
  return cfg;
}

void apply_overrides(PipelineConfig& cfg,
                     const std::vector<std::string>& overrides) {
  for (const auto& o : overrides) {
    const auto eq = o.find('=');
    if (eq == std::string::npos) {
      throw InvalidConfig("override '" + o + "' is not key=value");
    }
    cfg.apply(trim(o.substr(0, eq)), trim(o.substr(eq + 1)));
  }
}

std::string config_to_string(const PipelineConfig& cfg) {
  std::ostringstream out;
  out << "tau_n = " << cfg.tau_n << "\n"
      << "filter_radius_u = " << cfg.filter_radius_u << "\n"
      << "filter_radius_v = " << cfg.filter_radius_v << "\n"
      << "tau_m_min_points = " << cfg.tau_m_min_points << "\n"
      << "tau_theta_deg = " << cfg.tau_theta_deg << "\n"
      << "tau_pi_mm2 = " << cfg.tau_pi_mm2 << "\n"
      << "tau_pi_far_mm2 = " << cfg.tau_pi_far_mm2 << "\n"
      << "tau_dist_mm = " << cfg.tau_dist_mm << "\n"
      << "tau_ransac_inlier_mm2 = " << cfg.tau_ransac_inlier_mm2 << "\n"
      << "tau_abs = " << cfg.tau_abs << "\n"
      << "tau_rel = " << cfg.tau_rel << "\n"
      << "ransac_iterations = " << cfg.ransac_iterations << "\n"
      << "slic_iterations = " << cfg.slic_iterations << "\n";
  out << "slic_superpixel_counts = ";
  for (std::size_t i = 0; i < cfg.slic_superpixel_counts.size(); ++i) {
    if (i) out << ",";
    out << cfg.slic_superpixel_counts[i];
  }
  out << "\n"
      << "slic_compactness = " << cfg.slic_compactness << "\n"
      << "colorspace = " << to_string(cfg.colorspace) << "\n"
      << "refine_loss = " << (cfg.refine_loss ? "true" : "false") << "\n"
      << "use_convex_hull = " << (cfg.use_convex_hull ? "true" : "false")
      << "\n"
      << "fill_method = " << to_string(cfg.fill_method) << "\n"
      << "jbf_supports = " << cfg.jbf_supports << "\n"
      << "jbf_sigma_spatial_px = " << cfg.jbf_sigma_spatial_px << "\n"
      << "jbf_sigma_color = " << cfg.jbf_sigma_color << "\n"
      << "rng_seed = " << cfg.rng_seed << "\n";
  return out.str();
}

}  // namespace densify
