// Copyright 2026 The rogmap authors
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

#include <cmath>
#include <fstream>
#include <map>
#include <sstream>
#include <stdexcept>
#include <string>

#include "rogmap/core/errors.hpp"
#include "rogmap/core/probability.hpp"
#include "rogmap/core/types.hpp"
#include "rogmap/core/vec3.hpp"

namespace rogmap {

/// Everything needed to construct a map. The window shape applies to the
/// sliding map; for the fixed-origin baselines it describes the full map box
/// centered at `fixedMapCenter`.
struct MapConfig {
  WindowShape shape{21, 21, 21, 0.1};
  ProbParams prob{};
  double inflationDistance = 0.2;   // meters, >= 0
  double maxRaycastDistance = 20.0; // meters, > 0
  double slideThreshold = 1.0;      // meters, >= 0; window recenters when the
                                    // robot strays farther than this
  Vec3d fixedMapCenter{0.0, 0.0, 0.0};  // baseline backends only

  void validate() const {
    if (!(inflationDistance >= 0.0)) throw std::invalid_argument("inflation_distance must be >= 0");
    if (!(maxRaycastDistance > 0.0)) throw std::invalid_argument("max_raycast_distance must be > 0");
    if (!(slideThreshold >= 0.0)) throw std::invalid_argument("slide_threshold must be >= 0");
  }
};

/// Rounds a metric extent up to an odd cell count (at least 1).
inline std::int32_t metersToOddCells(double meters, double resolution) {
  if (!(meters > 0.0)) throw std::invalid_argument("map size must be > 0 m");
  auto cells = static_cast<std::int32_t>(std::ceil(meters / resolution));
  if (cells < 1) cells = 1;
  if (cells % 2 == 0) ++cells;
  return cells;
}

namespace detail {

inline bool parseKeyValueLine(const std::string& raw, std::string& key, std::string& value) {
  std::string line = raw;
  if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
  const auto eq = line.find('=');
  if (eq == std::string::npos) {
    // Blank or comment-only line.
    for (char c : line) {
      if (!std::isspace(static_cast<unsigned char>(c))) return false;
    }
    key.clear();
    return false;
  }
  auto trim = [](std::string s) {
    const auto b = s.find_first_not_of(" \t\r");
    const auto e = s.find_last_not_of(" \t\r");
    return b == std::string::npos ? std::string{} : s.substr(b, e - b + 1);
  };
  key = trim(line.substr(0, eq));
  value = trim(line.substr(eq + 1));
  return !key.empty();
}

}  // namespace detail

/// Parses the flat `key = value` config format. Unknown keys are an error so
/// typos do not silently fall back to defaults. `#` starts a comment.
inline MapConfig loadMapConfig(std::istream& in) {
  double resolution = 0.1;
  std::int32_t sx = 21, sy = 21, sz = 21;
  MapConfig cfg;
  double pHit = cfg.prob.pHit, pMiss = cfg.prob.pMiss, pMin = cfg.prob.pMin, pMax = cfg.prob.pMax,
         pOcc = cfg.prob.pOcc, pFree = cfg.prob.pFree;

  std::string line, key, value;
  long lineNo = 0;
  while (std::getline(in, line)) {
    ++lineNo;
    if (!detail::parseKeyValueLine(line, key, value)) {
      if (!key.empty()) throw ParseError("config: malformed line", lineNo);
      continue;
    }
    try {
      if (key == "resolution") resolution = std::stod(value);
      else if (key == "map_size_x") sx = std::stoi(value);
      else if (key == "map_size_y") sy = std::stoi(value);
      else if (key == "map_size_z") sz = std::stoi(value);
      else if (key == "p_hit") pHit = std::stod(value);
      else if (key == "p_miss") pMiss = std::stod(value);
      else if (key == "p_min") pMin = std::stod(value);
      else if (key == "p_max") pMax = std::stod(value);
      else if (key == "p_occ") pOcc = std::stod(value);
      else if (key == "p_free") pFree = std::stod(value);
      else if (key == "inflation_distance") cfg.inflationDistance = std::stod(value);
      else if (key == "max_raycast_distance") cfg.maxRaycastDistance = std::stod(value);
      else if (key == "slide_threshold") cfg.slideThreshold = std::stod(value);
      else if (key == "fixed_center_x") cfg.fixedMapCenter.x = std::stod(value);
      else if (key == "fixed_center_y") cfg.fixedMapCenter.y = std::stod(value);
      else if (key == "fixed_center_z") cfg.fixedMapCenter.z = std::stod(value);
      else throw ParseError("config: unknown key '" + key + "'", lineNo);
    } catch (const std::invalid_argument&) {
      throw ParseError("config: bad value for '" + key + "'", lineNo);
    }
  }
  cfg.shape = WindowShape(sx, sy, sz, resolution);
  cfg.prob = ProbParams(pHit, pMiss, pMin, pMax, pOcc, pFree);
  cfg.validate();
  return cfg;
}

inline MapConfig loadMapConfigFile(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("config: cannot open '" + path + "'", 0);
  return loadMapConfig(in);
}

inline void saveMapConfig(const MapConfig& cfg, std::ostream& out) {
  out << "resolution = " << cfg.shape.resolution << "\n"
      << "map_size_x = " << cfg.shape.sx << "\n"
      << "map_size_y = " << cfg.shape.sy << "\n"
      << "map_size_z = " << cfg.shape.sz << "\n"
      << "p_hit = " << cfg.prob.pHit << "\n"
      << "p_miss = " << cfg.prob.pMiss << "\n"
      << "p_min = " << cfg.prob.pMin << "\n"
      << "p_max = " << cfg.prob.pMax << "\n"
      << "p_occ = " << cfg.prob.pOcc << "\n"
      << "p_free = " << cfg.prob.pFree << "\n"
      << "inflation_distance = " << cfg.inflationDistance << "\n"
      << "max_raycast_distance = " << cfg.maxRaycastDistance << "\n"
      << "slide_threshold = " << cfg.slideThreshold << "\n"
      << "fixed_center_x = " << cfg.fixedMapCenter.x << "\n"
      << "fixed_center_y = " << cfg.fixedMapCenter.y << "\n"
      << "fixed_center_z = " << cfg.fixedMapCenter.z << "\n";
}

}  // namespace rogmap
