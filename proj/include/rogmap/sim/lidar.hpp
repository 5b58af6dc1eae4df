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

#include <numbers>
#include <random>
#include <stdexcept>

#include "rogmap/raycast.hpp"
#include "rogmap/sim/scene.hpp"

namespace rogmap::sim {

enum class RayPattern { SphericalFibonacci, UniformRandom };

struct SimLidarConfig {
  std::size_t raysPerScan = 1000;
  double maxRange = 10.0;
  RayPattern pattern = RayPattern::SphericalFibonacci;
  bool emitMaxRangePoints = false;  // rays with no hit report a point at max range
};

/// Direction k of n on the Fibonacci sphere: near-uniform, deterministic.
inline Vec3d fibonacciDirection(std::size_t k, std::size_t n) {
  const double golden = std::numbers::pi * (3.0 - std::sqrt(5.0));
  const double z = 1.0 - (2.0 * k + 1.0) / static_cast<double>(n);
  const double rho = std::sqrt(std::max(0.0, 1.0 - z * z));
  const double phi = golden * static_cast<double>(k);
  return {rho * std::cos(phi), rho * std::sin(phi), z};
}

/// Ideal LiDAR: fires cfg.raysPerScan rays from `sensor` and returns the
/// nearest primitive intersection per ray. Rays with no hit within range
/// produce no point unless emitMaxRangePoints is set. Deterministic given
/// the rng state.
inline Scan simulateScan(const Scene& scene, const Vec3d& sensor, const SimLidarConfig& cfg,
                         std::mt19937_64& rng, double timestamp = 0.0) {
  if (cfg.raysPerScan == 0) throw std::invalid_argument("simulateScan: raysPerScan must be > 0");
  if (pointInsideAnyPrimitive(scene, sensor)) {
    throw std::invalid_argument("simulateScan: sensor inside a primitive");
  }

  Scan scan;
  scan.origin = sensor;
  scan.timestamp = timestamp;
  scan.points.reserve(cfg.raysPerScan);
  std::normal_distribution<double> gauss(0.0, 1.0);

  for (std::size_t k = 0; k < cfg.raysPerScan; ++k) {
    Vec3d dir;
    if (cfg.pattern == RayPattern::SphericalFibonacci) {
      dir = fibonacciDirection(k, cfg.raysPerScan);
    } else {
      do {
        dir = {gauss(rng), gauss(rng), gauss(rng)};
      } while (dir.squaredNorm() < 1e-12);
      dir = dir / dir.norm();
    }
    const std::optional<double> t = raySceneIntersect(scene, sensor, dir, cfg.maxRange);
    if (t) {
      scan.points.push_back(sensor + dir * *t);
    } else if (cfg.emitMaxRangePoints) {
      scan.points.push_back(sensor + dir * cfg.maxRange);
    }
  }
  return scan;
}

}  // namespace rogmap::sim
