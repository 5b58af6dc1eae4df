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

namespace rogmap {

/// Minimal 3D vector in meters. The library deliberately avoids a linear
/// algebra dependency; only the handful of operations used by mapping and
/// the simulator are provided.
struct Vec3d {
  double x = 0.0;
  double y = 0.0;
  double z = 0.0;

  constexpr Vec3d operator+(const Vec3d& o) const { return {x + o.x, y + o.y, z + o.z}; }
  constexpr Vec3d operator-(const Vec3d& o) const { return {x - o.x, y - o.y, z - o.z}; }
  constexpr Vec3d operator*(double s) const { return {x * s, y * s, z * s}; }
  constexpr Vec3d operator/(double s) const { return {x / s, y / s, z / s}; }
  constexpr bool operator==(const Vec3d& o) const = default;

  constexpr double dot(const Vec3d& o) const { return x * o.x + y * o.y + z * o.z; }
  constexpr double squaredNorm() const { return dot(*this); }
  double norm() const { return std::sqrt(squaredNorm()); }

  constexpr Vec3d cwiseMin(const Vec3d& o) const {
    return {x < o.x ? x : o.x, y < o.y ? y : o.y, z < o.z ? z : o.z};
  }
  constexpr Vec3d cwiseMax(const Vec3d& o) const {
    return {x > o.x ? x : o.x, y > o.y ? y : o.y, z > o.z ? z : o.z};
  }

  bool allFinite() const { return std::isfinite(x) && std::isfinite(y) && std::isfinite(z); }
};

inline constexpr Vec3d operator*(double s, const Vec3d& v) { return v * s; }

inline double distance(const Vec3d& a, const Vec3d& b) { return (a - b).norm(); }

}  // namespace rogmap
