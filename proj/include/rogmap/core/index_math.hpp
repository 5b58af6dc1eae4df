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
#include <cstdint>
#include <stdexcept>
#include <string>

#include "rogmap/core/types.hpp"
#include "rogmap/core/vec3.hpp"

namespace rogmap {

// Pure index arithmetic for the circular-buffer window. None of these
// functions depend on the window's current center: a global index maps to
// the same buffer address for every placement of the window that contains
// it. That is what makes window sliding zero-copy.

/// World point -> global index, rounding half away from zero per axis.
inline GlobalIndex worldToGlobal(const Vec3d& p, double resolution) {
  if (!p.allFinite()) {
    throw std::invalid_argument("worldToGlobal: non-finite point");
  }
  if (!(resolution > 0.0)) {
    throw std::invalid_argument("worldToGlobal: resolution must be > 0");
  }
  return {static_cast<std::int32_t>(std::llround(p.x / resolution)),
          static_cast<std::int32_t>(std::llround(p.y / resolution)),
          static_cast<std::int32_t>(std::llround(p.z / resolution))};
}

/// Center of a cell in world coordinates.
inline Vec3d globalToWorld(const GlobalIndex& g, double resolution) {
  return {g.ix * resolution, g.iy * resolution, g.iz * resolution};
}

/// Folds a truncated remainder x in (-s, s) into [0, s-1]. `s` must be a
/// positive odd extent.
///
/// Residues that agree modulo s must land on the same value or the circular
/// buffer would alias cells, so the outer branches shift by a full period:
/// fold x into [-s/2, s/2], then offset by s/2.
inline std::int32_t normalizeResidue(std::int32_t x, std::int32_t s) {
  if (s <= 0 || s % 2 == 0) {
    throw std::invalid_argument("normalizeResidue: extent must be positive odd, got " + std::to_string(s));
  }
  const std::int32_t half = s / 2;
  if (x > half) return x - s + half;
  if (x < -half) return x + s + half;
  return x + half;
}

/// Global -> local window coordinates. Uses the truncated (sign follows
/// dividend) remainder so the residue stays in (-s, s) before folding.
inline LocalIndex globalToLocal(const GlobalIndex& g, const WindowShape& shape) {
  return {normalizeResidue(g.ix % shape.sx, shape.sx),
          normalizeResidue(g.iy % shape.sy, shape.sy),
          normalizeResidue(g.iz % shape.sz, shape.sz)};
}

/// Local window coordinates -> flat buffer offset (x-major, z fastest).
inline Address toAddress(const LocalIndex& l, const WindowShape& shape) {
  if (l.ix < 0 || l.ix >= shape.sx || l.iy < 0 || l.iy >= shape.sy || l.iz < 0 || l.iz >= shape.sz) {
    throw std::out_of_range("toAddress: local index outside window shape");
  }
  const auto offset = static_cast<std::int64_t>(l.ix) * shape.sy * shape.sz +
                      static_cast<std::int64_t>(l.iy) * shape.sz + l.iz;
  return Address{static_cast<std::size_t>(offset)};
}

inline Address globalToAddress(const GlobalIndex& g, const WindowShape& shape) {
  return toAddress(globalToLocal(g, shape), shape);
}

/// True iff g lies in the window of `shape` centered at `origin`.
inline bool inWindow(const GlobalIndex& g, const GlobalIndex& origin, const WindowShape& shape) {
  return std::abs(g.ix - origin.ix) <= shape.halfX() && std::abs(g.iy - origin.iy) <= shape.halfY() &&
         std::abs(g.iz - origin.iz) <= shape.halfZ();
}

/// Inverse of globalToLocal for the window centered at `origin`: the unique
/// in-window global index mapping to `l`.
inline GlobalIndex localToGlobal(const LocalIndex& l, const GlobalIndex& origin, const WindowShape& shape) {
  const LocalIndex lc = globalToLocal(origin, shape);
  auto axis = [](std::int32_t li, std::int32_t lci, std::int32_t oi, std::int32_t s) {
    std::int32_t diff = li - lci;  // in (-s, s); fold into [-s/2, s/2]
    const std::int32_t half = s / 2;
    if (diff > half) diff -= s;
    if (diff < -half) diff += s;
    return oi + diff;
  };
  return {axis(l.ix, lc.ix, origin.ix, shape.sx), axis(l.iy, lc.iy, origin.iy, shape.sy),
          axis(l.iz, lc.iz, origin.iz, shape.sz)};
}

}  // namespace rogmap
