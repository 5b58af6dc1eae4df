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

#include <algorithm>
#include <cassert>
#include <cstdint>
#include <vector>

#include "rogmap/core/index_math.hpp"
#include "rogmap/core/probability.hpp"
#include "rogmap/core/types.hpp"
#include "rogmap/core/vec3.hpp"

namespace rogmap {

/// Per-cell payload. The log-odds value carries the fused occupancy
/// evidence; the counter tracks how many Occupied cells lie within the
/// inflation neighborhood (maintained incrementally by the inflation layer).
struct GridCell {
  double logOdds = 0.0;
  std::uint16_t inflationCounter = 0;
};

/// From/to classification of one batched update.
struct StateTransition {
  OccState from = OccState::Unknown;
  OccState to = OccState::Unknown;

  bool rising() const { return to == OccState::Occupied && from != OccState::Occupied; }
  bool falling() const { return from == OccState::Occupied && to != OccState::Occupied; }
  bool changed() const { return from != to; }
};

/// Fuses one frame's hit/miss counts into a cell: the per-frame increment is
/// nHit * lHit + nMiss * lMiss, added once and then clamped to
/// [lMin, lMax]. Clamping is per frame, not per ray, which is exactly what
/// makes the batched update cheaper than ray-by-ray fusion.
inline StateTransition applyBatch(GridCell& cell, std::uint32_t nHit, std::uint32_t nMiss,
                                  const ProbParams& p) {
  StateTransition t;
  t.from = stateOf(cell.logOdds, p);
  const double increment = static_cast<double>(nHit) * p.lHit + static_cast<double>(nMiss) * p.lMiss;
  cell.logOdds = std::clamp(cell.logOdds + increment, p.lMin, p.lMax);
  t.to = stateOf(cell.logOdds, p);
  return t;
}

/// Dense cell storage over the local window. One flat buffer of
/// sx*sy*sz cells addressed through the circular-buffer index math, so a
/// cell's address never changes while it stays inside the window.
///
/// Concurrency: single writer. Any number of readers may query concurrently
/// while no writer is active.
class OccupancyStore {
 public:
  OccupancyStore(const WindowShape& shape, const ProbParams& prob,
                 const GlobalIndex& center = {0, 0, 0})
      : shape_(shape), prob_(prob), center_(center), cells_(shape.cellCount()) {}

  const WindowShape& shape() const { return shape_; }
  const ProbParams& prob() const { return prob_; }
  const GlobalIndex& center() const { return center_; }
  double resolution() const { return shape_.resolution; }

  bool contains(const GlobalIndex& g) const { return inWindow(g, center_, shape_); }

  GridCell& at(const GlobalIndex& g) {
    assert(contains(g));
    return cells_[globalToAddress(g, shape_).value];
  }
  const GridCell& at(const GlobalIndex& g) const {
    assert(contains(g));
    return cells_[globalToAddress(g, shape_).value];
  }

  GridCell& atAddress(Address a) { return cells_[a.value]; }
  const GridCell& atAddress(Address a) const { return cells_[a.value]; }

  OccState stateAt(const GlobalIndex& g) const { return stateOf(at(g).logOdds, prob_); }

  /// Batched probabilistic update of one cell.
  StateTransition applyCounts(const GlobalIndex& g, std::uint32_t nHit, std::uint32_t nMiss) {
    return applyBatch(at(g), nHit, nMiss, prob_);
  }

  QueryResult query(const GlobalIndex& g) const {
    QueryResult r;
    if (!contains(g)) return r;
    const GridCell& c = at(g);
    r.inWindow = true;
    r.state = stateOf(c.logOdds, prob_);
    r.inflated = c.inflationCounter >= 1;
    return r;
  }

  QueryResult query(const Vec3d& p) const { return query(worldToGlobal(p, shape_.resolution)); }

  /// Visits every in-window cell as (GlobalIndex, GridCell&).
  template <typename Fn>
  void forEachCell(Fn&& fn) {
    const GlobalIndex lo{center_.ix - shape_.halfX(), center_.iy - shape_.halfY(), center_.iz - shape_.halfZ()};
    for (std::int32_t x = lo.ix; x < lo.ix + shape_.sx; ++x) {
      for (std::int32_t y = lo.iy; y < lo.iy + shape_.sy; ++y) {
        for (std::int32_t z = lo.iz; z < lo.iz + shape_.sz; ++z) {
          const GlobalIndex g{x, y, z};
          fn(g, cells_[globalToAddress(g, shape_).value]);
        }
      }
    }
  }

  template <typename Fn>
  void forEachCell(Fn&& fn) const {
    const_cast<OccupancyStore*>(this)->forEachCell(
        [&](const GlobalIndex& g, GridCell& c) { fn(g, static_cast<const GridCell&>(c)); });
  }

  /// World-space AABB of the window (cell volumes included).
  Vec3d windowMinCorner() const {
    const double r = shape_.resolution;
    return {(center_.ix - shape_.halfX() - 0.5) * r, (center_.iy - shape_.halfY() - 0.5) * r,
            (center_.iz - shape_.halfZ() - 0.5) * r};
  }
  Vec3d windowMaxCorner() const {
    const double r = shape_.resolution;
    return {(center_.ix + shape_.halfX() + 0.5) * r, (center_.iy + shape_.halfY() + 0.5) * r,
            (center_.iz + shape_.halfZ() + 0.5) * r};
  }

  std::size_t memoryBytes() const { return cells_.capacity() * sizeof(GridCell); }

  /// Incremented whenever a counter decrement would have gone below zero
  /// (saturates instead). Nonzero means the incremental bookkeeping and the
  /// occupancy field disagree somewhere.
  std::size_t counterUnderflows() const { return counterUnderflows_; }
  void noteCounterUnderflow() { ++counterUnderflows_; }

  // The sliding layer recenters the window and resets exited slabs; nothing
  // else may move the center.
  void setCenterUnchecked(const GlobalIndex& c) { center_ = c; }

 private:
  WindowShape shape_;
  ProbParams prob_;
  GlobalIndex center_;
  std::vector<GridCell> cells_;
  std::size_t counterUnderflows_ = 0;
};

}  // namespace rogmap
