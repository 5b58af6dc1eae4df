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

#include <cstdint>
#include <vector>

#include "rogmap/inflation.hpp"
#include "rogmap/occupancy_store.hpp"

namespace rogmap {

/// The window recenters only when the robot strays strictly farther than
/// the threshold from the current window center.
inline bool shouldSlide(const Vec3d& robot, const Vec3d& windowCenter, double threshold) {
  if (!robot.allFinite() || !windowCenter.allFinite()) {
    throw std::invalid_argument("shouldSlide: non-finite position");
  }
  return distance(robot, windowCenter) > threshold;
}

struct SlideReport {
  GlobalIndex oldCenter;
  GlobalIndex newCenter;
  std::size_t cellsReset = 0;
  std::uint64_t counterOps = 0;  // decrement-on-exit plus admit repair

  bool slid() const { return !(oldCenter == newCenter); }
};

namespace detail {

struct Range {
  std::int32_t lo = 0;
  std::int32_t hi = -1;  // inclusive; lo > hi means empty

  bool empty() const { return lo > hi; }
  bool contains(std::int32_t v) const { return v >= lo && v <= hi; }
};

inline Range axisRange(std::int32_t center, std::int32_t half) { return {center - half, center + half}; }

inline Range intersect(const Range& a, const Range& b) {
  return {std::max(a.lo, b.lo), std::min(a.hi, b.hi)};
}

/// The part of `a` not covered by `b`, for equal-length windows: a single
/// interval (empty when the windows coincide, all of `a` when disjoint).
inline Range subtract(const Range& a, const Range& b) {
  if (b.lo > a.lo) return {a.lo, std::min(a.hi, b.lo - 1)};
  if (b.lo < a.lo) return {std::max(a.lo, b.hi + 1), a.hi};
  return {0, -1};
}

struct Box {
  Range x, y, z;
  bool empty() const { return x.empty() || y.empty() || z.empty(); }
  bool contains(const GlobalIndex& g) const { return x.contains(g.ix) && y.contains(g.iy) && z.contains(g.iz); }
};

template <typename Fn>
void forEachInBox(const Box& b, Fn&& fn) {
  if (b.empty()) return;
  for (std::int32_t ix = b.x.lo; ix <= b.x.hi; ++ix) {
    for (std::int32_t iy = b.y.lo; iy <= b.y.hi; ++iy) {
      for (std::int32_t iz = b.z.lo; iz <= b.z.hi; ++iz) {
        fn(GlobalIndex{ix, iy, iz});
      }
    }
  }
}

/// Decomposes oldBox minus newBox (equal extents) into at most three
/// disjoint axis-aligned slabs.
inline std::vector<Box> slabDecomposition(const Box& oldBox, const Box& newBox) {
  std::vector<Box> slabs;
  const Box sx{subtract(oldBox.x, newBox.x), oldBox.y, oldBox.z};
  const Box sy{intersect(oldBox.x, newBox.x), subtract(oldBox.y, newBox.y), oldBox.z};
  const Box sz{intersect(oldBox.x, newBox.x), intersect(oldBox.y, newBox.y), subtract(oldBox.z, newBox.z)};
  for (const Box& s : {sx, sy, sz}) {
    if (!s.empty()) slabs.push_back(s);
  }
  return slabs;
}

inline Box windowBox(const GlobalIndex& center, const WindowShape& shape) {
  return {axisRange(center.ix, shape.halfX()), axisRange(center.iy, shape.halfY()),
          axisRange(center.iz, shape.halfZ())};
}

inline Box dilate(const Box& b, std::int32_t k) {
  return {{b.x.lo - k, b.x.hi + k}, {b.y.lo - k, b.y.hi + k}, {b.z.lo - k, b.z.hi + k}};
}

inline Box clip(const Box& b, const Box& to) {
  return {intersect(b.x, to.x), intersect(b.y, to.y), intersect(b.z, to.z)};
}

}  // namespace detail

/// Recenters the window at the cell containing `newRobotPos`.
///
/// Retained cells (old window intersect new window) keep their log-odds,
/// counters and buffer addresses untouched; only the exited slabs are
/// visited. Counter bookkeeping across the move:
///   - every exited Occupied cell first withdraws its +1 from retained
///     neighbors, then the exited slabs are cleared to (log-odds 0,
///     counter 0) and become the storage of the admitted slabs;
///   - admitted cells then collect +1 from every retained Occupied cell
///     within the inflation ball, restoring the counter invariant exactly.
///
/// Must run with exclusive access; readers never see a half-slid map.
inline SlideReport slideTo(const Vec3d& newRobotPos, OccupancyStore& store, const OffsetTable& table) {
  const WindowShape& shape = store.shape();
  SlideReport report;
  report.oldCenter = store.center();
  report.newCenter = worldToGlobal(newRobotPos, shape.resolution);
  if (report.newCenter == report.oldCenter) return report;

  const detail::Box oldBox = detail::windowBox(report.oldCenter, shape);
  const detail::Box newBox = detail::windowBox(report.newCenter, shape);
  const std::vector<detail::Box> exitedSlabs = detail::slabDecomposition(oldBox, newBox);

  // Withdraw counter contributions of exited Occupied cells from retained
  // neighbors. Admitted cells are rebuilt from scratch below, so only
  // cells present in both windows need the decrement.
  std::vector<GlobalIndex> exitedOccupied;
  for (const detail::Box& slab : exitedSlabs) {
    detail::forEachInBox(slab, [&](const GlobalIndex& g) {
      if (stateOf(store.atAddress(globalToAddress(g, shape)).logOdds, store.prob()) == OccState::Occupied) {
        exitedOccupied.push_back(g);
      }
    });
  }
  for (const GlobalIndex& m : exitedOccupied) {
    for (const GlobalIndex& p : table.offsets) {
      const GlobalIndex n = m + p;
      if (!newBox.contains(n) || !oldBox.contains(n)) continue;
      GridCell& cell = store.atAddress(globalToAddress(n, shape));
      if (cell.inflationCounter == 0) {
        assert(!"inflation counter underflow during slide");
        store.noteCounterUnderflow();
      } else {
        --cell.inflationCounter;
      }
      ++report.counterOps;
    }
  }

  // Clear the exited slabs. Their buffer addresses are exactly the storage
  // of the admitted slabs, so this also initializes the admitted cells.
  for (const detail::Box& slab : exitedSlabs) {
    detail::forEachInBox(slab, [&](const GlobalIndex& g) {
      store.atAddress(globalToAddress(g, shape)) = GridCell{};
      ++report.cellsReset;
    });
  }

  store.setCenterUnchecked(report.newCenter);

  // Admit repair: every retained Occupied cell within the inflation ball of
  // an admitted slab contributes +1 to the admitted cells it covers. Each
  // (occupied cell, admitted cell) pair is visited once because the slabs
  // are disjoint and targets are restricted to the slab being repaired.
  const std::vector<detail::Box> admittedSlabs = detail::slabDecomposition(newBox, oldBox);
  for (const detail::Box& slab : admittedSlabs) {
    const detail::Box sources = detail::clip(detail::dilate(slab, table.maxAbsOffset), newBox);
    detail::forEachInBox(sources, [&](const GlobalIndex& m) {
      if (stateOf(store.atAddress(globalToAddress(m, shape)).logOdds, store.prob()) != OccState::Occupied) return;
      for (const GlobalIndex& p : table.offsets) {
        const GlobalIndex n = m + p;
        if (!slab.contains(n)) continue;
        GridCell& cell = store.atAddress(globalToAddress(n, shape));
        ++cell.inflationCounter;
        ++report.counterOps;
      }
    });
  }
  return report;
}

}  // namespace rogmap
