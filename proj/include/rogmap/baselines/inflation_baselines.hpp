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
#include <span>
#include <vector>

#include "rogmap/inflation.hpp"
#include "rogmap/occupancy_store.hpp"
#include "rogmap/raycast.hpp"

namespace rogmap::baselines {

/// Inclusive cell-index bounding box, growable from touched cells.
struct CellAabb {
  GlobalIndex lo;
  GlobalIndex hi;
  bool valid = false;

  void expand(const GlobalIndex& g) {
    if (!valid) {
      lo = hi = g;
      valid = true;
      return;
    }
    lo.ix = std::min(lo.ix, g.ix);
    lo.iy = std::min(lo.iy, g.iy);
    lo.iz = std::min(lo.iz, g.iz);
    hi.ix = std::max(hi.ix, g.ix);
    hi.iy = std::max(hi.iy, g.iy);
    hi.iz = std::max(hi.iz, g.iz);
  }

  CellAabb dilated(std::int32_t k) const {
    if (!valid) return *this;
    return {{lo.ix - k, lo.iy - k, lo.iz - k}, {hi.ix + k, hi.iy + k, hi.iz + k}, true};
  }

  bool contains(const GlobalIndex& g) const {
    return valid && g.ix >= lo.ix && g.ix <= hi.ix && g.iy >= lo.iy && g.iy <= hi.iy && g.iz >= lo.iz &&
           g.iz <= hi.iz;
  }
};

namespace detail {

template <typename Fn>
void forEachInWindowClipped(const CellAabb& box, const OccupancyStore& store, Fn&& fn) {
  if (!box.valid) return;
  const GlobalIndex c = store.center();
  const WindowShape& s = store.shape();
  const std::int32_t x0 = std::max(box.lo.ix, c.ix - s.halfX()), x1 = std::min(box.hi.ix, c.ix + s.halfX());
  const std::int32_t y0 = std::max(box.lo.iy, c.iy - s.halfY()), y1 = std::min(box.hi.iy, c.iy + s.halfY());
  const std::int32_t z0 = std::max(box.lo.iz, c.iz - s.halfZ()), z1 = std::min(box.hi.iz, c.iz + s.halfZ());
  for (std::int32_t x = x0; x <= x1; ++x)
    for (std::int32_t y = y0; y <= y1; ++y)
      for (std::int32_t z = z0; z <= z1; ++z) fn(GlobalIndex{x, y, z});
}

}  // namespace detail

/// Traversal-based inflation: recomputes the inflated flag of every cell in
/// `expandedBox` (the frame's changed-cell AABB already dilated by the
/// inflation radius) from scratch. First clears the box, then rescans a
/// further-dilated neighborhood for Occupied cells and re-marks their
/// neighbors inside the box. Returns the operation count: cells traversed by
/// both passes plus flag writes.
inline std::uint64_t naiveInflate(const OccupancyStore& occupancy, const CellAabb& expandedBox,
                                  const OffsetTable& table, std::vector<std::uint8_t>& inflatedFlags) {
  std::uint64_t ops = 0;
  if (!expandedBox.valid) return ops;
  const WindowShape& shape = occupancy.shape();

  detail::forEachInWindowClipped(expandedBox, occupancy, [&](const GlobalIndex& g) {
    inflatedFlags[globalToAddress(g, shape).value] = 0;
    ++ops;
  });

  // Occupied sources just outside the box can reach cells that were cleared
  // above, so the source scan covers one more inflation radius.
  detail::forEachInWindowClipped(expandedBox.dilated(table.maxAbsOffset), occupancy, [&](const GlobalIndex& m) {
    ++ops;
    if (occupancy.stateAt(m) != OccState::Occupied) return;
    for (const GlobalIndex& p : table.offsets) {
      const GlobalIndex t = m + p;
      if (!expandedBox.contains(t) || !occupancy.contains(t)) continue;
      inflatedFlags[globalToAddress(t, shape).value] = 1;
      ++ops;
    }
  });
  return ops;
}

/// Queue-based incremental inflation: rising cells mark their whole
/// neighborhood; every neighbor of a falling cell is re-examined by scanning
/// that neighbor's own neighborhood for a remaining Occupied cell before it
/// is cleared. Worst case O(changed * |table|^2). Returns the number of grid
/// accesses (marks for the rising branch, occupancy reads for the falling
/// re-checks).
inline std::uint64_t fiimapInflate(std::span<const CellTransition> transitions, const OccupancyStore& occupancy,
                                   const OffsetTable& table, std::vector<std::uint8_t>& inflatedFlags) {
  std::uint64_t ops = 0;
  const WindowShape& shape = occupancy.shape();

  for (const CellTransition& ct : transitions) {
    if (!ct.transition.rising()) continue;
    for (const GlobalIndex& p : table.offsets) {
      const GlobalIndex t = ct.cell + p;
      if (!occupancy.contains(t)) continue;
      inflatedFlags[globalToAddress(t, shape).value] = 1;
      ++ops;
    }
  }

  for (const CellTransition& ct : transitions) {
    if (!ct.transition.falling()) continue;
    for (const GlobalIndex& p : table.offsets) {
      const GlobalIndex n = ct.cell + p;
      if (!occupancy.contains(n)) continue;
      bool stillCovered = false;
      for (const GlobalIndex& q : table.offsets) {
        const GlobalIndex m = n + q;
        if (!occupancy.contains(m)) continue;
        ++ops;
        if (occupancy.stateAt(m) == OccState::Occupied) {
          stillCovered = true;
          break;
        }
      }
      if (!stillCovered) inflatedFlags[globalToAddress(n, shape).value] = 0;
    }
  }
  return ops;
}

inline std::vector<GlobalIndex> inflatedSetFromFlags(const OccupancyStore& store,
                                                     const std::vector<std::uint8_t>& flags) {
  std::vector<GlobalIndex> out;
  store.forEachCell([&](const GlobalIndex& g, const GridCell&) {
    if (flags[globalToAddress(g, store.shape()).value] != 0) out.push_back(g);
  });
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace rogmap::baselines
