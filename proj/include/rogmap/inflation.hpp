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

#include <cassert>
#include <cmath>
#include <cstdint>
#include <limits>
#include <span>
#include <stdexcept>
#include <vector>

#include "rogmap/occupancy_store.hpp"
#include "rogmap/raycast.hpp"

namespace rogmap {

/// Precomputed neighborhood of the inflation ball: every integer offset o
/// with ||o|| * resolution <= inflationDistance (plus a hair of slack so the
/// boundary is robust to floating point). Symmetric, contains (0,0,0),
/// lexicographically ordered.
struct OffsetTable {
  std::vector<GlobalIndex> offsets;
  std::int32_t maxAbsOffset = 0;  // per-axis bound; the ball fits in this cube
  double inflationDistance = 0.0;
  double resolution = 0.0;

  std::size_t size() const { return offsets.size(); }
};

inline OffsetTable buildOffsetTable(double inflationDistance, double resolution) {
  if (!(inflationDistance >= 0.0)) throw std::invalid_argument("inflation distance must be >= 0");
  if (!(resolution > 0.0)) throw std::invalid_argument("resolution must be > 0");

  OffsetTable table;
  table.inflationDistance = inflationDistance;
  table.resolution = resolution;
  const auto k = static_cast<std::int32_t>(std::floor(inflationDistance / resolution + 1e-9));
  table.maxAbsOffset = k;
  const double bound = inflationDistance + resolution * 1e-9;
  for (std::int32_t x = -k; x <= k; ++x) {
    for (std::int32_t y = -k; y <= k; ++y) {
      for (std::int32_t z = -k; z <= k; ++z) {
        const double normSq = static_cast<double>(x) * x + static_cast<double>(y) * y + static_cast<double>(z) * z;
        if (std::sqrt(normSq) * resolution <= bound) {
          table.offsets.push_back({x, y, z});
        }
      }
    }
  }
  // inflationCounter is 16 bits; a table larger than that could overflow a
  // counter when a solid block of obstacles surrounds a cell.
  if (table.offsets.size() > std::numeric_limits<std::uint16_t>::max()) {
    throw std::invalid_argument("inflation neighborhood too large for the cell counter width (" +
                                std::to_string(table.offsets.size()) + " offsets)");
  }
  return table;
}

/// Adds `c` (+1 or -1) to the inflation counter of every in-window neighbor
/// of `g` listed in the table. Returns how many cells were touched.
///
/// A decrement on a zero counter means the incremental bookkeeping has
/// diverged from the occupancy field; debug builds stop, release builds
/// saturate at zero and record the event on the store.
inline std::uint64_t updateNeighborCounter(const GlobalIndex& g, int c, const OffsetTable& table,
                                           OccupancyStore& store) {
  assert(c == 1 || c == -1);
  std::uint64_t touched = 0;
  for (const GlobalIndex& p : table.offsets) {
    const GlobalIndex n = g + p;
    if (!store.contains(n)) continue;
    GridCell& cell = store.at(n);
    if (c < 0 && cell.inflationCounter == 0) {
      assert(!"inflation counter underflow");
      store.noteCounterUnderflow();
    } else {
      cell.inflationCounter = static_cast<std::uint16_t>(static_cast<int>(cell.inflationCounter) + c);
    }
    ++touched;
  }
  return touched;
}

struct InflationStats {
  std::uint64_t counterOps = 0;  // the n_inf benchmark metric
  std::size_t risingCells = 0;
  std::size_t fallingCells = 0;
};

/// Applies the frame's state changes to the counters: +1 around every cell
/// that rose to Occupied, -1 around every cell that left it. Cost is
/// O(changed cells * |table|), independent of how much of the map the
/// frame's points spanned.
inline InflationStats processTransitions(std::span<const CellTransition> transitions, const OffsetTable& table,
                                         OccupancyStore& store) {
  InflationStats stats;
  for (const CellTransition& ct : transitions) {
    if (ct.transition.rising()) {
      stats.counterOps += updateNeighborCounter(ct.cell, +1, table, store);
      ++stats.risingCells;
    } else if (ct.transition.falling()) {
      stats.counterOps += updateNeighborCounter(ct.cell, -1, table, store);
      ++stats.fallingCells;
    }
  }
  return stats;
}

/// Counter >= 1 means at least one Occupied cell lies within the inflation
/// distance (the cell itself included, via the zero offset).
inline bool isInflatedOccupied(const GlobalIndex& g, const OccupancyStore& store) {
  return store.contains(g) && store.at(g).inflationCounter >= 1;
}

}  // namespace rogmap
