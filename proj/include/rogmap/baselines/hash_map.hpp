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
#include <cstdint>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "rogmap/baselines/inflation_baselines.hpp"
#include "rogmap/core/config.hpp"
#include "rogmap/raycast.hpp"

namespace rogmap::baselines {

/// Hash-table occupancy map: same fusion and ray casting semantics as the
/// grid maps but over an unbounded domain keyed by global index. No window,
/// no sliding; memory grows with every cell ever touched. Obstacle inflation
/// follows the traversal baselines (box recompute), with the inflated set
/// held in a hash set.
class HashOgm {
 public:
  explicit HashOgm(const MapConfig& cfg) : cfg_(cfg) { cfg_.validate(); }

  /// Ray casts and fuses one frame; remembers the frame's state changes and
  /// touched-cell AABB for the inflation pass.
  void updateOccupancy(const Scan& scan) {
    const UpdateCache cache = castScanUnbounded(scan, cfg_);
    pendingTransitions_.clear();
    pendingBox_ = CellAabb{};
    for (const auto& [g, hm] : cache.counts) {
      pendingBox_.expand(g);
      const StateTransition t = applyBatch(cells_[g], hm.nHit, hm.nMiss, cfg_.prob);
      if (t.changed()) pendingTransitions_.push_back({g, t});
    }
  }

  /// Box-traversal inflation over the pending frame. Returns the operation
  /// count (cells traversed plus flag writes), mirroring naiveInflate.
  std::uint64_t inflateObstacles() {
    std::uint64_t ops = 0;
    const CellAabb box = pendingBox_.dilated(table().maxAbsOffset);
    if (!box.valid) return ops;
    forEachInBox(box, [&](const GlobalIndex& g) {
      inflated_.erase(g);
      ++ops;
    });
    forEachInBox(box.dilated(table().maxAbsOffset), [&](const GlobalIndex& m) {
      ++ops;
      if (stateAt(m) != OccState::Occupied) return;
      for (const GlobalIndex& p : table().offsets) {
        const GlobalIndex t = m + p;
        if (!box.contains(t)) continue;
        inflated_.insert(t);
        ++ops;
      }
    });
    return ops;
  }

  OccState stateAt(const GlobalIndex& g) const {
    const auto it = cells_.find(g);
    return it == cells_.end() ? OccState::Unknown : stateOf(it->second.logOdds, cfg_.prob);
  }

  QueryResult query(const GlobalIndex& g) const {
    QueryResult r;
    r.inWindow = true;  // unbounded domain: every cell is addressable
    r.state = stateAt(g);
    r.inflated = inflated_.contains(g);
    return r;
  }

  QueryResult query(const Vec3d& p) const { return query(worldToGlobal(p, cfg_.shape.resolution)); }

  std::size_t entryCount() const { return cells_.size(); }

  std::size_t memoryBytes() const {
    return cells_.size() * sizeof(std::pair<const GlobalIndex, GridCell>) +
           inflated_.size() * sizeof(GlobalIndex);
  }

  std::vector<GlobalIndex> occupiedCells() const {
    std::vector<GlobalIndex> out;
    for (const auto& [g, c] : cells_) {
      if (stateOf(c.logOdds, cfg_.prob) == OccState::Occupied) out.push_back(g);
    }
    std::sort(out.begin(), out.end());
    return out;
  }

  std::vector<GlobalIndex> inflatedCells() const {
    std::vector<GlobalIndex> out(inflated_.begin(), inflated_.end());
    std::sort(out.begin(), out.end());
    return out;
  }

  const MapConfig& config() const { return cfg_; }

 private:
  const OffsetTable& table() {
    if (table_.resolution == 0.0) table_ = buildOffsetTable(cfg_.inflationDistance, cfg_.shape.resolution);
    return table_;
  }

  template <typename Fn>
  static void forEachInBox(const CellAabb& b, Fn&& fn) {
    for (std::int32_t x = b.lo.ix; x <= b.hi.ix; ++x)
      for (std::int32_t y = b.lo.iy; y <= b.hi.iy; ++y)
        for (std::int32_t z = b.lo.iz; z <= b.hi.iz; ++z) fn(GlobalIndex{x, y, z});
  }

  MapConfig cfg_;
  OffsetTable table_{};
  std::unordered_map<GlobalIndex, GridCell, GlobalIndexHash> cells_;
  std::unordered_set<GlobalIndex, GlobalIndexHash> inflated_;
  std::vector<CellTransition> pendingTransitions_;
  CellAabb pendingBox_;
};

}  // namespace rogmap::baselines
