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

#include <optional>

#include "rogmap/core/config.hpp"
#include "rogmap/inflation.hpp"
#include "rogmap/raycast.hpp"
#include "rogmap/sliding.hpp"

namespace rogmap {

/// What one inserted frame did to the map.
struct FrameUpdate {
  std::optional<SlideReport> slide;
  std::size_t cacheCells = 0;       // distinct cells touched by ray casting
  std::size_t droppedPoints = 0;    // non-finite inputs skipped
  std::size_t stateChanges = 0;     // classified-state changes this frame
  InflationStats inflation;
};

/// Robocentric occupancy map: a fixed-size local window that follows the
/// robot. Per frame: recenter the window if the robot strayed beyond the
/// slide threshold, ray cast the scan into a batch cache, fuse the cached
/// counts, then patch the inflation counters around the cells whose state
/// changed.
///
/// Single writer, concurrent readers while no writer is active.
class RogMap {
 public:
  explicit RogMap(const MapConfig& cfg, const Vec3d& initialCenter = {0.0, 0.0, 0.0})
      : cfg_(cfg),
        table_(buildOffsetTable(cfg.inflationDistance, cfg.shape.resolution)),
        store_(cfg.shape, cfg.prob, worldToGlobal(initialCenter, cfg.shape.resolution)) {
    cfg_.validate();
  }

  FrameUpdate insertScan(const Scan& scan) {
    FrameUpdate fu = updateOccupancy(scan);
    fu.inflation = inflatePending();
    return fu;
  }

  /// First half of a frame (slide, ray cast, probabilistic fusion), for
  /// callers that time update and inflation separately. State changes stay
  /// pending until inflatePending().
  FrameUpdate updateOccupancy(const Scan& scan) {
    FrameUpdate fu;
    const Vec3d centerWorld = globalToWorld(store_.center(), cfg_.shape.resolution);
    if (shouldSlide(scan.origin, centerWorld, cfg_.slideThreshold)) {
      fu.slide = slideTo(scan.origin, store_, table_);
    }
    const UpdateCache cache = parallelThreads_ > 1 ? castScanParallel(scan, cfg_, store_.center(), parallelThreads_)
                                                   : castScan(scan, cfg_, store_.center());
    fu.cacheCells = cache.counts.size();
    fu.droppedPoints = cache.droppedPoints;
    pending_ = applyCache(cache, store_);
    fu.stateChanges = pending_.size();
    return fu;
  }

  /// Second half of a frame: counter updates around the pending changes.
  InflationStats inflatePending() {
    const InflationStats stats = processTransitions(pending_, table_, store_);
    pending_.clear();
    return stats;
  }

  /// > 1 enables parallel ray casting with merged caches.
  void setParallelRaycastThreads(unsigned n) { parallelThreads_ = n; }

  QueryResult query(const Vec3d& p) const { return store_.query(p); }
  QueryResult query(const GlobalIndex& g) const { return store_.query(g); }

  const MapConfig& config() const { return cfg_; }
  const OffsetTable& offsetTable() const { return table_; }
  const OccupancyStore& store() const { return store_; }
  OccupancyStore& store() { return store_; }

  std::size_t memoryBytes() const { return store_.memoryBytes(); }

 private:
  MapConfig cfg_;
  OffsetTable table_;
  OccupancyStore store_;
  std::vector<CellTransition> pending_;
  unsigned parallelThreads_ = 1;
};

}  // namespace rogmap
