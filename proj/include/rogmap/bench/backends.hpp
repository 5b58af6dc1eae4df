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

#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

#include "rogmap/baselines/hash_map.hpp"
#include "rogmap/baselines/inflation_baselines.hpp"
#include "rogmap/rog_map.hpp"

namespace rogmap::bench {

/// Uniform mapper surface the benchmark harness drives. Update and
/// inflation are separate calls so they can be timed independently.
class Backend {
 public:
  virtual ~Backend() = default;
  virtual const char* name() const = 0;
  virtual void updateOccupancy(const Scan& scan) = 0;
  /// Per-frame obstacle inflation; returns the operation count (n_inf).
  virtual std::uint64_t inflateObstacles() = 0;
  virtual QueryResult query(const Vec3d& p) const = 0;
  virtual std::size_t memoryBytes() const = 0;
  /// Center of the region random queries should sample.
  virtual GlobalIndex regionCenter() const = 0;
  virtual std::vector<GlobalIndex> occupiedCells() const = 0;
  virtual std::vector<GlobalIndex> inflatedCells() const = 0;
};

namespace detail {

inline std::vector<GlobalIndex> collectOccupied(const OccupancyStore& store) {
  std::vector<GlobalIndex> out;
  store.forEachCell([&](const GlobalIndex& g, const GridCell& c) {
    if (stateOf(c.logOdds, store.prob()) == OccState::Occupied) out.push_back(g);
  });
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace detail

/// The sliding-window map with incremental counter inflation.
class RogBackend : public Backend {
 public:
  RogBackend(const MapConfig& cfg, const Vec3d& initialCenter) : map_(cfg, initialCenter) {}

  const char* name() const override { return "rogmap"; }
  void updateOccupancy(const Scan& scan) override { map_.updateOccupancy(scan); }
  std::uint64_t inflateObstacles() override { return map_.inflatePending().counterOps; }
  QueryResult query(const Vec3d& p) const override { return map_.query(p); }
  std::size_t memoryBytes() const override { return map_.memoryBytes(); }
  GlobalIndex regionCenter() const override { return map_.store().center(); }
  std::vector<GlobalIndex> occupiedCells() const override { return detail::collectOccupied(map_.store()); }
  std::vector<GlobalIndex> inflatedCells() const override {
    std::vector<GlobalIndex> out;
    map_.store().forEachCell([&](const GlobalIndex& g, const GridCell& c) {
      if (c.inflationCounter >= 1) out.push_back(g);
    });
    std::sort(out.begin(), out.end());
    return out;
  }

  RogMap& map() { return map_; }

 private:
  RogMap map_;
};

/// Fixed-origin uniform grid with traversal-box inflation. The window shape
/// doubles as the full map box, centered at cfg.fixedMapCenter.
class UniformFixedBackend : public Backend {
 public:
  explicit UniformFixedBackend(const MapConfig& cfg)
      : cfg_(cfg),
        table_(buildOffsetTable(cfg.inflationDistance, cfg.shape.resolution)),
        store_(cfg.shape, cfg.prob, worldToGlobal(cfg.fixedMapCenter, cfg.shape.resolution)),
        flags_(cfg.shape.cellCount(), 0) {}

  const char* name() const override { return "uniform-fixed"; }

  void updateOccupancy(const Scan& scan) override {
    const UpdateCache cache = castScan(scan, cfg_, store_.center());
    pendingBox_ = baselines::CellAabb{};
    for (const auto& [g, hm] : cache.counts) pendingBox_.expand(g);
    applyCache(cache, store_);
  }

  std::uint64_t inflateObstacles() override {
    const std::uint64_t ops =
        baselines::naiveInflate(store_, pendingBox_.dilated(table_.maxAbsOffset), table_, flags_);
    pendingBox_ = baselines::CellAabb{};
    return ops;
  }

  QueryResult query(const Vec3d& p) const override {
    QueryResult r = store_.query(p);
    if (r.inWindow) r.inflated = flags_[globalToAddress(worldToGlobal(p, cfg_.shape.resolution), cfg_.shape).value] != 0;
    return r;
  }

  std::size_t memoryBytes() const override { return store_.memoryBytes() + flags_.capacity() * sizeof(std::uint8_t); }
  GlobalIndex regionCenter() const override { return store_.center(); }
  std::vector<GlobalIndex> occupiedCells() const override { return detail::collectOccupied(store_); }
  std::vector<GlobalIndex> inflatedCells() const override {
    return baselines::inflatedSetFromFlags(store_, flags_);
  }

 private:
  MapConfig cfg_;
  OffsetTable table_;
  OccupancyStore store_;
  std::vector<std::uint8_t> flags_;
  baselines::CellAabb pendingBox_;
};

/// Fixed-origin uniform grid with queue-based incremental inflation.
class FiimapBackend : public Backend {
 public:
  explicit FiimapBackend(const MapConfig& cfg)
      : cfg_(cfg),
        table_(buildOffsetTable(cfg.inflationDistance, cfg.shape.resolution)),
        store_(cfg.shape, cfg.prob, worldToGlobal(cfg.fixedMapCenter, cfg.shape.resolution)),
        flags_(cfg.shape.cellCount(), 0) {}

  const char* name() const override { return "fiimap-style"; }

  void updateOccupancy(const Scan& scan) override {
    const UpdateCache cache = castScan(scan, cfg_, store_.center());
    pending_ = applyCache(cache, store_);
  }

  std::uint64_t inflateObstacles() override {
    const std::uint64_t ops = baselines::fiimapInflate(pending_, store_, table_, flags_);
    pending_.clear();
    return ops;
  }

  QueryResult query(const Vec3d& p) const override {
    QueryResult r = store_.query(p);
    if (r.inWindow) r.inflated = flags_[globalToAddress(worldToGlobal(p, cfg_.shape.resolution), cfg_.shape).value] != 0;
    return r;
  }

  std::size_t memoryBytes() const override { return store_.memoryBytes() + flags_.capacity() * sizeof(std::uint8_t); }
  GlobalIndex regionCenter() const override { return store_.center(); }
  std::vector<GlobalIndex> occupiedCells() const override { return detail::collectOccupied(store_); }
  std::vector<GlobalIndex> inflatedCells() const override {
    return baselines::inflatedSetFromFlags(store_, flags_);
  }

 private:
  MapConfig cfg_;
  OffsetTable table_;
  OccupancyStore store_;
  std::vector<std::uint8_t> flags_;
  std::vector<CellTransition> pending_;
};

class HashBackend : public Backend {
 public:
  explicit HashBackend(const MapConfig& cfg) : map_(cfg) {}

  const char* name() const override { return "hash"; }
  void updateOccupancy(const Scan& scan) override { map_.updateOccupancy(scan); }
  std::uint64_t inflateObstacles() override { return map_.inflateObstacles(); }
  QueryResult query(const Vec3d& p) const override { return map_.query(p); }
  std::size_t memoryBytes() const override { return map_.memoryBytes(); }
  GlobalIndex regionCenter() const override {
    return worldToGlobal(map_.config().fixedMapCenter, map_.config().shape.resolution);
  }
  std::vector<GlobalIndex> occupiedCells() const override { return map_.occupiedCells(); }
  std::vector<GlobalIndex> inflatedCells() const override { return map_.inflatedCells(); }

 private:
  baselines::HashOgm map_;
};

inline const std::vector<std::string>& backendNames() {
  static const std::vector<std::string> names{"rogmap", "uniform-fixed", "fiimap-style", "hash"};
  return names;
}

/// `firstOrigin` seeds the sliding map's initial window center; the fixed
/// backends always sit at cfg.fixedMapCenter. `parallelRaycastThreads` > 1
/// enables chunked ray casting with merged caches on the sliding map; the
/// baselines stay single-threaded so timings remain comparable.
inline std::unique_ptr<Backend> makeBackend(const std::string& name, const MapConfig& cfg,
                                            const Vec3d& firstOrigin, unsigned parallelRaycastThreads = 1) {
  if (name == "rogmap") {
    auto backend = std::make_unique<RogBackend>(cfg, firstOrigin);
    backend->map().setParallelRaycastThreads(parallelRaycastThreads);
    return backend;
  }
  if (name == "uniform-fixed") return std::make_unique<UniformFixedBackend>(cfg);
  if (name == "fiimap-style") return std::make_unique<FiimapBackend>(cfg);
  if (name == "hash") return std::make_unique<HashBackend>(cfg);
  std::string known;
  for (const std::string& n : backendNames()) known += (known.empty() ? "" : ", ") + n;
  throw std::invalid_argument("unknown backend '" + name + "' (valid: " + known + ")");
}

}  // namespace rogmap::bench
