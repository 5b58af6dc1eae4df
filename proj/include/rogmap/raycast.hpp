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
#include <cstdint>
#include <limits>
#include <thread>
#include <unordered_map>
#include <vector>

#include "rogmap/core/config.hpp"
#include "rogmap/core/errors.hpp"
#include "rogmap/core/index_math.hpp"
#include "rogmap/core/types.hpp"
#include "rogmap/core/vec3.hpp"
#include "rogmap/occupancy_store.hpp"

namespace rogmap {

/// One sensor frame: the sensor position and the measured points, all in
/// world coordinates.
struct Scan {
  Vec3d origin;
  std::vector<Vec3d> points;
  double timestamp = 0.0;
};

struct HitMiss {
  std::uint32_t nHit = 0;
  std::uint32_t nMiss = 0;
};

/// Per-frame accumulation of hit/miss counts per traversed cell. Multiple
/// rays crossing the same cell fold into one entry, so the probabilistic
/// update touches each cell at most once per frame.
struct UpdateCache {
  std::unordered_map<GlobalIndex, HitMiss, GlobalIndexHash> counts;
  std::size_t droppedPoints = 0;  // non-finite inputs skipped this frame
};

/// Merges `src` into `dst` by summing counts. Merging is associative and
/// commutative, which is what allows ray casting over point subsets to run
/// in parallel.
inline void mergeCaches(UpdateCache& dst, const UpdateCache& src) {
  for (const auto& [g, hm] : src.counts) {
    HitMiss& d = dst.counts[g];
    d.nHit += hm.nHit;
    d.nMiss += hm.nMiss;
  }
  dst.droppedPoints += src.droppedPoints;
}

/// Walks every cell whose volume the segment [origin, endpoint] intersects,
/// ordered from origin to endpoint. Cell boundaries sit at half-cell world
/// coordinates; a ray touching a face enters the cell with the greater
/// index (cells are half-open). A zero-length ray yields one cell.
inline std::vector<GlobalIndex> traverseRay(const Vec3d& origin, const Vec3d& endpoint, double resolution) {
  const GlobalIndex start = worldToGlobal(origin, resolution);
  const GlobalIndex end = worldToGlobal(endpoint, resolution);

  std::vector<GlobalIndex> cells;
  cells.push_back(start);
  if (start == end) return cells;

  // Work in cell units; the segment is parameterized by t in [0, 1].
  const double dx = (endpoint.x - origin.x) / resolution;
  const double dy = (endpoint.y - origin.y) / resolution;
  const double dz = (endpoint.z - origin.z) / resolution;
  const double ux = origin.x / resolution;
  const double uy = origin.y / resolution;
  const double uz = origin.z / resolution;

  constexpr double kInf = std::numeric_limits<double>::infinity();
  auto axisSetup = [](double u0, double d, std::int32_t cell, std::int32_t& step, double& tMax, double& tDelta) {
    if (d > 0.0) {
      step = 1;
      tMax = (cell + 0.5 - u0) / d;
      tDelta = 1.0 / d;
    } else if (d < 0.0) {
      step = -1;
      tMax = (cell - 0.5 - u0) / d;
      tDelta = -1.0 / d;
    } else {
      step = 0;
      tMax = kInf;
      tDelta = kInf;
    }
  };

  GlobalIndex cur = start;
  std::int32_t stepX, stepY, stepZ;
  double tMaxX, tMaxY, tMaxZ, tDeltaX, tDeltaY, tDeltaZ;
  axisSetup(ux, dx, cur.ix, stepX, tMaxX, tDeltaX);
  axisSetup(uy, dy, cur.iy, stepY, tMaxY, tDeltaY);
  axisSetup(uz, dz, cur.iz, stepZ, tMaxZ, tDeltaZ);

  const long maxSteps = std::abs(end.ix - cur.ix) + std::abs(end.iy - cur.iy) + std::abs(end.iz - cur.iz) + 3;
  long steps = 0;
  while (!(cur == end)) {
    if (++steps > maxSteps) {
      // Floating-point corner case: finish with a straight per-axis walk so
      // the chain stays connected and terminates at the endpoint cell.
      while (!(cur == end)) {
        if (cur.ix != end.ix) cur.ix += (end.ix > cur.ix) ? 1 : -1;
        else if (cur.iy != end.iy) cur.iy += (end.iy > cur.iy) ? 1 : -1;
        else cur.iz += (end.iz > cur.iz) ? 1 : -1;
        cells.push_back(cur);
      }
      break;
    }
    if (tMaxX <= tMaxY && tMaxX <= tMaxZ) {
      cur.ix += stepX;
      tMaxX += tDeltaX;
    } else if (tMaxY <= tMaxZ) {
      cur.iy += stepY;
      tMaxY += tDeltaY;
    } else {
      cur.iz += stepZ;
      tMaxZ += tDeltaZ;
    }
    cells.push_back(cur);
  }
  return cells;
}

namespace detail {

/// Largest t in [0, 1] such that origin + t * (end - origin) stays inside
/// the closed box. Assumes the origin is inside.
inline double segmentExitParam(const Vec3d& origin, const Vec3d& end, const Vec3d& boxLo, const Vec3d& boxHi) {
  double tExit = 1.0;
  auto clipAxis = [&](double o, double e, double lo, double hi) {
    const double d = e - o;
    if (d > 0.0) {
      tExit = std::min(tExit, (hi - o) / d);
    } else if (d < 0.0) {
      tExit = std::min(tExit, (lo - o) / d);
    }
  };
  clipAxis(origin.x, end.x, boxLo.x, boxHi.x);
  clipAxis(origin.y, end.y, boxLo.y, boxHi.y);
  clipAxis(origin.z, end.z, boxLo.z, boxHi.z);
  return tExit;
}

struct RayClipResult {
  Vec3d end;
  bool truncated = false;  // endpoint cell gets a miss instead of a hit
};

/// Applies the max-range sphere and (optionally) the window box to one ray.
inline RayClipResult clipRay(const Vec3d& origin, const Vec3d& point, double maxRange, const Vec3d* boxLo,
                             const Vec3d* boxHi, double resolution) {
  RayClipResult out{point, false};
  const Vec3d delta = point - origin;
  const double len = delta.norm();
  if (len > maxRange) {
    out.end = origin + delta * (maxRange / len);
    out.truncated = true;
  }
  if (boxLo != nullptr) {
    const double tExit = segmentExitParam(origin, out.end, *boxLo, *boxHi);
    if (tExit < 1.0) {
      // Pull the clip point slightly inside so the endpoint cell of the
      // truncated ray is unambiguously in-window.
      const double segLen = (out.end - origin).norm();
      const double nudge = segLen > 0.0 ? 1e-6 * resolution / segLen : 0.0;
      const double t = std::max(0.0, tExit - nudge);
      out.end = origin + (out.end - origin) * t;
      out.truncated = true;
    }
  }
  return out;
}

inline void recordRay(const Vec3d& origin, const RayClipResult& ray, double resolution, UpdateCache& cache) {
  const std::vector<GlobalIndex> cells = traverseRay(origin, ray.end, resolution);
  const std::size_t n = cells.size();
  for (std::size_t i = 0; i < n; ++i) {
    HitMiss& hm = cache.counts[cells[i]];
    if (!ray.truncated && i + 1 == n) {
      ++hm.nHit;
    } else {
      ++hm.nMiss;
    }
  }
}

}  // namespace detail

/// Casts every point of a scan against the window of `shape` centered at
/// `windowCenter` and accumulates per-cell hit/miss counts.
///
/// A point within range whose cell is in-window ends its ray with a hit;
/// everything traversed before it is a miss (the sensor's own cell
/// included). Out-of-range or out-of-window points contribute misses along
/// the ray truncated at the range sphere or the window boundary, whichever
/// is nearer, with the truncation endpoint cell itself counted as a miss.
inline UpdateCache castScan(const Scan& scan, const MapConfig& cfg, const GlobalIndex& windowCenter) {
  const double r = cfg.shape.resolution;
  const GlobalIndex originCell = worldToGlobal(scan.origin, r);
  if (!inWindow(originCell, windowCenter, cfg.shape)) {
    throw OriginOutOfWindowError("castScan: sensor origin outside the local window");
  }

  const Vec3d boxLo{(windowCenter.ix - cfg.shape.halfX() - 0.5) * r, (windowCenter.iy - cfg.shape.halfY() - 0.5) * r,
                    (windowCenter.iz - cfg.shape.halfZ() - 0.5) * r};
  const Vec3d boxHi{(windowCenter.ix + cfg.shape.halfX() + 0.5) * r, (windowCenter.iy + cfg.shape.halfY() + 0.5) * r,
                    (windowCenter.iz + cfg.shape.halfZ() + 0.5) * r};

  UpdateCache cache;
  for (const Vec3d& p : scan.points) {
    if (!p.allFinite()) {
      ++cache.droppedPoints;
      continue;
    }
    const auto ray = detail::clipRay(scan.origin, p, cfg.maxRaycastDistance, &boxLo, &boxHi, r);
    detail::recordRay(scan.origin, ray, r, cache);
  }
  return cache;
}

/// Unbounded variant for backends without a window: rays truncate at the
/// range sphere only.
inline UpdateCache castScanUnbounded(const Scan& scan, const MapConfig& cfg) {
  if (!scan.origin.allFinite()) {
    throw std::invalid_argument("castScanUnbounded: non-finite sensor origin");
  }
  const double r = cfg.shape.resolution;
  UpdateCache cache;
  for (const Vec3d& p : scan.points) {
    if (!p.allFinite()) {
      ++cache.droppedPoints;
      continue;
    }
    const auto ray = detail::clipRay(scan.origin, p, cfg.maxRaycastDistance, nullptr, nullptr, r);
    detail::recordRay(scan.origin, ray, r, cache);
  }
  return cache;
}

/// Parallel ray casting over point chunks with associative cache merging.
/// Observable behavior matches castScan.
inline UpdateCache castScanParallel(const Scan& scan, const MapConfig& cfg, const GlobalIndex& windowCenter,
                                    unsigned threadCount) {
  if (threadCount <= 1 || scan.points.size() < 2 * threadCount) {
    return castScan(scan, cfg, windowCenter);
  }
  // Fail fast on a bad origin before spawning workers.
  if (!inWindow(worldToGlobal(scan.origin, cfg.shape.resolution), windowCenter, cfg.shape)) {
    throw OriginOutOfWindowError("castScan: sensor origin outside the local window");
  }
  std::vector<UpdateCache> partial(threadCount);
  std::vector<std::thread> workers;
  const std::size_t chunk = (scan.points.size() + threadCount - 1) / threadCount;
  for (unsigned t = 0; t < threadCount; ++t) {
    workers.emplace_back([&, t] {
      const std::size_t lo = t * chunk;
      const std::size_t hi = std::min(scan.points.size(), lo + chunk);
      if (lo >= hi) return;
      Scan sub{scan.origin, {scan.points.begin() + lo, scan.points.begin() + hi}, scan.timestamp};
      partial[t] = castScan(sub, cfg, windowCenter);
    });
  }
  for (auto& w : workers) w.join();
  UpdateCache merged;
  for (const auto& part : partial) mergeCaches(merged, part);
  return merged;
}

/// One cell whose batched update changed its classified state.
struct CellTransition {
  GlobalIndex cell;
  StateTransition transition;
};

/// Applies the cached counts, one batched update per cell, and returns the
/// cells whose classified state changed.
inline std::vector<CellTransition> applyCache(const UpdateCache& cache, OccupancyStore& store) {
  std::vector<CellTransition> changes;
  for (const auto& [g, hm] : cache.counts) {
    assert(store.contains(g));
    const StateTransition t = store.applyCounts(g, hm.nHit, hm.nMiss);
    if (t.changed()) changes.push_back({g, t});
  }
  return changes;
}

}  // namespace rogmap
