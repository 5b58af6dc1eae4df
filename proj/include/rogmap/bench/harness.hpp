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

#include <chrono>
#include <cstdint>
#include <ostream>
#include <random>
#include <string>
#include <vector>

#include "rogmap/bench/backends.hpp"
#include "rogmap/bench/scan_log.hpp"
#include "rogmap/core/config.hpp"

namespace rogmap::bench {

/// Per-frame timings (monotonic clock) and counts.
struct FrameMetrics {
  double tTotSec = 0.0;      // update + inflation
  double tUpdateSec = 0.0;   // slide + ray cast + probabilistic fusion
  double tInflateSec = 0.0;  // obstacle inflation
  std::uint64_t nInf = 0;    // inflation operation count
  std::size_t memBytes = 0;  // map-owned storage after the frame
  std::int64_t memDeltaBytes = 0;
};

struct BenchSummary {
  std::string backend;
  std::size_t frames = 0;
  double meanTTotSec = 0.0;
  double meanTUpdateSec = 0.0;
  double meanTInflateSec = 0.0;
  double meanNInf = 0.0;
  std::uint64_t totalNInf = 0;
  std::size_t peakMemoryBytes = 0;
};

struct BenchResult {
  std::vector<FrameMetrics> frames;
  BenchSummary summary;
};

/// Replays every frame of the log through the backend, timing update and
/// inflation separately. The summary holds arithmetic means per frame.
inline BenchResult runBenchmark(const ScanLog& log, Backend& backend) {
  using Clock = std::chrono::steady_clock;
  auto seconds = [](Clock::time_point a, Clock::time_point b) {
    return std::chrono::duration<double>(b - a).count();
  };

  BenchResult result;
  result.summary.backend = backend.name();
  std::size_t prevMem = backend.memoryBytes();
  result.summary.peakMemoryBytes = prevMem;

  for (const Scan& scan : log.frames) {
    const auto t0 = Clock::now();
    backend.updateOccupancy(scan);
    const auto t1 = Clock::now();
    const std::uint64_t ops = backend.inflateObstacles();
    const auto t2 = Clock::now();

    FrameMetrics m;
    m.tUpdateSec = seconds(t0, t1);
    m.tInflateSec = seconds(t1, t2);
    m.tTotSec = seconds(t0, t2);
    m.nInf = ops;
    m.memBytes = backend.memoryBytes();
    m.memDeltaBytes = static_cast<std::int64_t>(m.memBytes) - static_cast<std::int64_t>(prevMem);
    prevMem = m.memBytes;
    result.summary.peakMemoryBytes = std::max(result.summary.peakMemoryBytes, m.memBytes);
    result.frames.push_back(m);
  }

  BenchSummary& s = result.summary;
  s.frames = result.frames.size();
  for (const FrameMetrics& m : result.frames) {
    s.meanTTotSec += m.tTotSec;
    s.meanTUpdateSec += m.tUpdateSec;
    s.meanTInflateSec += m.tInflateSec;
    s.totalNInf += m.nInf;
  }
  if (s.frames > 0) {
    s.meanTTotSec /= static_cast<double>(s.frames);
    s.meanTUpdateSec /= static_cast<double>(s.frames);
    s.meanTInflateSec /= static_cast<double>(s.frames);
    s.meanNInf = static_cast<double>(s.totalNInf) / static_cast<double>(s.frames);
  }
  return result;
}

/// Creates the named backend (sliding window seeded at the first frame's
/// sensor position) and replays the log.
inline BenchResult runBenchmark(const ScanLog& log, const std::string& backendName, const MapConfig& cfg) {
  const Vec3d firstOrigin = log.frames.empty() ? cfg.fixedMapCenter : log.frames.front().origin;
  const std::unique_ptr<Backend> backend = makeBackend(backendName, cfg, firstOrigin);
  return runBenchmark(log, *backend);
}

struct QueryBenchResult {
  double seconds = 0.0;
  std::uint64_t checksum = 0;  // folds every result so the loop cannot be elided
  std::size_t count = 0;
};

/// Issues `count` uniformly random queries inside the backend's current
/// window box and returns the total wall time.
inline QueryBenchResult randomQueryBench(const Backend& backend, const MapConfig& cfg, std::size_t count,
                                         std::uint64_t seed) {
  const double r = cfg.shape.resolution;
  const GlobalIndex c = backend.regionCenter();
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> dx((c.ix - cfg.shape.halfX() - 0.5) * r, (c.ix + cfg.shape.halfX() + 0.5) * r);
  std::uniform_real_distribution<double> dy((c.iy - cfg.shape.halfY() - 0.5) * r, (c.iy + cfg.shape.halfY() + 0.5) * r);
  std::uniform_real_distribution<double> dz((c.iz - cfg.shape.halfZ() - 0.5) * r, (c.iz + cfg.shape.halfZ() + 0.5) * r);

  std::vector<Vec3d> points;
  points.reserve(count);
  for (std::size_t i = 0; i < count; ++i) points.push_back({dx(rng), dy(rng), dz(rng)});

  QueryBenchResult out;
  out.count = count;
  const auto t0 = std::chrono::steady_clock::now();
  for (const Vec3d& p : points) {
    const QueryResult q = backend.query(p);
    out.checksum = out.checksum * 31 + (static_cast<std::uint64_t>(q.state) << 2) +
                   (static_cast<std::uint64_t>(q.inflated) << 1) + static_cast<std::uint64_t>(q.inWindow);
  }
  out.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return out;
}

/// Per-frame metrics CSV: effective config echoed as comments, one row per
/// frame, then a summary block.
inline void writeMetricsCsv(std::ostream& out, const BenchResult& result, const MapConfig& cfg) {
  out << "# backend = " << result.summary.backend << "\n";
  std::ostringstream cfgText;
  saveMapConfig(cfg, cfgText);
  std::istringstream cfgLines(cfgText.str());
  std::string line;
  while (std::getline(cfgLines, line)) out << "# " << line << "\n";

  out << "frame,t_tot_us,t_update_us,t_inflate_us,n_inf,mem_bytes\n";
  for (std::size_t i = 0; i < result.frames.size(); ++i) {
    const FrameMetrics& m = result.frames[i];
    out << i << ',' << m.tTotSec * 1e6 << ',' << m.tUpdateSec * 1e6 << ',' << m.tInflateSec * 1e6 << ','
        << m.nInf << ',' << m.memBytes << "\n";
  }
  const BenchSummary& s = result.summary;
  out << "# summary frames=" << s.frames << " mean_t_tot_us=" << s.meanTTotSec * 1e6
      << " mean_t_update_us=" << s.meanTUpdateSec * 1e6 << " mean_t_inflate_us=" << s.meanTInflateSec * 1e6
      << " mean_n_inf=" << s.meanNInf << " peak_mem_bytes=" << s.peakMemoryBytes << "\n";
}

}  // namespace rogmap::bench
