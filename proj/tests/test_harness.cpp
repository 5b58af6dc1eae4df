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

#include <gtest/gtest.h>

#include <random>
#include <sstream>

#include "rogmap/bench/harness.hpp"
#include "rogmap/sim/lidar.hpp"

namespace rogmap::bench {
namespace {

MapConfig forestConfig() {
  MapConfig cfg;
  cfg.shape = WindowShape(41, 41, 21, 0.2);
  cfg.inflationDistance = 0.4;
  cfg.maxRaycastDistance = 6.0;
  cfg.slideThreshold = 1e9;
  return cfg;
}

ScanLog forestLog(int frames, std::size_t rays) {
  sim::Scene scene;
  scene.boundsLo = {-4, -4, -2};
  scene.boundsHi = {4, 4, 2};
  scene.boxes.push_back({{1.0, 1.0, -1.0}, {1.4, 1.4, 1.5}});
  scene.boxes.push_back({{-2.0, 0.5, -1.0}, {-1.6, 0.9, 1.2}});
  scene.wires.push_back({{-1.5, -2.0, 0.5}, {2.0, -2.0, 0.5}, 0.02});

  sim::SimLidarConfig lidar;
  lidar.raysPerScan = rays;
  lidar.maxRange = 6.0;
  std::mt19937_64 rng(7);
  ScanLog log;
  for (int f = 0; f < frames; ++f) {
    const double angle = 0.15 * f;
    const Vec3d pos{0.5 * std::cos(angle), 0.5 * std::sin(angle), 0.1};
    log.frames.push_back(sim::simulateScan(scene, pos, lidar, rng, f * 0.1));
  }
  return log;
}

TEST(RunBenchmark, ZeroFrameLogYieldsZeroSummary) {
  const ScanLog empty;
  const BenchResult res = runBenchmark(empty, "rogmap", forestConfig());
  EXPECT_TRUE(res.frames.empty());
  EXPECT_EQ(res.summary.frames, 0u);
  EXPECT_EQ(res.summary.totalNInf, 0u);
  EXPECT_EQ(res.summary.meanNInf, 0.0);
}

TEST(RunBenchmark, FrameTimingAccounting) {
  const ScanLog log = forestLog(8, 400);
  const BenchResult res = runBenchmark(log, "rogmap", forestConfig());
  ASSERT_EQ(res.frames.size(), 8u);
  std::uint64_t total = 0;
  for (const FrameMetrics& m : res.frames) {
    EXPECT_GE(m.tTotSec, m.tUpdateSec + m.tInflateSec - 1e-9);
    total += m.nInf;
  }
  EXPECT_EQ(total, res.summary.totalNInf);
}

TEST(RunBenchmark, BackendsAgreeOnFinalStateWithinWindow) {
  const ScanLog log = forestLog(10, 600);
  const MapConfig cfg = forestConfig();

  const auto rog = makeBackend("rogmap", cfg, log.frames.front().origin);
  const auto uniform = makeBackend("uniform-fixed", cfg, log.frames.front().origin);
  for (const Scan& s : log.frames) {
    rog->updateOccupancy(s);
    rog->inflateObstacles();
    uniform->updateOccupancy(s);
    uniform->inflateObstacles();
  }
  EXPECT_EQ(rog->occupiedCells(), uniform->occupiedCells());
  EXPECT_EQ(rog->inflatedCells(), uniform->inflatedCells());
}

TEST(RunBenchmark, ReplayIsDeterministic) {
  const ScanLog log = forestLog(6, 300);
  const MapConfig cfg = forestConfig();
  const BenchResult a = runBenchmark(log, "rogmap", cfg);
  const BenchResult b = runBenchmark(log, "rogmap", cfg);
  ASSERT_EQ(a.frames.size(), b.frames.size());
  for (std::size_t i = 0; i < a.frames.size(); ++i) {
    EXPECT_EQ(a.frames[i].nInf, b.frames[i].nInf);
    EXPECT_EQ(a.frames[i].memBytes, b.frames[i].memBytes);
  }

  const auto backendA = makeBackend("fiimap-style", cfg, log.frames.front().origin);
  const auto backendB = makeBackend("fiimap-style", cfg, log.frames.front().origin);
  for (const Scan& s : log.frames) {
    backendA->updateOccupancy(s);
    backendA->inflateObstacles();
    backendB->updateOccupancy(s);
    backendB->inflateObstacles();
  }
  EXPECT_EQ(backendA->occupiedCells(), backendB->occupiedCells());
  EXPECT_EQ(backendA->inflatedCells(), backendB->inflatedCells());
}

TEST(RunBenchmark, UnknownBackendListsValidNames) {
  const ScanLog log;
  try {
    runBenchmark(log, "octree", forestConfig());
    FAIL() << "expected invalid_argument";
  } catch (const std::invalid_argument& e) {
    const std::string what = e.what();
    EXPECT_NE(what.find("rogmap"), std::string::npos);
    EXPECT_NE(what.find("uniform-fixed"), std::string::npos);
  }
}

TEST(RandomQueryBench, ZeroCountIsInstant) {
  const MapConfig cfg = forestConfig();
  const auto backend = makeBackend("rogmap", cfg, {0, 0, 0});
  const QueryBenchResult r = randomQueryBench(*backend, cfg, 0, 1);
  EXPECT_EQ(r.count, 0u);
  EXPECT_EQ(r.checksum, 0u);
  EXPECT_LT(r.seconds, 0.01);
}

TEST(RandomQueryBench, SameSeedSameChecksum) {
  const ScanLog log = forestLog(5, 300);
  const MapConfig cfg = forestConfig();
  const auto backend = makeBackend("rogmap", cfg, log.frames.front().origin);
  for (const Scan& s : log.frames) {
    backend->updateOccupancy(s);
    backend->inflateObstacles();
  }
  const QueryBenchResult a = randomQueryBench(*backend, cfg, 20000, 42);
  const QueryBenchResult b = randomQueryBench(*backend, cfg, 20000, 42);
  EXPECT_EQ(a.checksum, b.checksum);
  const QueryBenchResult c = randomQueryBench(*backend, cfg, 20000, 43);
  EXPECT_NE(a.checksum, c.checksum);  // different sample, overwhelmingly
}

TEST(RandomQueryBench, RoughlyLinearInCount) {
  const MapConfig cfg = forestConfig();
  const ScanLog log = forestLog(5, 300);
  const auto backend = makeBackend("rogmap", cfg, log.frames.front().origin);
  for (const Scan& s : log.frames) {
    backend->updateOccupancy(s);
    backend->inflateObstacles();
  }
  // Best of three to tame scheduler noise at the small end.
  double tSmall = std::numeric_limits<double>::infinity();
  double tLarge = std::numeric_limits<double>::infinity();
  for (int rep = 0; rep < 3; ++rep) {
    tSmall = std::min(tSmall, randomQueryBench(*backend, cfg, 10000, rep).seconds);
    tLarge = std::min(tLarge, randomQueryBench(*backend, cfg, 100000, rep).seconds);
  }
  const double ratio = tLarge / tSmall;
  EXPECT_GT(ratio, 10.0 / 3.0);
  EXPECT_LT(ratio, 30.0);
}

TEST(MetricsCsv, HeaderRowsAndSummary) {
  const ScanLog log = forestLog(3, 200);
  const MapConfig cfg = forestConfig();
  const BenchResult res = runBenchmark(log, "rogmap", cfg);
  std::ostringstream out;
  writeMetricsCsv(out, res, cfg);
  const std::string text = out.str();
  EXPECT_NE(text.find("frame,t_tot_us,t_update_us,t_inflate_us,n_inf,mem_bytes\n"), std::string::npos);
  EXPECT_NE(text.find("# backend = rogmap"), std::string::npos);
  EXPECT_NE(text.find("# resolution = "), std::string::npos);  // config echo
  EXPECT_NE(text.find("# summary frames=3"), std::string::npos);
  // One data row per frame.
  EXPECT_NE(text.find("\n0,"), std::string::npos);
  EXPECT_NE(text.find("\n2,"), std::string::npos);
}

TEST(ParallelRaycast, MatchesSerialThroughRogMap) {
  const ScanLog log = forestLog(4, 800);
  const MapConfig cfg = forestConfig();
  RogMap serial(cfg, log.frames.front().origin);
  RogMap parallel(cfg, log.frames.front().origin);
  parallel.setParallelRaycastThreads(4);
  for (const Scan& s : log.frames) {
    serial.insertScan(s);
    parallel.insertScan(s);
  }
  serial.store().forEachCell([&](const GlobalIndex& g, const GridCell& c) {
    EXPECT_EQ(c.logOdds, parallel.store().at(g).logOdds);
    EXPECT_EQ(c.inflationCounter, parallel.store().at(g).inflationCounter);
  });
}

}  // namespace
}  // namespace rogmap::bench
