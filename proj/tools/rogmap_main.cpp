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

// Command-line front end: generate synthetic scan logs, replay them through
// a mapping backend, and benchmark backends against each other.
//
//   rogmap simulate --scene forest.scene --traj circle:0,0,0.4,1.5 \
//       --frames 200 --rays 2000 --max-range 8 --output forest.log
//   rogmap map --log forest.log --backend rogmap --output run1
//   rogmap map --selftest
//   rogmap bench --log forest.log --backends rogmap,uniform-fixed --output bench.csv
//
// Data goes to files; progress and errors go to standard error. Exit code 0
// on success, nonzero on any error. Config precedence: command-line flag >
// config file > built-in default.

#include <CLI11.hpp>
#include <fstream>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>

#include "rogmap/bench/dump.hpp"
#include "rogmap/bench/harness.hpp"
#include "rogmap/bench/scan_log.hpp"
#include "rogmap/rog_map.hpp"
#include "rogmap/sim/lidar.hpp"
#include "rogmap/sim/scene.hpp"

namespace {

using namespace rogmap;

struct MapFlags {
  std::string configPath;
  double resolution = 0.0;
  std::vector<double> mapSizeMeters;
  double inflationDistance = 0.0;
  double maxRaycast = 0.0;
  double slideThreshold = 0.0;
  std::vector<double> fixedCenter;
};

void addMapFlags(CLI::App* cmd, MapFlags& f) {
  cmd->add_option("--config", f.configPath, "config file (key = value)");
  cmd->add_option("--resolution", f.resolution, "cell size in meters");
  cmd->add_option("--map-size", f.mapSizeMeters, "window size X Y Z in meters (rounded up to odd cell counts)")
      ->expected(3);
  cmd->add_option("--inflation-distance", f.inflationDistance, "obstacle inflation radius in meters");
  cmd->add_option("--max-raycast", f.maxRaycast, "maximum ray casting distance in meters");
  cmd->add_option("--slide-threshold", f.slideThreshold, "window recenter threshold in meters");
  cmd->add_option("--fixed-center", f.fixedCenter, "map box center for fixed-origin backends")->expected(3);
}

MapConfig resolveConfig(const CLI::App* cmd, const MapFlags& f) {
  MapConfig cfg;
  if (!f.configPath.empty()) cfg = loadMapConfigFile(f.configPath);

  double resolution = cfg.shape.resolution;
  std::int32_t sx = cfg.shape.sx, sy = cfg.shape.sy, sz = cfg.shape.sz;
  if (cmd->count("--resolution") > 0) resolution = f.resolution;
  if (cmd->count("--map-size") > 0) {
    sx = metersToOddCells(f.mapSizeMeters[0], resolution);
    sy = metersToOddCells(f.mapSizeMeters[1], resolution);
    sz = metersToOddCells(f.mapSizeMeters[2], resolution);
  }
  cfg.shape = WindowShape(sx, sy, sz, resolution);
  if (cmd->count("--inflation-distance") > 0) cfg.inflationDistance = f.inflationDistance;
  if (cmd->count("--max-raycast") > 0) cfg.maxRaycastDistance = f.maxRaycast;
  if (cmd->count("--slide-threshold") > 0) cfg.slideThreshold = f.slideThreshold;
  if (cmd->count("--fixed-center") > 0) cfg.fixedMapCenter = {f.fixedCenter[0], f.fixedCenter[1], f.fixedCenter[2]};
  cfg.validate();
  return cfg;
}

// Trajectory specs: fixed:x,y,z | line:x0,y0,z0:x1,y1,z1 | circle:cx,cy,cz,r
std::function<Vec3d(int, int)> parseTrajectory(const std::string& spec) {
  auto splitNums = [](const std::string& s) {
    std::vector<double> out;
    std::stringstream ss(s);
    std::string tok;
    while (std::getline(ss, tok, ',')) out.push_back(std::stod(tok));
    return out;
  };
  const auto colon = spec.find(':');
  if (colon == std::string::npos) throw std::invalid_argument("trajectory: expected '<kind>:<numbers>'");
  const std::string kind = spec.substr(0, colon);
  const std::string rest = spec.substr(colon + 1);

  if (kind == "fixed") {
    const auto v = splitNums(rest);
    if (v.size() != 3) throw std::invalid_argument("trajectory: fixed needs x,y,z");
    return [v](int, int) { return Vec3d{v[0], v[1], v[2]}; };
  }
  if (kind == "line") {
    const auto sep = rest.find(':');
    if (sep == std::string::npos) throw std::invalid_argument("trajectory: line needs start:end");
    const auto a = splitNums(rest.substr(0, sep));
    const auto b = splitNums(rest.substr(sep + 1));
    if (a.size() != 3 || b.size() != 3) throw std::invalid_argument("trajectory: line needs x0,y0,z0:x1,y1,z1");
    return [a, b](int frame, int frames) {
      const double u = frames <= 1 ? 0.0 : static_cast<double>(frame) / (frames - 1);
      return Vec3d{a[0] + (b[0] - a[0]) * u, a[1] + (b[1] - a[1]) * u, a[2] + (b[2] - a[2]) * u};
    };
  }
  if (kind == "circle") {
    const auto v = splitNums(rest);
    if (v.size() != 4) throw std::invalid_argument("trajectory: circle needs cx,cy,cz,radius");
    return [v](int frame, int frames) {
      const double angle = 2.0 * std::numbers::pi * frame / std::max(frames, 1);
      return Vec3d{v[0] + v[3] * std::cos(angle), v[1] + v[3] * std::sin(angle), v[2]};
    };
  }
  throw std::invalid_argument("trajectory: unknown kind '" + kind + "' (fixed, line, circle)");
}

int runSimulate(const std::string& scenePath, const std::string& trajSpec, int frames, std::size_t rays,
                double maxRange, const std::string& patternName, bool emitMaxRange, std::uint64_t seed,
                const std::string& outputPath, bool binary) {
  const sim::Scene scene = sim::loadSceneFile(scenePath);
  const auto trajectory = parseTrajectory(trajSpec);

  sim::SimLidarConfig lidar;
  lidar.raysPerScan = rays;
  lidar.maxRange = maxRange;
  lidar.emitMaxRangePoints = emitMaxRange;
  if (patternName == "fibonacci") lidar.pattern = sim::RayPattern::SphericalFibonacci;
  else if (patternName == "random") lidar.pattern = sim::RayPattern::UniformRandom;
  else throw std::invalid_argument("unknown ray pattern '" + patternName + "' (fibonacci, random)");

  std::mt19937_64 rng(seed);
  bench::ScanLog log;
  for (int f = 0; f < frames; ++f) {
    log.frames.push_back(sim::simulateScan(scene, trajectory(f, frames), lidar, rng, 0.1 * f));
  }
  bench::saveScanLog(log, outputPath, binary);
  std::cerr << "simulate: wrote " << log.frames.size() << " frames to " << outputPath << "\n";
  return 0;
}

// Compact invariant suite behind `map --selftest`. Recomputes everything
// from first principles; any mismatch is a hard failure.
int runSelftest() {
  int failures = 0;
  auto check = [&](bool ok, const std::string& what) {
    std::cerr << (ok ? "selftest: ok   " : "selftest: FAIL ") << what << "\n";
    if (!ok) ++failures;
  };

  {
    // Index math round trip over every window placement in a small range.
    const WindowShape shape(5, 5, 5, 0.1);
    bool ok = true;
    for (std::int32_t cx = -7; cx <= 7 && ok; ++cx)
      for (std::int32_t cy = -7; cy <= 7 && ok; ++cy)
        for (std::int32_t cz = -7; cz <= 7 && ok; ++cz) {
          const GlobalIndex origin{cx, cy, cz};
          for (std::int32_t x = cx - 2; x <= cx + 2 && ok; ++x)
            for (std::int32_t y = cy - 2; y <= cy + 2 && ok; ++y)
              for (std::int32_t z = cz - 2; z <= cz + 2 && ok; ++z) {
                const GlobalIndex g{x, y, z};
                ok = localToGlobal(globalToLocal(g, shape), origin, shape) == g;
              }
        }
    check(ok, "index round trip");
  }

  {
    // Ray traversal: endpoints, connectivity.
    std::mt19937 rng(1);
    std::uniform_real_distribution<double> coord(-5.0, 5.0);
    bool ok = true;
    for (int i = 0; i < 200 && ok; ++i) {
      const Vec3d a{coord(rng), coord(rng), coord(rng)};
      const Vec3d b{coord(rng), coord(rng), coord(rng)};
      const auto cells = traverseRay(a, b, 0.25);
      ok = cells.front() == worldToGlobal(a, 0.25) && cells.back() == worldToGlobal(b, 0.25);
      for (std::size_t k = 1; k < cells.size() && ok; ++k) {
        const GlobalIndex d = cells[k] - cells[k - 1];
        ok = std::abs(d.ix) + std::abs(d.iy) + std::abs(d.iz) == 1;
      }
    }
    check(ok, "ray traversal chain");
  }

  {
    // Inflation counters vs from-scratch recount under random churn.
    const ProbParams prob;
    OccupancyStore store(WindowShape(11, 11, 9, 1.0), prob);
    const OffsetTable table = buildOffsetTable(1.5, 1.0);
    std::mt19937 rng(2);
    std::uniform_int_distribution<std::int32_t> xy(-5, 5);
    std::uniform_int_distribution<std::int32_t> zz(-4, 4);
    bool ok = true;
    for (int frame = 0; frame < 50 && ok; ++frame) {
      std::vector<CellTransition> transitions;
      for (int k = 0; k < 5; ++k) {
        const GlobalIndex g{xy(rng), xy(rng), zz(rng)};
        GridCell& cell = store.at(g);
        const bool occ = stateOf(cell.logOdds, prob) == OccState::Occupied;
        const StateTransition tr = occ ? applyBatch(cell, 0, 8, prob) : applyBatch(cell, 8, 0, prob);
        if (tr.changed()) transitions.push_back({g, tr});
      }
      processTransitions(transitions, table, store);
      store.forEachCell([&](const GlobalIndex& n, const GridCell& c) {
        if (!ok) return;
        std::uint32_t want = 0;
        for (const GlobalIndex& p : table.offsets) {
          const GlobalIndex m = n + p;
          if (store.contains(m) && store.stateAt(m) == OccState::Occupied) ++want;
        }
        ok = c.inflationCounter == want;
      });
    }
    check(ok && store.counterUnderflows() == 0, "incremental inflation counters");
  }

  {
    // Sliding: retained cells bit-identical, counters still exact.
    const ProbParams prob;
    const WindowShape shape(9, 9, 7, 0.5);
    OccupancyStore store(shape, prob);
    const OffsetTable table = buildOffsetTable(1.0, 0.5);
    std::mt19937 rng(3);
    std::uniform_real_distribution<double> jump(-1.5, 1.5);
    Vec3d pos{0, 0, 0};
    bool ok = true;
    for (int step = 0; step < 40 && ok; ++step) {
      for (int k = 0; k < 3; ++k) {
        const GlobalIndex g = store.center() + GlobalIndex{static_cast<std::int32_t>(rng() % shape.sx) - shape.halfX(),
                                                           static_cast<std::int32_t>(rng() % shape.sy) - shape.halfY(),
                                                           static_cast<std::int32_t>(rng() % shape.sz) - shape.halfZ()};
        const StateTransition tr = store.applyCounts(g, 4, 0);
        if (tr.rising()) updateNeighborCounter(g, +1, table, store);
      }
      pos = pos + Vec3d{jump(rng), jump(rng), 0.5 * jump(rng)};
      slideTo(pos, store, table);
      store.forEachCell([&](const GlobalIndex& n, const GridCell& c) {
        if (!ok) return;
        std::uint32_t want = 0;
        for (const GlobalIndex& p : table.offsets) {
          const GlobalIndex m = n + p;
          if (store.contains(m) && store.stateAt(m) == OccState::Occupied) ++want;
        }
        ok = c.inflationCounter == want;
      });
    }
    check(ok && store.counterUnderflows() == 0, "zero-copy sliding counter repair");
  }

  std::cerr << (failures == 0 ? "selftest: all checks passed\n" : "selftest: FAILURES\n");
  return failures == 0 ? 0 : 1;
}

int runMap(const CLI::App* cmd, const MapFlags& flags, const std::string& logPath, const std::string& backendName,
           const std::string& outputPrefix, unsigned parallelThreads) {
  const MapConfig cfg = resolveConfig(cmd, flags);
  const bench::ScanLog log = bench::loadScanLog(logPath);

  const double minExtent =
      std::min({cfg.shape.sx * cfg.shape.resolution, cfg.shape.sy * cfg.shape.resolution,
                cfg.shape.sz * cfg.shape.resolution});
  if (minExtent < 2.0 * cfg.maxRaycastDistance) {
    std::cerr << "map: warning: window extent " << minExtent << " m is below twice the max raycast distance ("
              << 2.0 * cfg.maxRaycastDistance << " m); rays will truncate at the window boundary\n";
  }

  const Vec3d firstOrigin = log.frames.empty() ? cfg.fixedMapCenter : log.frames.front().origin;
  const auto backend = bench::makeBackend(backendName, cfg, firstOrigin, parallelThreads);
  const bench::BenchResult result = bench::runBenchmark(log, *backend);

  const std::string csvPath = outputPrefix + ".metrics.csv";
  std::ofstream csv(csvPath);
  if (!csv) throw std::runtime_error("cannot write " + csvPath);
  bench::writeMetricsCsv(csv, result, cfg);

  const std::string dumpPath = outputPrefix + ".occ.txt";
  std::ofstream dump(dumpPath);
  if (!dump) throw std::runtime_error("cannot write " + dumpPath);
  bench::writeOccupancyDump(dump, *backend);

  std::cerr << "map: " << result.summary.frames << " frames through " << backendName << ", mean t_tot "
            << result.summary.meanTTotSec * 1e6 << " us, mean n_inf " << result.summary.meanNInf << "\n"
            << "map: wrote " << csvPath << " and " << dumpPath << "\n";
  return 0;
}

int runBench(const CLI::App* cmd, const MapFlags& flags, const std::string& logPath,
             const std::string& backendsCsv, int reps, std::size_t queries, std::uint64_t seed,
             const std::string& outputPath, unsigned parallelThreads) {
  const MapConfig cfg = resolveConfig(cmd, flags);
  const bench::ScanLog log = bench::loadScanLog(logPath);

  std::vector<std::string> names;
  std::stringstream ss(backendsCsv);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    if (!tok.empty()) names.push_back(tok);
  }
  if (names.empty()) throw std::invalid_argument("bench: no backends given");

  std::ofstream out(outputPath);
  if (!out) throw std::runtime_error("cannot write " + outputPath);
  std::ostringstream cfgText;
  saveMapConfig(cfg, cfgText);
  std::istringstream cfgLines(cfgText.str());
  std::string line;
  while (std::getline(cfgLines, line)) out << "# " << line << "\n";
  out << "backend,rep,t_tot_ms,t_update_ms,n_inf,t_inflate_ms,t_query_ms,mem_bytes\n";

  const Vec3d firstOrigin = log.frames.empty() ? cfg.fixedMapCenter : log.frames.front().origin;
  for (const std::string& name : names) {
    for (int rep = 0; rep < reps; ++rep) {
      const auto backend = bench::makeBackend(name, cfg, firstOrigin, parallelThreads);
      const bench::BenchResult result = bench::runBenchmark(log, *backend);
      const bench::QueryBenchResult qb = bench::randomQueryBench(*backend, cfg, queries, seed + rep);
      out << name << ',' << rep << ',' << result.summary.meanTTotSec * 1e3 << ','
          << result.summary.meanTUpdateSec * 1e3 << ',' << result.summary.meanNInf << ','
          << result.summary.meanTInflateSec * 1e3 << ',' << qb.seconds * 1e3 << ','
          << result.summary.peakMemoryBytes << "\n";
      std::cerr << "bench: " << name << " rep " << rep << ": mean t_tot " << result.summary.meanTTotSec * 1e3
                << " ms, mean n_inf " << result.summary.meanNInf << ", t_q " << qb.seconds * 1e3 << " ms\n";
    }
  }
  std::cerr << "bench: wrote " << outputPath << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"robocentric occupancy grid mapping toolkit"};
  app.require_subcommand(1);

  // simulate
  auto* simulate = app.add_subcommand("simulate", "generate a deterministic synthetic scan log");
  std::string scenePath, trajSpec, simOutput, patternName = "fibonacci";
  int simFrames = 100;
  std::size_t simRays = 2000;
  double simMaxRange = 10.0;
  bool emitMaxRange = false, simBinary = false;
  std::uint64_t simSeed = 1;
  simulate->add_option("--scene", scenePath, "scene description file")->required();
  simulate->add_option("--traj", trajSpec, "trajectory: fixed:x,y,z | line:x0,y0,z0:x1,y1,z1 | circle:cx,cy,cz,r")
      ->required();
  simulate->add_option("--frames", simFrames, "number of frames");
  simulate->add_option("--rays", simRays, "rays per scan");
  simulate->add_option("--max-range", simMaxRange, "sensor range in meters");
  simulate->add_option("--pattern", patternName, "ray pattern: fibonacci | random");
  simulate->add_flag("--emit-max-range", emitMaxRange, "emit max-range points for rays with no hit");
  simulate->add_option("--seed", simSeed, "random seed");
  simulate->add_option("--output", simOutput, "output scan log path")->required();
  simulate->add_flag("--binary", simBinary, "write the binary log format");

  // map
  auto* mapCmd = app.add_subcommand("map", "replay a scan log through one backend");
  MapFlags mapFlags;
  std::string mapLog, mapBackend = "rogmap", mapOutput;
  unsigned mapParallel = 1;
  bool selftest = false;
  addMapFlags(mapCmd, mapFlags);
  mapCmd->add_option("--log", mapLog, "scan log to replay");
  mapCmd->add_option("--backend", mapBackend, "rogmap | uniform-fixed | fiimap-style | hash");
  mapCmd->add_option("--output", mapOutput, "output prefix (<prefix>.metrics.csv, <prefix>.occ.txt)");
  mapCmd->add_option("--parallel-raycast", mapParallel, "ray casting threads (rogmap backend)");
  mapCmd->add_flag("--selftest", selftest, "run the built-in invariant suite and exit");

  // bench
  auto* benchCmd = app.add_subcommand("bench", "compare backends on one log");
  MapFlags benchFlags;
  std::string benchLog, benchBackends = "rogmap,uniform-fixed,fiimap-style,hash", benchOutput;
  int benchReps = 1;
  std::size_t benchQueries = 100000;
  std::uint64_t benchSeed = 1;
  unsigned benchParallel = 1;
  addMapFlags(benchCmd, benchFlags);
  benchCmd->add_option("--log", benchLog, "scan log to replay")->required();
  benchCmd->add_option("--backends", benchBackends, "comma-separated backend list");
  benchCmd->add_option("--reps", benchReps, "repetitions per backend");
  benchCmd->add_option("--queries", benchQueries, "random queries per repetition");
  benchCmd->add_option("--seed", benchSeed, "query sampling seed");
  benchCmd->add_option("--output", benchOutput, "summary CSV path")->required();
  benchCmd->add_option("--parallel-raycast", benchParallel, "ray casting threads (rogmap backend)");

  CLI11_PARSE(app, argc, argv);

  try {
    if (simulate->parsed()) {
      return runSimulate(scenePath, trajSpec, simFrames, simRays, simMaxRange, patternName, emitMaxRange, simSeed,
                         simOutput, simBinary);
    }
    if (mapCmd->parsed()) {
      if (selftest) return runSelftest();
      if (mapLog.empty() || mapOutput.empty()) {
        std::cerr << "map: --log and --output are required (or use --selftest)\n";
        return 1;
      }
      return runMap(mapCmd, mapFlags, mapLog, mapBackend, mapOutput, mapParallel);
    }
    if (benchCmd->parsed()) {
      return runBench(benchCmd, benchFlags, benchLog, benchBackends, benchReps, benchQueries, benchSeed, benchOutput,
                      benchParallel);
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
