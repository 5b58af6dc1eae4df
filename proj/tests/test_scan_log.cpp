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

#include <cstdio>
#include <filesystem>
#include <random>
#include <sstream>

#include "rogmap/bench/scan_log.hpp"

namespace rogmap::bench {
namespace {

ScanLog uglyLog() {
  ScanLog log;
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> coarse(-1e4, 1e4);
  double ts = 0.0;
  for (int f = 0; f < 5; ++f) {
    Scan s;
    s.timestamp = ts;
    ts += 0.1 + f * 1e-7;
    s.origin = {coarse(rng), 0.1 * f, -2.0 / 3.0};
    const int n = f * 3;
    for (int i = 0; i < n; ++i) {
      s.points.push_back({coarse(rng) * 1e-13, coarse(rng), coarse(rng) * 1e17});
    }
    log.frames.push_back(s);
  }
  return log;
}

void expectEqual(const ScanLog& a, const ScanLog& b) {
  ASSERT_EQ(a.frames.size(), b.frames.size());
  for (std::size_t f = 0; f < a.frames.size(); ++f) {
    EXPECT_EQ(a.frames[f].timestamp, b.frames[f].timestamp);
    EXPECT_EQ(a.frames[f].origin, b.frames[f].origin);
    ASSERT_EQ(a.frames[f].points.size(), b.frames[f].points.size());
    for (std::size_t i = 0; i < a.frames[f].points.size(); ++i) {
      EXPECT_EQ(a.frames[f].points[i], b.frames[f].points[i]);  // bit-exact round trip
    }
  }
}

TEST(ScanLogText, EmptyStreamIsEmptyLog) {
  std::istringstream in("");
  EXPECT_TRUE(loadScanLogText(in).frames.empty());
  std::istringstream onlyComments("# nothing here\n\n");
  EXPECT_TRUE(loadScanLogText(onlyComments).frames.empty());
}

TEST(ScanLogText, ExactRoundTrip) {
  const ScanLog log = uglyLog();
  std::ostringstream out;
  saveScanLogText(log, out);
  std::istringstream in(out.str());
  expectEqual(log, loadScanLogText(in));
}

TEST(ScanLogBinary, ExactRoundTrip) {
  const ScanLog log = uglyLog();
  std::ostringstream out(std::ios::binary);
  saveScanLogBinary(log, out);
  std::istringstream in(out.str(), std::ios::binary);
  expectEqual(log, loadScanLogBinary(in));
}

TEST(ScanLog, FileRoundTripSniffsFormat) {
  const ScanLog log = uglyLog();
  const std::string textPath = (std::filesystem::temp_directory_path() / "rogmap_log_text.txt").string();
  const std::string binPath = (std::filesystem::temp_directory_path() / "rogmap_log_bin.rog").string();
  saveScanLog(log, textPath, false);
  saveScanLog(log, binPath, true);
  expectEqual(log, loadScanLog(textPath));
  expectEqual(log, loadScanLog(binPath));
  std::remove(textPath.c_str());
  std::remove(binPath.c_str());
}

TEST(ScanLogText, CountMismatchReportsLine) {
  std::istringstream in("FRAME 0 0 0 0 3\n1 2 3\n4 5 6\nFRAME 1 0 0 0 0\n");
  try {
    loadScanLogText(in);
    FAIL() << "expected ParseError";
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 4);  // the premature FRAME line
  }
}

TEST(ScanLogText, TruncatedFileReportsMissingPoints) {
  std::istringstream in("FRAME 0 0 0 0 2\n1 2 3\n");
  EXPECT_THROW(loadScanLogText(in), ParseError);
}

TEST(ScanLogText, RejectsMalformedInput) {
  {
    std::istringstream in("FRAME 0 0 0 0\n");  // missing count
    EXPECT_THROW(loadScanLogText(in), ParseError);
  }
  {
    std::istringstream in("1 2 3\n");  // point before any frame
    EXPECT_THROW(loadScanLogText(in), ParseError);
  }
  {
    std::istringstream in("FRAME 0 0 0 0 1\n1 2\n");  // short point line
    EXPECT_THROW(loadScanLogText(in), ParseError);
  }
  {
    std::istringstream in("FRAME 1 0 0 0 0\nFRAME 0 0 0 0 0\n");  // decreasing timestamps
    EXPECT_THROW(loadScanLogText(in), ParseError);
  }
}

TEST(ScanLogText, CommentsAnywhere) {
  std::istringstream in("# header\nFRAME 0 1 2 3 1 # inline\n0.5 0.5 0.5\n# trailing\n");
  const ScanLog log = loadScanLogText(in);
  ASSERT_EQ(log.frames.size(), 1u);
  EXPECT_EQ(log.frames[0].origin, (Vec3d{1, 2, 3}));
  ASSERT_EQ(log.frames[0].points.size(), 1u);
}

}  // namespace
}  // namespace rogmap::bench
