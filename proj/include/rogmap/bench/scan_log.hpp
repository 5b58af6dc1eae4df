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

#include <bit>
#include <charconv>
#include <cstring>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "rogmap/core/errors.hpp"
#include "rogmap/raycast.hpp"

namespace rogmap::bench {

/// Replayable sequence of sensor frames. Timestamps are nondecreasing.
struct ScanLog {
  std::vector<Scan> frames;
};

inline constexpr char kBinaryMagic[6] = {'R', 'O', 'G', 'L', '1', '\n'};

namespace detail {

/// Shortest representation that parses back to the identical double.
inline void appendDouble(std::string& out, double v) {
  char buf[32];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v);
  out.append(buf, res.ptr);
}

inline double parseDouble(const std::string& tok, long lineNo) {
  double v = 0.0;
  const char* b = tok.data();
  const auto res = std::from_chars(b, b + tok.size(), v);
  if (res.ec != std::errc{} || res.ptr != b + tok.size()) {
    throw ParseError("scan log: bad number '" + tok + "'", lineNo);
  }
  return v;
}

static_assert(std::endian::native == std::endian::little, "binary scan logs are little-endian");

template <typename T>
void writeRaw(std::ostream& out, const T& v) {
  out.write(reinterpret_cast<const char*>(&v), sizeof(T));
}

template <typename T>
T readRaw(std::istream& in) {
  T v{};
  in.read(reinterpret_cast<char*>(&v), sizeof(T));
  if (!in) throw ParseError("scan log: truncated binary data", 0);
  return v;
}

}  // namespace detail

// Text format, line oriented:
//   # comment
//   FRAME <timestamp> <ox> <oy> <oz> <n>
//   <x> <y> <z>            (n point lines)
inline void saveScanLogText(const ScanLog& log, std::ostream& out) {
  std::string line;
  for (const Scan& s : log.frames) {
    line.clear();
    line += "FRAME ";
    detail::appendDouble(line, s.timestamp);
    line += ' ';
    detail::appendDouble(line, s.origin.x);
    line += ' ';
    detail::appendDouble(line, s.origin.y);
    line += ' ';
    detail::appendDouble(line, s.origin.z);
    line += ' ';
    line += std::to_string(s.points.size());
    line += '\n';
    out << line;
    for (const Vec3d& p : s.points) {
      line.clear();
      detail::appendDouble(line, p.x);
      line += ' ';
      detail::appendDouble(line, p.y);
      line += ' ';
      detail::appendDouble(line, p.z);
      line += '\n';
      out << line;
    }
  }
}

inline ScanLog loadScanLogText(std::istream& in) {
  ScanLog log;
  std::string line;
  long lineNo = 0;
  std::size_t pointsLeft = 0;
  double lastTimestamp = -std::numeric_limits<double>::infinity();

  while (std::getline(in, line)) {
    ++lineNo;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    std::istringstream ls(line);
    std::string tok;
    if (!(ls >> tok)) continue;

    if (tok == "FRAME") {
      if (pointsLeft != 0) {
        throw ParseError("scan log: frame ended early, " + std::to_string(pointsLeft) + " points missing", lineNo);
      }
      std::string ts, ox, oy, oz, n;
      if (!(ls >> ts >> ox >> oy >> oz >> n)) throw ParseError("scan log: malformed FRAME header", lineNo);
      Scan scan;
      scan.timestamp = detail::parseDouble(ts, lineNo);
      scan.origin = {detail::parseDouble(ox, lineNo), detail::parseDouble(oy, lineNo),
                     detail::parseDouble(oz, lineNo)};
      if (scan.timestamp < lastTimestamp) throw ParseError("scan log: timestamps must be nondecreasing", lineNo);
      lastTimestamp = scan.timestamp;
      std::size_t count = 0;
      try {
        count = std::stoul(n);
      } catch (const std::exception&) {
        throw ParseError("scan log: bad point count '" + n + "'", lineNo);
      }
      scan.points.reserve(count);
      log.frames.push_back(std::move(scan));
      pointsLeft = count;
    } else {
      if (log.frames.empty() || pointsLeft == 0) {
        throw ParseError("scan log: point line outside a frame", lineNo);
      }
      std::string y, z;
      if (!(ls >> y >> z)) throw ParseError("scan log: point line needs 3 numbers", lineNo);
      log.frames.back().points.push_back({detail::parseDouble(tok, lineNo), detail::parseDouble(y, lineNo),
                                          detail::parseDouble(z, lineNo)});
      --pointsLeft;
    }
  }
  if (pointsLeft != 0) {
    throw ParseError("scan log: file ended with " + std::to_string(pointsLeft) + " points missing", lineNo);
  }
  return log;
}

// Binary format: magic "ROGL1\n", then u64 frame count, then per frame
// f64 timestamp, f64 ox oy oz, u64 n, n * (f64 x y z). Little-endian.
inline void saveScanLogBinary(const ScanLog& log, std::ostream& out) {
  out.write(kBinaryMagic, sizeof(kBinaryMagic));
  detail::writeRaw(out, static_cast<std::uint64_t>(log.frames.size()));
  for (const Scan& s : log.frames) {
    detail::writeRaw(out, s.timestamp);
    detail::writeRaw(out, s.origin.x);
    detail::writeRaw(out, s.origin.y);
    detail::writeRaw(out, s.origin.z);
    detail::writeRaw(out, static_cast<std::uint64_t>(s.points.size()));
    for (const Vec3d& p : s.points) {
      detail::writeRaw(out, p.x);
      detail::writeRaw(out, p.y);
      detail::writeRaw(out, p.z);
    }
  }
}

inline ScanLog loadScanLogBinary(std::istream& in) {
  char magic[sizeof(kBinaryMagic)];
  in.read(magic, sizeof(magic));
  if (!in || std::memcmp(magic, kBinaryMagic, sizeof(magic)) != 0) {
    throw ParseError("scan log: bad binary magic", 0);
  }
  ScanLog log;
  const auto frames = detail::readRaw<std::uint64_t>(in);
  double lastTimestamp = -std::numeric_limits<double>::infinity();
  for (std::uint64_t f = 0; f < frames; ++f) {
    Scan s;
    s.timestamp = detail::readRaw<double>(in);
    if (s.timestamp < lastTimestamp) throw ParseError("scan log: timestamps must be nondecreasing", 0);
    lastTimestamp = s.timestamp;
    s.origin.x = detail::readRaw<double>(in);
    s.origin.y = detail::readRaw<double>(in);
    s.origin.z = detail::readRaw<double>(in);
    const auto n = detail::readRaw<std::uint64_t>(in);
    s.points.reserve(n);
    for (std::uint64_t i = 0; i < n; ++i) {
      Vec3d p;
      p.x = detail::readRaw<double>(in);
      p.y = detail::readRaw<double>(in);
      p.z = detail::readRaw<double>(in);
      s.points.push_back(p);
    }
    log.frames.push_back(std::move(s));
  }
  return log;
}

/// Loads either format, sniffing the binary magic.
inline ScanLog loadScanLog(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("scan log: cannot open '" + path + "'", 0);
  char magic[sizeof(kBinaryMagic)] = {};
  in.read(magic, sizeof(magic));
  const bool binary = in.gcount() == sizeof(magic) && std::memcmp(magic, kBinaryMagic, sizeof(magic)) == 0;
  in.clear();
  in.seekg(0);
  return binary ? loadScanLogBinary(in) : loadScanLogText(in);
}

inline void saveScanLog(const ScanLog& log, const std::string& path, bool binary = false) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ParseError("scan log: cannot write '" + path + "'", 0);
  if (binary) saveScanLogBinary(log, out);
  else saveScanLogText(log, out);
}

}  // namespace rogmap::bench
