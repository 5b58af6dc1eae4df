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

#include <cstddef>
#include <cstdint>
#include <functional>
#include <stdexcept>
#include <string>

namespace rogmap {

/// Unbounded grid coordinates. Any signed triple is valid; the world is
/// discretized into cells whose centers sit at integer multiples of the
/// resolution, so cell (i) covers [(i - 0.5) * r, (i + 0.5) * r) per axis.
struct GlobalIndex {
  std::int32_t ix = 0;
  std::int32_t iy = 0;
  std::int32_t iz = 0;

  constexpr bool operator==(const GlobalIndex&) const = default;

  constexpr GlobalIndex operator+(const GlobalIndex& o) const {
    return {ix + o.ix, iy + o.iy, iz + o.iz};
  }
  constexpr GlobalIndex operator-(const GlobalIndex& o) const {
    return {ix - o.ix, iy - o.iy, iz - o.iz};
  }

  /// Lexicographic order; used for canonical (diff-friendly) output.
  constexpr bool operator<(const GlobalIndex& o) const {
    if (ix != o.ix) return ix < o.ix;
    if (iy != o.iy) return iy < o.iy;
    return iz < o.iz;
  }
};

/// Coordinates inside the local window, per axis in [0, s_k - 1].
struct LocalIndex {
  std::int32_t ix = 0;
  std::int32_t iy = 0;
  std::int32_t iz = 0;

  constexpr bool operator==(const LocalIndex&) const = default;
};

/// Offset into the flat cell buffer, in [0, sx*sy*sz).
struct Address {
  std::size_t value = 0;

  constexpr bool operator==(const Address&) const = default;
  constexpr bool operator<(const Address& o) const { return value < o.value; }
};

/// Dimensions of the local window in cells plus the metric resolution.
/// All extents must be odd so the window has a well-defined center cell.
struct WindowShape {
  std::int32_t sx;
  std::int32_t sy;
  std::int32_t sz;
  double resolution;  // meters per cell

  WindowShape(std::int32_t sx_, std::int32_t sy_, std::int32_t sz_, double resolution_)
      : sx(sx_), sy(sy_), sz(sz_), resolution(resolution_) {
    auto checkAxis = [](std::int32_t s, const char* name) {
      if (s <= 0 || s % 2 == 0) {
        throw std::invalid_argument("window extent " + std::string(name) + " must be a positive odd cell count, got " +
                                    std::to_string(s));
      }
    };
    checkAxis(sx, "sx");
    checkAxis(sy, "sy");
    checkAxis(sz, "sz");
    if (!(resolution > 0.0)) {
      throw std::invalid_argument("resolution must be > 0");
    }
  }

  constexpr std::int32_t halfX() const { return sx / 2; }
  constexpr std::int32_t halfY() const { return sy / 2; }
  constexpr std::int32_t halfZ() const { return sz / 2; }

  constexpr std::size_t cellCount() const {
    return static_cast<std::size_t>(sx) * static_cast<std::size_t>(sy) * static_cast<std::size_t>(sz);
  }
};

/// Three-state occupancy classification of a cell's log-odds value.
enum class OccState : std::uint8_t { Unknown = 0, KnownFree = 1, Occupied = 2 };

inline const char* toString(OccState s) {
  switch (s) {
    case OccState::Unknown: return "Unknown";
    case OccState::KnownFree: return "KnownFree";
    case OccState::Occupied: return "Occupied";
  }
  return "?";
}

/// Result of a point/index lookup. Out-of-window is a distinct outcome, not
/// an error and not Unknown: the map simply holds no information there.
struct QueryResult {
  bool inWindow = false;
  OccState state = OccState::Unknown;  // meaningful only when inWindow
  bool inflated = false;               // inflationCounter >= 1

  bool isInflatedOccupied() const { return inWindow && inflated; }
};

struct GlobalIndexHash {
  std::size_t operator()(const GlobalIndex& g) const {
    // Teschner et al. spatial hash; good spread for clustered indexes.
    const std::uint64_t h = (static_cast<std::uint64_t>(static_cast<std::uint32_t>(g.ix)) * 73856093ULL) ^
                            (static_cast<std::uint64_t>(static_cast<std::uint32_t>(g.iy)) * 19349669ULL) ^
                            (static_cast<std::uint64_t>(static_cast<std::uint32_t>(g.iz)) * 83492791ULL);
    return static_cast<std::size_t>(h);
  }
};

}  // namespace rogmap
