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

#include <ostream>

#include "rogmap/bench/backends.hpp"

namespace rogmap::bench {

/// Canonical occupancy dump: Occupied cells then InflatedOccupied cells,
/// each sorted lexicographically by (ix, iy, iz) so two runs can be diffed.
inline void writeOccupancyDump(std::ostream& out, const Backend& backend) {
  out << "# occupancy dump, backend = " << backend.name() << "\n";
  for (const GlobalIndex& g : backend.occupiedCells()) {
    out << "occ " << g.ix << ' ' << g.iy << ' ' << g.iz << "\n";
  }
  for (const GlobalIndex& g : backend.inflatedCells()) {
    out << "inf " << g.ix << ' ' << g.iy << ' ' << g.iz << "\n";
  }
}

}  // namespace rogmap::bench
