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

#include "rogmap/inflation.hpp"
#include "support/oracles.hpp"

namespace rogmap {
namespace {

TEST(OffsetTable, ZeroDistanceIsSelfOnly) {
  const OffsetTable t = buildOffsetTable(0.0, 0.1);
  ASSERT_EQ(t.size(), 1u);
  EXPECT_EQ(t.offsets[0], (GlobalIndex{0, 0, 0}));
}

TEST(OffsetTable, UnitBallHasSevenOffsets) {
  const OffsetTable t = buildOffsetTable(1.0, 1.0);
  EXPECT_EQ(t.size(), 7u);
}

TEST(OffsetTable, FineResolutionBallMatchesEnumeration) {
  const OffsetTable t = buildOffsetTable(0.2, 0.05);
  // Independent enumeration: integer triples with ||o||^2 <= 4^2.
  std::size_t expected = 0;
  for (int x = -4; x <= 4; ++x)
    for (int y = -4; y <= 4; ++y)
      for (int z = -4; z <= 4; ++z)
        if (x * x + y * y + z * z <= 16) ++expected;
  EXPECT_EQ(expected, 257u);
  EXPECT_EQ(t.size(), expected);
}

TEST(OffsetTable, SymmetricSortedAndContainsZero) {
  const OffsetTable t = buildOffsetTable(0.25, 0.1);
  EXPECT_TRUE(std::is_sorted(t.offsets.begin(), t.offsets.end()));
  bool hasZero = false;
  for (const GlobalIndex& o : t.offsets) {
    hasZero |= o == GlobalIndex{0, 0, 0};
    const GlobalIndex neg{-o.ix, -o.iy, -o.iz};
    EXPECT_TRUE(std::find(t.offsets.begin(), t.offsets.end(), neg) != t.offsets.end());
  }
  EXPECT_TRUE(hasZero);
}

TEST(OffsetTable, BoundaryIsInclusive) {
  // Offsets at exactly the inflation distance belong to the ball.
  const OffsetTable t = buildOffsetTable(0.3, 0.1);
  EXPECT_TRUE(std::find(t.offsets.begin(), t.offsets.end(), GlobalIndex{3, 0, 0}) != t.offsets.end());
  EXPECT_TRUE(std::find(t.offsets.begin(), t.offsets.end(), GlobalIndex{4, 0, 0}) == t.offsets.end());
}

TEST(OffsetTable, FailsFastWhenCounterWouldOverflow) {
  // ~65 cells radius -> ball >> 16-bit counter capacity.
  EXPECT_THROW(buildOffsetTable(6.5, 0.1), std::invalid_argument);
}

TEST(UpdateNeighborCounter, InteriorTouchesWholeTable) {
  OccupancyStore store(WindowShape(9, 9, 9, 1.0), ProbParams{});
  const OffsetTable t = buildOffsetTable(1.0, 1.0);
  EXPECT_EQ(updateNeighborCounter({0, 0, 0}, +1, t, store), 7u);
  std::size_t nonzero = 0;
  store.forEachCell([&](const GlobalIndex&, const GridCell& c) { nonzero += c.inflationCounter == 1; });
  EXPECT_EQ(nonzero, 7u);
}

TEST(UpdateNeighborCounter, RisingThenFallingCancels) {
  OccupancyStore store(WindowShape(9, 9, 9, 1.0), ProbParams{});
  const OffsetTable t = buildOffsetTable(1.0, 1.0);
  updateNeighborCounter({1, 2, 3}, +1, t, store);
  updateNeighborCounter({1, 2, 3}, -1, t, store);
  store.forEachCell([&](const GlobalIndex&, const GridCell& c) { EXPECT_EQ(c.inflationCounter, 0); });
  EXPECT_EQ(store.counterUnderflows(), 0u);
}

TEST(UpdateNeighborCounter, CornerCellClipsToWindow) {
  OccupancyStore store(WindowShape(9, 9, 9, 1.0), ProbParams{});
  const OffsetTable t = buildOffsetTable(1.0, 1.0);
  // Window corner: self + 3 in-window face neighbors.
  EXPECT_EQ(updateNeighborCounter({4, 4, 4}, +1, t, store), 4u);
}

#ifdef NDEBUG
TEST(UpdateNeighborCounter, UnderflowSaturatesWithDiagnostic) {
  OccupancyStore store(WindowShape(5, 5, 5, 1.0), ProbParams{});
  const OffsetTable t = buildOffsetTable(0.0, 1.0);
  updateNeighborCounter({0, 0, 0}, -1, t, store);
  EXPECT_EQ(store.at({0, 0, 0}).inflationCounter, 0);
  EXPECT_EQ(store.counterUnderflows(), 1u);
}
#endif

TEST(ProcessTransitions, EmptyListIsFree) {
  OccupancyStore store(WindowShape(5, 5, 5, 1.0), ProbParams{});
  const OffsetTable t = buildOffsetTable(1.0, 1.0);
  const InflationStats stats = processTransitions({}, t, store);
  EXPECT_EQ(stats.counterOps, 0u);
}

TEST(ProcessTransitions, InteriorRisingCostIsTableSizePerCell) {
  OccupancyStore store(WindowShape(21, 21, 21, 1.0), ProbParams{});
  const OffsetTable t = buildOffsetTable(2.0, 1.0);
  std::vector<CellTransition> transitions;
  const std::vector<GlobalIndex> cells{{0, 0, 0}, {5, 5, 0}, {-4, 3, -2}};
  for (const GlobalIndex& g : cells) {
    store.applyCounts(g, 2, 0);
    transitions.push_back({g, {OccState::Unknown, OccState::Occupied}});
  }
  const InflationStats stats = processTransitions(transitions, t, store);
  EXPECT_EQ(stats.counterOps, cells.size() * t.size());
  EXPECT_EQ(stats.risingCells, cells.size());
  std::string diag;
  EXPECT_TRUE(testing::countersMatchOracle(store, t, &diag)) << diag;
}

TEST(ProcessTransitions, CostBoundedByChangedTimesTableSize) {
  OccupancyStore store(WindowShape(9, 9, 9, 1.0), ProbParams{});
  const OffsetTable t = buildOffsetTable(1.5, 1.0);
  std::vector<CellTransition> transitions;
  transitions.push_back({{4, 4, 4}, {OccState::Unknown, OccState::Occupied}});  // corner, clipped
  transitions.push_back({{0, 0, 0}, {OccState::Unknown, OccState::Occupied}});  // interior, full
  store.applyCounts({4, 4, 4}, 2, 0);
  store.applyCounts({0, 0, 0}, 2, 0);
  const InflationStats stats = processTransitions(transitions, t, store);
  EXPECT_LE(stats.counterOps, transitions.size() * t.size());
  EXPECT_GT(stats.counterOps, t.size());  // corner contributes less than |L|
}

TEST(IsInflatedOccupied, BallMembership) {
  OccupancyStore store(WindowShape(21, 21, 21, 0.1), ProbParams{});
  const OffsetTable t = buildOffsetTable(0.3, 0.1);
  const GlobalIndex occ{0, 0, 0};
  store.applyCounts(occ, 2, 0);
  updateNeighborCounter(occ, +1, t, store);

  EXPECT_TRUE(isInflatedOccupied({0, 0, 0}, store));  // the occupied cell itself
  EXPECT_TRUE(isInflatedOccupied({3, 0, 0}, store));  // exactly at the inflation distance
  EXPECT_FALSE(isInflatedOccupied({4, 0, 0}, store));  // one cell beyond
  EXPECT_FALSE(isInflatedOccupied({2, 2, 2}, store));  // sqrt(12) > 3
  EXPECT_TRUE(isInflatedOccupied({2, 2, 1}, store));   // sqrt(9) = 3
  EXPECT_FALSE(isInflatedOccupied({100, 0, 0}, store));  // out of window
}

// Randomized occupancy churn; incremental counters must equal the
// brute-force recomputation after every frame.
TEST(Inflation, MasterInvariantUnderFuzz) {
  const ProbParams prob;
  OccupancyStore store(WindowShape(13, 13, 9, 1.0), prob);
  const OffsetTable t = buildOffsetTable(2.0, 1.0);
  std::mt19937 rng(59);
  std::uniform_int_distribution<std::int32_t> xy(-6, 6);
  std::uniform_int_distribution<std::int32_t> zz(-4, 4);

  for (int frame = 0; frame < 300; ++frame) {
    std::vector<CellTransition> transitions;
    for (int k = 0; k < 6; ++k) {
      const GlobalIndex g{xy(rng), xy(rng), zz(rng)};
      GridCell& cell = store.at(g);
      const OccState before = stateOf(cell.logOdds, prob);
      const StateTransition tr =
          before == OccState::Occupied ? applyBatch(cell, 0, 8, prob) : applyBatch(cell, 8, 0, prob);
      if (tr.changed()) transitions.push_back({g, tr});
    }
    processTransitions(transitions, t, store);
    std::string diag;
    ASSERT_TRUE(testing::countersMatchOracle(store, t, &diag)) << "frame " << frame << ": " << diag;
  }
  EXPECT_EQ(store.counterUnderflows(), 0u);
}

}  // namespace
}  // namespace rogmap
