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

#include <map>
#include <random>

#include "rogmap/sliding.hpp"
#include "support/oracles.hpp"

namespace rogmap {
namespace {

TEST(ShouldSlide, StrictThreshold) {
  EXPECT_FALSE(shouldSlide({0, 0, 0}, {0, 0, 0}, 1.0));
  EXPECT_FALSE(shouldSlide({1.0, 0, 0}, {0, 0, 0}, 1.0));  // exactly d: stay
  EXPECT_TRUE(shouldSlide({1.0 + 1e-9, 0, 0}, {0, 0, 0}, 1.0));
  EXPECT_TRUE(shouldSlide({0.8, 0.8, 0}, {0, 0, 0}, 1.0));
}

TEST(SlideTo, IdentitySlideIsNoOp) {
  OccupancyStore store(WindowShape(9, 9, 9, 1.0), ProbParams{});
  const OffsetTable t = buildOffsetTable(1.0, 1.0);
  store.applyCounts({2, 0, 0}, 2, 0);
  updateNeighborCounter({2, 0, 0}, +1, t, store);

  // Sub-cell motion rounds to the same center cell.
  const SlideReport rep = slideTo({0.2, -0.3, 0.1}, store, t);
  EXPECT_FALSE(rep.slid());
  EXPECT_EQ(rep.cellsReset, 0u);
  EXPECT_EQ(store.at({2, 0, 0}).logOdds, ProbParams{}.lHit * 2);
}

TEST(SlideTo, FullWindowSlideResetsEverything) {
  const ProbParams prob;
  OccupancyStore store(WindowShape(5, 5, 5, 1.0), prob);
  const OffsetTable t = buildOffsetTable(1.0, 1.0);
  store.applyCounts({1, 1, 1}, 3, 0);
  updateNeighborCounter({1, 1, 1}, +1, t, store);

  const SlideReport rep = slideTo({5.0, 0.0, 0.0}, store, t);  // disjoint windows
  EXPECT_TRUE(rep.slid());
  EXPECT_EQ(rep.cellsReset, store.shape().cellCount());
  store.forEachCell([&](const GlobalIndex&, const GridCell& c) {
    EXPECT_EQ(c.logOdds, 0.0);
    EXPECT_EQ(c.inflationCounter, 0);
  });
}

TEST(SlideTo, RetainedCellKeepsValueAddressAndInvariant) {
  const ProbParams prob;
  OccupancyStore store(WindowShape(9, 9, 9, 1.0), prob);
  const OffsetTable t = buildOffsetTable(1.0, 1.0);
  const GlobalIndex occ{1, 1, 0};
  store.applyCounts(occ, 3, 0);
  updateNeighborCounter(occ, +1, t, store);

  const double lBefore = store.at(occ).logOdds;
  const Address aBefore = globalToAddress(occ, store.shape());

  const SlideReport rep = slideTo({1.0, 0.0, 0.0}, store, t);
  ASSERT_TRUE(rep.slid());
  ASSERT_TRUE(store.contains(occ));
  EXPECT_EQ(globalToAddress(occ, store.shape()), aBefore);  // zero-copy: address unchanged
  EXPECT_EQ(store.at(occ).logOdds, lBefore);                // bit-identical
  std::string diag;
  EXPECT_TRUE(testing::countersMatchOracle(store, t, &diag)) << diag;
}

TEST(SlideTo, ExitedOccupiedCellWithdrawsItsContribution) {
  const ProbParams prob;
  OccupancyStore store(WindowShape(5, 5, 5, 1.0), prob);
  const OffsetTable t = buildOffsetTable(1.0, 1.0);
  // Occupied at the left edge; its +1 reaches (-1, 0, 0).
  const GlobalIndex occ{-2, 0, 0};
  store.applyCounts(occ, 3, 0);
  updateNeighborCounter(occ, +1, t, store);
  ASSERT_EQ(store.at({-1, 0, 0}).inflationCounter, 1);

  // Slide right by one cell: the occupied cell exits, (-1,0,0) is retained.
  const SlideReport rep = slideTo({1.0, 0.0, 0.0}, store, t);
  ASSERT_TRUE(rep.slid());
  EXPECT_EQ(store.at({-1, 0, 0}).inflationCounter, 0);
  std::string diag;
  EXPECT_TRUE(testing::countersMatchOracle(store, t, &diag)) << diag;
  EXPECT_EQ(store.counterUnderflows(), 0u);
}

TEST(SlideTo, AdmittedCellsPickUpRetainedObstacles) {
  const ProbParams prob;
  OccupancyStore store(WindowShape(5, 5, 5, 1.0), prob);
  const OffsetTable t = buildOffsetTable(1.0, 1.0);
  // Occupied at the right edge; after sliding right its +1 must cover the
  // newly admitted column x = 3.
  const GlobalIndex occ{2, 0, 0};
  store.applyCounts(occ, 3, 0);
  updateNeighborCounter(occ, +1, t, store);

  const SlideReport rep = slideTo({1.0, 0.0, 0.0}, store, t);
  ASSERT_TRUE(rep.slid());
  ASSERT_TRUE(store.contains({3, 0, 0}));
  EXPECT_EQ(store.at({3, 0, 0}).inflationCounter, 1);
  std::string diag;
  EXPECT_TRUE(testing::countersMatchOracle(store, t, &diag)) << diag;
}

TEST(SlideTo, TwoSlidesToSamePositionEqualOne) {
  const ProbParams prob;
  OccupancyStore a(WindowShape(7, 7, 7, 0.5), prob);
  OccupancyStore b(WindowShape(7, 7, 7, 0.5), prob);
  const OffsetTable t = buildOffsetTable(0.5, 0.5);
  for (OccupancyStore* s : {&a, &b}) {
    s->applyCounts({1, -1, 0}, 3, 0);
    updateNeighborCounter({1, -1, 0}, +1, t, *s);
  }
  const Vec3d target{1.2, 0.7, -0.4};
  slideTo(target, a, t);
  slideTo(target, b, t);
  const SlideReport second = slideTo(target, b, t);
  EXPECT_FALSE(second.slid());
  a.forEachCell([&](const GlobalIndex& g, const GridCell& c) {
    EXPECT_EQ(c.logOdds, b.at(g).logOdds);
    EXPECT_EQ(c.inflationCounter, b.at(g).inflationCounter);
  });
}

TEST(SlideTo, ExitedRegionIsForgottenOnReturn) {
  const ProbParams prob;
  OccupancyStore store(WindowShape(5, 5, 5, 1.0), prob);
  const OffsetTable t = buildOffsetTable(1.0, 1.0);
  const GlobalIndex occ{-2, 0, 0};
  store.applyCounts(occ, 3, 0);
  updateNeighborCounter(occ, +1, t, store);

  slideTo({5.0, 0.0, 0.0}, store, t);   // occ exits
  slideTo({0.0, 0.0, 0.0}, store, t);   // window returns
  ASSERT_TRUE(store.contains(occ));
  EXPECT_EQ(store.at(occ).logOdds, 0.0);
  EXPECT_EQ(store.at(occ).inflationCounter, 0);
  EXPECT_EQ(store.query(occ).state, OccState::Unknown);
}

// Random walk with occupancy mixed in: retained cells stay bit-identical at
// the same address and the counter invariant is restored after every slide.
TEST(SlideTo, RandomWalkPreservesRetainedStateAndInvariant) {
  const ProbParams prob;
  const WindowShape shape(11, 9, 7, 0.5);
  OccupancyStore store(shape, prob);
  const OffsetTable t = buildOffsetTable(1.0, 0.5);
  std::mt19937 rng(61);
  std::uniform_real_distribution<double> jump(-2.0, 2.0);
  std::uniform_int_distribution<int> cellPick(0, 100);
  Vec3d pos{0, 0, 0};

  for (int step = 0; step < 120; ++step) {
    // Occupy a few random in-window cells.
    for (int k = 0; k < 4; ++k) {
      const std::int32_t dx = cellPick(rng) % shape.sx - shape.halfX();
      const std::int32_t dy = cellPick(rng) % shape.sy - shape.halfY();
      const std::int32_t dz = cellPick(rng) % shape.sz - shape.halfZ();
      const GlobalIndex g = store.center() + GlobalIndex{dx, dy, dz};
      const StateTransition tr = store.applyCounts(g, 4, 0);
      if (tr.rising()) updateNeighborCounter(g, +1, t, store);
    }

    pos = pos + Vec3d{jump(rng), jump(rng), jump(rng) * 0.5};
    // Snapshot retained cells before the slide.
    const GlobalIndex newCenter = worldToGlobal(pos, shape.resolution);
    std::map<std::size_t, double> retained;
    store.forEachCell([&](const GlobalIndex& g, const GridCell& c) {
      if (inWindow(g, newCenter, shape)) retained[globalToAddress(g, shape).value] = c.logOdds;
    });

    slideTo(pos, store, t);

    for (const auto& [addr, logOdds] : retained) {
      EXPECT_EQ(store.atAddress(Address{addr}).logOdds, logOdds);
    }
    std::string diag;
    ASSERT_TRUE(testing::countersMatchOracle(store, t, &diag)) << "step " << step << ": " << diag;
    ASSERT_EQ(store.counterUnderflows(), 0u);
  }
}

}  // namespace
}  // namespace rogmap
