// Copyright 2026 The GATS Lab Authors. All rights reserved.
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

#include "gats/goldfish.h"

#include <gtest/gtest.h>

#include <cmath>
#include <sstream>
#include <stdexcept>

#include "gats/json_io.h"
#include "oracles.h"

namespace gats {
namespace {

GridWorldSpec Small() {
  GridWorldSpec spec;
  spec.width = 3;
  spec.height = 3;
  spec.start = {2, 0};
  spec.gold = {0, 2};
  spec.sharks = {{1, 1}};
  return spec;
}

int NextState(const MdpSpec& mdp, int s, int a) {
  for (int s2 = 0; s2 < mdp.n_states(); ++s2) {
    if (mdp.prob(s, a, s2) == 1.0) return s2;
  }
  return -1;
}

TEST(GoldfishTest, GoldSharkAndOpenWaterRewards) {
  const GridWorldSpec spec = Small();
  const MdpSpec mdp = BuildGoldfish(spec);
  const int terminal = spec.TerminalState();
  // (0,1) -> right enters gold.
  EXPECT_EQ(mdp.reward(spec.StateOf({0, 1}), kRight), 1.0);
  EXPECT_EQ(NextState(mdp, spec.StateOf({0, 1}), kRight), terminal);
  // (2,1) -> up enters the shark.
  EXPECT_EQ(mdp.reward(spec.StateOf({2, 1}), kUp), -1.0);
  EXPECT_EQ(NextState(mdp, spec.StateOf({2, 1}), kUp), terminal);
  // Open water costs 0.05.
  EXPECT_DOUBLE_EQ(mdp.reward(spec.StateOf({2, 0}), kUp), -0.05);
  EXPECT_EQ(NextState(mdp, spec.StateOf({2, 0}), kUp), spec.StateOf({1, 0}));
  EXPECT_TRUE(mdp.is_terminal(terminal));
}

TEST(GoldfishTest, DynamicsAreDeterministicAndWallsHoldPosition) {
  const GridWorldSpec spec = DefaultGoldfish10x10();
  const MdpSpec mdp = BuildGoldfish(spec);
  for (int s = 0; s < mdp.n_states(); ++s) {
    for (int a = 0; a < kNumGridActions; ++a) {
      int ones = 0;
      for (double p : mdp.row(s, a)) {
        EXPECT_TRUE(p == 0.0 || p == 1.0);
        ones += p == 1.0;
      }
      EXPECT_EQ(ones, 1);
    }
  }
  for (int s = 0; s < spec.TerminalState(); ++s) {
    const Cell c = spec.CellOf(s);
    const Cell targets[] = {{c.row - 1, c.col}, {c.row + 1, c.col}, {c.row, c.col - 1},
                            {c.row, c.col + 1}};
    for (int a = 0; a < kNumGridActions; ++a) {
      const Cell t = targets[a];
      const bool inside = t.row >= 0 && t.row < spec.height && t.col >= 0 && t.col < spec.width;
      const int next = NextState(mdp, s, a);
      if (!inside) {
        EXPECT_EQ(next, s);
        EXPECT_DOUBLE_EQ(mdp.reward(s, a), -spec.cost_of_living);
      } else if (t == spec.gold || spec.IsShark(t)) {
        EXPECT_EQ(next, spec.TerminalState());
      } else {
        EXPECT_EQ(next, spec.StateOf(t));
      }
    }
  }
}

TEST(GoldfishTest, ValidateRejectsBadSpecs) {
  GridWorldSpec spec = Small();
  spec.start = spec.gold;
  EXPECT_THROW(BuildGoldfish(spec), std::invalid_argument);
  spec = Small();
  spec.sharks.push_back(spec.gold);
  EXPECT_THROW(BuildGoldfish(spec), std::invalid_argument);
  spec = Small();
  spec.sharks.push_back({5, 5});
  EXPECT_THROW(BuildGoldfish(spec), std::invalid_argument);
  spec = Small();
  spec.max_steps = 0;
  EXPECT_THROW(BuildGoldfish(spec), std::invalid_argument);
  spec = Small();
  spec.start = {1, 1};
  EXPECT_THROW(BuildGoldfish(spec), std::invalid_argument);
}

TEST(DefaultLayoutTest, MatchesDocumentedConstants) {
  const GridWorldSpec spec = DefaultGoldfish10x10();
  EXPECT_EQ(spec.width, 10);
  EXPECT_EQ(spec.height, 10);
  EXPECT_EQ(spec.gamma, 0.99);
  EXPECT_EQ(spec.max_steps, 100);
  EXPECT_EQ(spec.cost_of_living, 0.05);
  // Start in the bottom-left quadrant, gold in the top-right one, sharks between.
  EXPECT_GE(spec.start.row, 5);
  EXPECT_LT(spec.start.col, 5);
  EXPECT_LT(spec.gold.row, 5);
  EXPECT_GE(spec.gold.col, 5);
  for (const Cell& s : spec.sharks) {
    EXPECT_GT(s.row, spec.gold.row);
    EXPECT_LT(s.row, spec.start.row);
  }
  EXPECT_EQ(DefaultGoldfish10x10(7), DefaultGoldfish10x10(7));
  EXPECT_EQ(DefaultGoldfish10x10(7), DefaultGoldfish10x10(3));
  EXPECT_EQ(DefaultGoldfish10x10(5, true), DefaultGoldfish10x10(5, true));
  EXPECT_NO_THROW(BuildGoldfish(DefaultGoldfish10x10(5, true)));
}

TEST(DefaultLayoutTest, JsonRoundTrip) {
  const GridWorldSpec spec = DefaultGoldfish10x10();
  EXPECT_EQ(GridWorldFromJson(GridWorldToJson(spec)), spec);
}

TEST(DefaultLayoutTest, GreedyOverOptimalQReachesGoldWithOptimalValue) {
  const GridWorldSpec spec = DefaultGoldfish10x10();
  const MdpSpec mdp = BuildGoldfish(spec);
  const auto q = ValueIteration(mdp, 1e-12);
  const int na = mdp.n_actions();
  Rng rng(0);
  const EpisodeLog log = RunEpisode(
      mdp, spec.StartState(),
      [&](int s) { return ArgMax(std::span<const double>(q).subspan(s * na, na)); },
      spec.max_steps, spec.gamma, rng);
  EXPECT_EQ(log.termination, Termination::kGold);
  EXPECT_NEAR(log.discounted_return, oracle::RowMax(q, spec.StartState(), na), 1e-6);
}

TEST(RunEpisodeTest, AdjacentGoldIsOneStep) {
  const GridWorldSpec spec = Small();
  const MdpSpec mdp = BuildGoldfish(spec);
  Rng rng(0);
  const EpisodeLog log =
      RunEpisode(mdp, spec.StateOf({0, 1}), [](int) { return kRight; }, 100, 0.99, rng);
  EXPECT_EQ(log.steps(), 1);
  EXPECT_EQ(log.discounted_return, 1.0);
  EXPECT_EQ(log.termination, Termination::kGold);
}

TEST(RunEpisodeTest, StallingAgainstAWallTruncates) {
  const GridWorldSpec spec = Small();
  const MdpSpec mdp = BuildGoldfish(spec);
  Rng rng(0);
  const EpisodeLog log = RunEpisode(mdp, spec.StartState(), [](int) { return kLeft; },
                                    spec.max_steps, spec.gamma, rng);
  EXPECT_EQ(log.steps(), 100);
  EXPECT_EQ(log.termination, Termination::kTruncated);
  EXPECT_NEAR(log.undiscounted_return, -5.0, 1e-12);
}

TEST(RunEpisodeTest, ReturnsRecomputeExactlyFromTransitions) {
  const GridWorldSpec spec = DefaultGoldfish10x10();
  const MdpSpec mdp = BuildGoldfish(spec);
  Rng rng(9);
  Rng actor_rng(10);
  std::uniform_int_distribution<int> pick(0, 3);
  for (int e = 0; e < 20; ++e) {
    const EpisodeLog log = RunEpisode(
        mdp, spec.StartState(), [&](int) { return pick(actor_rng); }, spec.max_steps,
        spec.gamma, rng);
    double undiscounted = 0.0, discounted = 0.0, discount = 1.0;
    for (const Transition& t : log.transitions) {
      undiscounted += t.reward;
      discounted += discount * t.reward;
      discount *= spec.gamma;
    }
    EXPECT_EQ(log.undiscounted_return, undiscounted);
    EXPECT_EQ(log.discounted_return, discounted);
    EXPECT_LE(log.steps(), spec.max_steps);
  }
}

TEST(RunEpisodeTest, CsvExport) {
  const GridWorldSpec spec = Small();
  const MdpSpec mdp = BuildGoldfish(spec);
  Rng rng(0);
  const EpisodeLog log =
      RunEpisode(mdp, spec.StateOf({0, 1}), [](int) { return kRight; }, 100, 0.99, rng);
  EXPECT_EQ(EpisodeLogToCsv(log), "step,state,action,reward,next_state,terminal\n0,1,3,1,9,1\n");
}

TEST(RandomMdpTest, RowsNormalizedAndReproducible) {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const MdpSpec mdp = RandomMdp(6, 3, 0.5, seed);
    for (int s = 0; s < 6; ++s) {
      for (int a = 0; a < 3; ++a) {
        double sum = 0.0;
        for (double p : mdp.row(s, a)) sum += p;
        EXPECT_NEAR(sum, 1.0, 1e-12);
      }
    }
    EXPECT_TRUE(mdp.terminal_states().empty());
  }
  const MdpSpec a = RandomMdp(5, 2, 1.0, 7);
  const MdpSpec b = RandomMdp(5, 2, 1.0, 7);
  EXPECT_EQ(a.reward_table(), b.reward_table());
  EXPECT_EQ(a.transition_table(), b.transition_table());
  for (double r : a.reward_table()) {
    EXPECT_GE(r, 0.0);
    EXPECT_LT(r, 1.0);
  }
}

TEST(RandomMdpTest, DensityControlsRewardedPairs) {
  const MdpSpec empty = RandomMdp(5, 2, 0.0, 3);
  for (double r : empty.reward_table()) EXPECT_EQ(r, 0.0);
  const MdpSpec half = RandomMdp(10, 2, 0.5, 3);
  int nonzero = 0;
  for (double r : half.reward_table()) nonzero += r != 0.0;
  EXPECT_EQ(nonzero, 10);
  EXPECT_THROW(RandomMdp(1, 2, 0.5, 0), std::invalid_argument);
  EXPECT_THROW(RandomMdp(3, 0, 0.5, 0), std::invalid_argument);
  EXPECT_THROW(RandomMdp(3, 2, 1.5, 0), std::invalid_argument);
}

}  // namespace
}  // namespace gats
