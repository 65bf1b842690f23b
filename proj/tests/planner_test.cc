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

#include "gats/planner.h"

#include <gtest/gtest.h>

#include <cmath>
#include <set>
#include <stdexcept>
#include <tuple>

#include "fixtures.h"
#include "gats/gats_agent.h"
#include "gats/goldfish.h"
#include "gats/json_io.h"
#include "oracles.h"

namespace gats {
namespace {

std::vector<double> RandomTable(int n, Rng& rng, double lo = -1.0, double hi = 1.0) {
  std::uniform_real_distribution<double> u(lo, hi);
  std::vector<double> v(n);
  for (double& x : v) x = u(rng);
  return v;
}

// Random deterministic MDP with one absorbing terminal state (the last).
MdpSpec RandomDeterministic(int ns, int na, std::uint64_t seed) {
  Rng rng(seed);
  std::uniform_int_distribution<int> next(0, ns - 1);
  std::vector<int> succ(ns * na);
  std::vector<double> reward = RandomTable(ns * na, rng);
  for (int s = 0; s < ns; ++s) {
    for (int a = 0; a < na; ++a) {
      succ[s * na + a] = s == ns - 1 ? s : next(rng);
      if (s == ns - 1) reward[s * na + a] = 0.0;
    }
  }
  return fixtures::Deterministic(ns, na, 0.9, succ, reward, {ns - 1});
}

TEST(PlanTest, DepthZeroReturnsLeafRow) {
  const MdpSpec mdp = RandomMdp(4, 3, 0.5, 1);
  const std::vector<double> q{0, 0, 0, 1, 5, 5, 0, 0, 0, 0, 0, 0};
  const PlanResult plan = Plan(ModelView::FromMdp(mdp), q, 1, 0);
  EXPECT_EQ(plan.root_values, (std::vector<double>{1, 5, 5}));
  EXPECT_EQ(plan.chosen_action, 1);
  EXPECT_EQ(plan.nodes_expanded, 0);
  EXPECT_TRUE(plan.simulated.empty());
}

TEST(PlanTest, RejectsNegativeDepthAndBadInputs) {
  const MdpSpec mdp = RandomMdp(3, 2, 0.5, 1);
  const std::vector<double> q(6, 0.0);
  const ModelView view = ModelView::FromMdp(mdp);
  EXPECT_THROW(Plan(view, q, 0, -1), std::invalid_argument);
  EXPECT_THROW(Plan(view, q, 3, 1), std::out_of_range);
  EXPECT_THROW(Plan(view, std::vector<double>(5), 0, 1), std::invalid_argument);
}

TEST(PlanTest, MatchesTreeOracleOnRandomStochasticMdps) {
  Rng rng(17);
  for (int instance = 0; instance < 200; ++instance) {
    const int ns = 2 + instance % 5;
    const int na = 1 + instance % 3;
    const int depth = instance % 5;
    const MdpSpec mdp = RandomMdp(ns, na, 0.6, 5000 + instance, 0.9);
    const auto leaf = RandomTable(ns * na, rng);
    const ModelView view = ModelView::FromMdp(mdp);
    const auto dense = oracle::FromMdp(mdp);
    for (int s = 0; s < ns; ++s) {
      const PlanResult plan = Plan(view, leaf, s, depth);
      const auto expected = oracle::TreeRootValues(dense, leaf, s, depth);
      for (int a = 0; a < na; ++a) EXPECT_NEAR(plan.root_values[a], expected[a], 1e-9);
      EXPECT_EQ(plan.chosen_action, ArgMax(plan.root_values));
    }
  }
}

TEST(PlanTest, MatchesTreeOracleWithTerminals) {
  Rng rng(3);
  for (std::uint64_t seed = 0; seed < 40; ++seed) {
    const int na = 2 + seed % 3;
    const MdpSpec mdp = RandomDeterministic(5, na, seed);
    const auto leaf = RandomTable(5 * na, rng);
    const auto dense = oracle::FromMdp(mdp);
    for (int depth = 0; depth <= 4; ++depth) {
      for (int s = 0; s < 5; ++s) {
        const PlanResult plan = Plan(ModelView::FromMdp(mdp), leaf, s, depth);
        const auto expected = oracle::TreeRootValues(dense, leaf, s, depth);
        for (int a = 0; a < na; ++a) EXPECT_NEAR(plan.root_values[a], expected[a], 1e-9);
      }
    }
  }
}

TEST(PlanTest, OptimalLeavesGiveOptimalRootValues) {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const MdpSpec mdp = RandomMdp(6, 3, 0.5, seed, 0.9);
    const auto q_star = ValueIteration(mdp, 1e-13);
    const ModelView view = ModelView::FromMdp(mdp);
    for (int depth = 0; depth <= 5; ++depth) {
      for (int s = 0; s < 6; ++s) {
        const PlanResult plan = Plan(view, q_star, s, depth);
        for (int a = 0; a < 3; ++a) EXPECT_NEAR(plan.root_values[a], q_star[s * 3 + a], 1e-9);
      }
    }
  }
}

TEST(PlanTest, ChosenActionInvariantToLeafShift) {
  Rng rng(8);
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const MdpSpec mdp = RandomMdp(5, 3, 0.5, seed, 0.9);
    auto leaf = RandomTable(15, rng);
    auto shifted = leaf;
    for (double& v : shifted) v += 3.25;
    const ModelView view = ModelView::FromMdp(mdp);
    for (int depth = 1; depth <= 3; ++depth) {
      const PlanResult a = Plan(view, leaf, 0, depth);
      const PlanResult b = Plan(view, shifted, 0, depth);
      EXPECT_EQ(a.chosen_action, b.chosen_action);
      for (int i = 0; i < 3; ++i) {
        EXPECT_NEAR(b.root_values[i] - a.root_values[i], std::pow(0.9, depth) * 3.25, 1e-9);
      }
    }
  }
}

TEST(PlanTest, ExpansionCountBounds) {
  Rng rng(2);
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const int na = 2 + seed % 3;
    const MdpSpec mdp = RandomDeterministic(6, na, seed + 100);
    const auto leaf = RandomTable(6 * na, rng);
    for (int depth = 1; depth <= 4; ++depth) {
      const PlanResult plan = Plan(ModelView::FromMdp(mdp), leaf, 0, depth);
      std::int64_t tree = 0, width = 1;
      for (int d = 1; d <= depth; ++d) tree += (width *= na);
      EXPECT_LE(plan.nodes_expanded, static_cast<std::int64_t>(6) * depth * na);
      EXPECT_LE(plan.nodes_expanded, tree);
      for (const auto& sim : plan.simulated) {
        EXPECT_GE(sim.depth, 1);
        EXPECT_LE(sim.depth, depth);
      }
    }
  }
}

TEST(PlanTest, GoldfishLookaheadAvoidsShark) {
  // Fish directly above a shark, Q pointing down everywhere.
  GridWorldSpec spec;
  spec.start = {4, 3};
  spec.gold = {0, 9};
  spec.sharks = {{5, 3}};
  const MdpSpec mdp = BuildGoldfish(spec);
  std::vector<double> q(static_cast<std::size_t>(mdp.n_states()) * 4, 0.0);
  for (int s = 0; s < mdp.n_states(); ++s) q[s * 4 + kDown] = 0.5;
  const PlanResult greedy = Plan(ModelView::FromMdp(mdp), q, spec.StartState(), 0);
  EXPECT_EQ(greedy.chosen_action, kDown);
  const PlanResult plan = Plan(ModelView::FromMdp(mdp), q, spec.StartState(), 2);
  EXPECT_DOUBLE_EQ(plan.root_values[kDown], -1.0);
  EXPECT_NE(plan.chosen_action, kDown);
}

TEST(PlanTest, JsonExport) {
  const MdpSpec mdp = RandomMdp(3, 2, 0.5, 1);
  const PlanResult plan = Plan(ModelView::FromMdp(mdp), std::vector<double>(6, 0.0), 0, 2);
  const auto doc = PlanResultToJson(plan);
  EXPECT_EQ(doc["chosen_action"], plan.chosen_action);
  EXPECT_EQ(doc["nodes_expanded"], plan.nodes_expanded);
  EXPECT_EQ(doc["root_values"].size(), 2u);
}

// Every distinct successor of a fully branching deterministic tree.
MdpSpec WideTree() {
  // States: 0 root, 1..4 depth 1, 5..20 depth 2; everything else loops.
  const int ns = 21, na = 4;
  std::vector<int> succ(ns * na);
  std::vector<double> reward(ns * na, -0.05);
  for (int s = 0; s < ns; ++s) {
    for (int a = 0; a < na; ++a) {
      if (s == 0) {
        succ[s * na + a] = 1 + a;
      } else if (s <= 4) {
        succ[s * na + a] = 5 + (s - 1) * 4 + a;
      } else {
        succ[s * na + a] = s;
      }
    }
  }
  return fixtures::Deterministic(ns, na, 0.9, succ, reward);
}

TEST(DynaTest, DepthZeroPlanGivesNoSamples) {
  const MdpSpec mdp = WideTree();
  const PlanResult plan = Plan(ModelView::FromMdp(mdp), std::vector<double>(84, 0.0), 0, 0);
  Rng rng(0);
  for (auto kind : {DynaStrategy::Kind::kLeafNodes, DynaStrategy::Kind::kUniformRandom,
                    DynaStrategy::Kind::kGreedyTrajectory,
                    DynaStrategy::Kind::kEpsGreedyTrajectory,
                    DynaStrategy::Kind::kGeometricDepth}) {
    DynaStrategy s;
    s.kind = kind;
    EXPECT_TRUE(ExtractDynaSamples(plan, s, rng).empty());
  }
}

TEST(DynaTest, LeafNodesAreTheSixteenDepthTwoTransitions) {
  const MdpSpec mdp = WideTree();
  const PlanResult plan = Plan(ModelView::FromMdp(mdp), std::vector<double>(84, 0.0), 0, 2);
  Rng rng(0);
  DynaStrategy s;
  s.kind = DynaStrategy::Kind::kLeafNodes;
  const auto samples = ExtractDynaSamples(plan, s, rng);
  ASSERT_EQ(samples.size(), 16u);
  std::set<std::pair<int, int>> seen;
  for (const Transition& t : samples) {
    EXPECT_GE(t.state, 1);
    EXPECT_LE(t.state, 4);
    EXPECT_EQ(t.next_state, 5 + (t.state - 1) * 4 + t.action);
    seen.insert({t.state, t.action});
  }
  EXPECT_EQ(seen.size(), 16u);
}

TEST(DynaTest, GreedyTrajectoryFollowsArgmaxQ) {
  const MdpSpec mdp = WideTree();
  std::vector<double> q(84, 0.0);
  q[0 * 4 + 2] = 1.0;  // root prefers action 2 -> state 3
  q[3 * 4 + 1] = 1.0;  // state 3 prefers action 1 -> state 14
  const PlanResult plan = Plan(ModelView::FromMdp(mdp), q, 0, 2);
  Rng rng(0);
  const auto samples = ExtractDynaSamples(plan, DynaStrategy{}, rng);
  ASSERT_EQ(samples.size(), 2u);
  EXPECT_EQ(samples[0], (Transition{0, 2, -0.05, 3, false}));
  EXPECT_EQ(samples[1], (Transition{3, 1, -0.05, 14, false}));
  int flagged = 0;
  for (const auto& sim : plan.simulated) flagged += sim.greedy_path;
  EXPECT_EQ(flagged, 2);
}

TEST(DynaTest, TrajectoryLengthEqualsDepthOnDeterministicModels) {
  Rng rng(4);
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const MdpSpec chain = fixtures::Chain(6, 0.9);
    const auto leaf = RandomTable(12, rng);
    for (int depth = 1; depth <= 4; ++depth) {
      const PlanResult plan = Plan(ModelView::FromMdp(chain), leaf, 2, depth);
      DynaStrategy eps;
      eps.kind = DynaStrategy::Kind::kEpsGreedyTrajectory;
      eps.epsilon = 0.5;
      EXPECT_EQ(ExtractDynaSamples(plan, DynaStrategy{}, rng).size(),
                static_cast<std::size_t>(depth));
      EXPECT_EQ(ExtractDynaSamples(plan, eps, rng).size(), static_cast<std::size_t>(depth));
    }
  }
}

TEST(DynaTest, UniformAndGeometricDrawCountsAndDepths) {
  const MdpSpec mdp = WideTree();
  const PlanResult plan = Plan(ModelView::FromMdp(mdp), std::vector<double>(84, 0.0), 0, 2);
  Rng rng(12);
  DynaStrategy uniform;
  uniform.kind = DynaStrategy::Kind::kUniformRandom;
  uniform.k = 5;
  EXPECT_EQ(ExtractDynaSamples(plan, uniform, rng).size(), 5u);

  // Depth 2 has weight 1, depth 1 weight (1 - p) = 0.25.
  DynaStrategy geo;
  geo.kind = DynaStrategy::Kind::kGeometricDepth;
  geo.p = 0.75;
  geo.k = 1;
  int deep = 0;
  const int n = 40000;
  for (int i = 0; i < n; ++i) deep += ExtractDynaSamples(plan, geo, rng)[0].state != 0;
  EXPECT_NEAR(static_cast<double>(deep) / n, 1.0 / 1.25, 0.01);

  // p = 1 keeps everything at the deepest level.
  geo.p = 1.0;
  geo.k = 50;
  for (const Transition& t : ExtractDynaSamples(plan, geo, rng)) EXPECT_NE(t.state, 0);
}

TEST(DynaTest, GeometricFallsBackWhenDeepestLevelIsEmpty) {
  // Every root action terminates, so depth 2 has no transitions.
  const MdpSpec mdp = fixtures::Deterministic(2, 2, 0.9, {1, 1, 1, 1}, {1.0, 0.5, 0.0, 0.0}, {1});
  const PlanResult plan = Plan(ModelView::FromMdp(mdp), std::vector<double>(4, 0.0), 0, 2);
  DynaStrategy geo;
  geo.kind = DynaStrategy::Kind::kGeometricDepth;
  geo.p = 1.0;
  Rng rng(0);
  const auto samples = ExtractDynaSamples(plan, geo, rng);
  EXPECT_EQ(samples.size(), static_cast<std::size_t>(geo.k));
  for (const Transition& t : samples) EXPECT_EQ(t.state, 0);
}

TEST(DynaTest, ParseNames) {
  for (const char* name : {"leaf-nodes", "uniform-random", "greedy-trajectory",
                           "eps-greedy-trajectory", "geometric-depth"}) {
    EXPECT_EQ(ToString(ParseDynaKind(name)), name);
  }
  EXPECT_THROW(ParseDynaKind("best-first"), std::invalid_argument);
}

// -- decision loop ------------------------------------------------------------

TEST(DecisionLoopTest, DepthZeroMatchesPlainEpsGreedyLoop) {
  const GridWorldSpec spec = DefaultGoldfish10x10();
  const MdpSpec env = BuildGoldfish(spec);
  LearnerConfig cfg;
  cfg.discount = spec.gamma;
  cfg.epsilon.decay = 20;
  const int episodes = 30;

  Rng rng_a(5);
  QLearner a(QFunction::TabularUniform(env.n_states(), 4, -0.1, 0.1, rng_a), cfg);
  GatsConfig gats;
  const auto logs_a = GatsDecisionLoop(env, spec.StartState(), a, gats, episodes, rng_a);

  Rng rng_b(5);
  QLearner b(QFunction::TabularUniform(env.n_states(), 4, -0.1, 0.1, rng_b), cfg);
  std::vector<EpisodeLog> logs_b;
  for (int e = 0; e < episodes; ++e) {
    const double eps = cfg.epsilon.At(e);
    logs_b.push_back(RunEpisode(
        env, spec.StartState(), [&](int s) { return ActEpsGreedy(b.q(), s, eps, rng_b); },
        spec.max_steps, spec.gamma, rng_b, [&](const Transition& t) {
          b.AddExperience(t);
          b.OnEnvStep(rng_b);
        }));
  }
  EXPECT_EQ(logs_a, logs_b);
}

TEST(DecisionLoopTest, DeepLookaheadWithOptimalLeavesIsOptimalFromTheStart) {
  const GridWorldSpec spec = DefaultGoldfish10x10();
  const MdpSpec env = BuildGoldfish(spec);
  const auto q_star = ValueIteration(env, 1e-12);
  LearnerConfig cfg;
  cfg.discount = spec.gamma;
  cfg.epsilon = {0.0, 0.0, 0};
  cfg.learning_rate = 0.0;
  QLearner learner(QFunction::Tabular(env.n_states(), 4, q_star), cfg);
  GatsConfig gats;
  gats.depth = 10;
  Rng rng(0);
  const auto logs = GatsDecisionLoop(env, spec.StartState(), learner, gats, 3, rng);
  for (const EpisodeLog& log : logs) {
    EXPECT_EQ(log.termination, Termination::kGold);
    EXPECT_NEAR(log.discounted_return, oracle::RowMax(q_star, spec.StartState(), 4), 1e-6);
  }
}

TEST(DecisionLoopTest, DeterministicPerSeedAndDynaFillsBuffer) {
  const GridWorldSpec spec = DefaultGoldfish10x10();
  const MdpSpec env = BuildGoldfish(spec);
  LearnerConfig cfg;
  cfg.discount = spec.gamma;
  GatsConfig gats;
  gats.depth = 2;
  gats.dyna = DynaStrategy{};
  auto run = [&](std::uint64_t seed, std::int64_t* buffer_size) {
    Rng rng(seed);
    QLearner learner(QFunction::TabularUniform(env.n_states(), 4, -0.1, 0.1, rng), cfg);
    auto logs = GatsDecisionLoop(env, spec.StartState(), learner, gats, 5, rng, seed);
    *buffer_size = static_cast<std::int64_t>(learner.buffer().inserted());
    return logs;
  };
  std::int64_t size_a = 0, size_b = 0;
  const auto a = run(3, &size_a);
  const auto b = run(3, &size_b);
  EXPECT_EQ(a, b);
  std::int64_t real_steps = 0;
  for (const auto& log : a) real_steps += log.steps();
  EXPECT_GT(size_a, real_steps);
}

TEST(DecisionLoopTest, LearnedModelAndOptimismRun) {
  const GridWorldSpec spec = DefaultGoldfish10x10();
  const MdpSpec env = BuildGoldfish(spec);
  LearnerConfig cfg;
  cfg.discount = spec.gamma;
  GatsConfig gats;
  gats.depth = 1;
  gats.model_source = ModelSource::kLearned;
  Rng rng(1);
  QLearner learner(QFunction::Tabular(env.n_states(), 4), cfg);
  EXPECT_EQ(GatsDecisionLoop(env, spec.StartState(), learner, gats, 3, rng).size(), 3u);
  gats.optimism = true;
  QLearner learner2(QFunction::Tabular(env.n_states(), 4), cfg);
  EXPECT_EQ(GatsDecisionLoop(env, spec.StartState(), learner2, gats, 3, rng).size(), 3u);
}

}  // namespace
}  // namespace gats
