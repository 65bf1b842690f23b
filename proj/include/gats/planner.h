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

#ifndef GATS_PLANNER_H_
#define GATS_PLANNER_H_

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "gats/mdp.h"
#include "gats/model_view.h"

namespace gats {

// A model transition generated while expanding the search tree. `depth` is
// the level of the child node (1..H); `prob` is the model probability of the
// successor, so stochastic expansions produce one entry per successor.
struct SimulatedTransition {
  Transition transition;
  int depth = 0;
  double prob = 1.0;
  bool greedy_path = false;  // on the branch that follows argmax Q from the root
};

struct PlanResult {
  int root_state = 0;
  int depth = 0;
  std::vector<double> root_values;
  int chosen_action = 0;
  std::int64_t nodes_expanded = 0;  // expanded (state, level, action) triples
  std::vector<SimulatedTransition> simulated;

  // Greedy leaf-Q action per state; filled when simulated transitions are recorded.
  std::vector<int> greedy_action;
  // Start of the block of simulated transitions for node (level, state), or -1.
  std::vector<std::int64_t> node_block;
  int n_states = 0;
  int n_actions = 0;

  // Simulated transitions produced by taking `action` at `state` on `level`.
  std::span<const SimulatedTransition> Children(int level, int state, int action) const;
};

struct PlanOptions {
  bool record_simulated = true;
};

// Full-width lookahead of the given depth over the model, with the leaf
// table (row-major [state][action]) valued at depth H:
//   root_values[a] = r(x, a) + gamma * E[V_{H-1}(x')]
//   V_d(s) = max_a [ r(s, a) + gamma * E[V_{d-1}(s')] ],  V_0(s) = max_a leaf(s, a)
// Terminal successors contribute their reward and no continuation. For depth
// 0 the root values are the leaf row itself. Values are memoized per
// (state, remaining depth), which equals expanding the whole tree.
PlanResult Plan(const ModelView& model, std::span<const double> leaf_q, int state,
                int depth, const PlanOptions& options = {});

struct DynaStrategy {
  enum class Kind {
    kLeafNodes,
    kUniformRandom,
    kGreedyTrajectory,
    kEpsGreedyTrajectory,
    kGeometricDepth,
  };
  Kind kind = Kind::kGreedyTrajectory;
  int k = 8;             // draws for uniform-random and geometric-depth
  double epsilon = 0.1;  // eps-greedy-trajectory
  double p = 0.5;        // geometric-depth: weight of depth d is (1 - p)^(H - d)

  friend bool operator==(const DynaStrategy&, const DynaStrategy&) = default;
};

std::string ToString(DynaStrategy::Kind kind);
// Accepts leaf-nodes, uniform-random, greedy-trajectory,
// eps-greedy-trajectory, geometric-depth. Throws std::invalid_argument.
DynaStrategy::Kind ParseDynaKind(const std::string& name);

// Pick simulated transitions from a plan to feed the replay buffer.
std::vector<Transition> ExtractDynaSamples(const PlanResult& plan,
                                           const DynaStrategy& strategy, Rng& rng);

}  // namespace gats

#endif  // GATS_PLANNER_H_
