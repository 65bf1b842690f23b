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

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace gats {
namespace {

class Lookahead {
 public:
  Lookahead(const ModelView& model, std::span<const double> leaf_q, int depth,
            PlanResult& result, bool record)
      : model_(model),
        leaf_q_(leaf_q),
        depth_(depth),
        ns_(model.n_states()),
        na_(model.n_actions()),
        result_(result),
        record_(record),
        memo_(static_cast<std::size_t>(depth) * ns_,
              std::numeric_limits<double>::quiet_NaN()) {
    if (record_) result_.node_block.assign(static_cast<std::size_t>(depth) * ns_, -1);
  }

  // Value of `state` with `remaining` steps of lookahead left.
  double Value(int state, int remaining) {
    if (model_.terminal(state)) return 0.0;
    if (remaining == 0) return MaxOf(LeafRow(state));
    double& slot = memo_[static_cast<std::size_t>(remaining - 1) * ns_ + state];
    if (!std::isnan(slot)) return slot;
    std::vector<double> action_values(na_);
    Expand(state, remaining, action_values);
    slot = MaxOf(action_values);
    return slot;
  }

  // Fills the backed-up value of each action at `state`.
  void Expand(int state, int remaining, std::span<double> action_values) {
    const int level = depth_ - remaining;
    result_.nodes_expanded += na_;
    if (record_) {
      result_.node_block[static_cast<std::size_t>(level) * ns_ + state] =
          static_cast<std::int64_t>(result_.simulated.size());
    }
    for (int a = 0; a < na_; ++a) {
      const double r = model_.reward(state, a);
      for (const Successor& s : model_.successors(state, a)) {
        if (record_) {
          result_.simulated.push_back(
              {Transition{state, a, r, s.state, model_.terminal(s.state)}, level + 1,
               s.prob, false});
        }
      }
    }
    for (int a = 0; a < na_; ++a) {
      double cont = 0.0;
      for (const Successor& s : model_.successors(state, a)) {
        cont += s.prob * Value(s.state, remaining - 1);
      }
      action_values[a] = model_.reward(state, a) + model_.gamma() * cont;
    }
  }

  std::span<const double> LeafRow(int state) const {
    return leaf_q_.subspan(static_cast<std::size_t>(state) * na_, na_);
  }

 private:
  const ModelView& model_;
  std::span<const double> leaf_q_;
  int depth_;
  int ns_;
  int na_;
  PlanResult& result_;
  bool record_;
  std::vector<double> memo_;
};

void MarkGreedyPath(PlanResult& result, const ModelView& model) {
  std::vector<int> frontier{result.root_state};
  std::vector<char> seen(model.n_states());
  for (int level = 0; level < result.depth && !frontier.empty(); ++level) {
    std::vector<int> next;
    std::fill(seen.begin(), seen.end(), 0);
    for (int s : frontier) {
      const std::int64_t block =
          result.node_block[static_cast<std::size_t>(level) * model.n_states() + s];
      if (block < 0) continue;
      const int a = result.greedy_action[s];
      for (std::size_t i = block; i < result.simulated.size(); ++i) {
        SimulatedTransition& sim = result.simulated[i];
        if (sim.transition.state != s || sim.depth != level + 1) break;
        if (sim.transition.action != a) continue;
        sim.greedy_path = true;
        const int s2 = sim.transition.next_state;
        if (!sim.transition.terminal && !seen[s2]) {
          seen[s2] = 1;
          next.push_back(s2);
        }
      }
    }
    frontier.swap(next);
  }
}

}  // namespace

std::span<const SimulatedTransition> PlanResult::Children(int level, int state,
                                                          int action) const {
  if (level < 0 || level >= depth || node_block.empty()) return {};
  const std::int64_t block = node_block[static_cast<std::size_t>(level) * n_states + state];
  if (block < 0) return {};
  std::size_t begin = block;
  while (begin < simulated.size() && simulated[begin].transition.action < action &&
         simulated[begin].transition.state == state && simulated[begin].depth == level + 1) {
    ++begin;
  }
  std::size_t end = begin;
  while (end < simulated.size() && simulated[end].transition.action == action &&
         simulated[end].transition.state == state && simulated[end].depth == level + 1) {
    ++end;
  }
  return {simulated.data() + begin, end - begin};
}

PlanResult Plan(const ModelView& model, std::span<const double> leaf_q, int state,
                int depth, const PlanOptions& options) {
  if (depth < 0) throw std::invalid_argument("Plan: depth must be nonnegative");
  if (state < 0 || state >= model.n_states()) {
    throw std::out_of_range("Plan: root state out of range");
  }
  const int na = model.n_actions();
  if (leaf_q.size() != static_cast<std::size_t>(model.n_states()) * na) {
    throw std::invalid_argument("Plan: leaf table does not match the model");
  }
  PlanResult result;
  result.root_state = state;
  result.depth = depth;
  result.n_states = model.n_states();
  result.n_actions = na;
  result.root_values.assign(na, 0.0);
  if (depth == 0) {
    const auto row = leaf_q.subspan(static_cast<std::size_t>(state) * na, na);
    std::copy(row.begin(), row.end(), result.root_values.begin());
    result.chosen_action = ArgMax(result.root_values);
    return result;
  }
  const bool record = options.record_simulated;
  Lookahead search(model, leaf_q, depth, result, record);
  search.Expand(state, depth, result.root_values);
  result.chosen_action = ArgMax(result.root_values);
  if (record) {
    result.greedy_action.resize(model.n_states());
    for (int s = 0; s < model.n_states(); ++s) result.greedy_action[s] = ArgMax(search.LeafRow(s));
    MarkGreedyPath(result, model);
  }
  return result;
}

// ---------------------------------------------------------------------------

std::string ToString(DynaStrategy::Kind kind) {
  switch (kind) {
    case DynaStrategy::Kind::kLeafNodes: return "leaf-nodes";
    case DynaStrategy::Kind::kUniformRandom: return "uniform-random";
    case DynaStrategy::Kind::kGreedyTrajectory: return "greedy-trajectory";
    case DynaStrategy::Kind::kEpsGreedyTrajectory: return "eps-greedy-trajectory";
    case DynaStrategy::Kind::kGeometricDepth: return "geometric-depth";
  }
  return "unknown";
}

DynaStrategy::Kind ParseDynaKind(const std::string& name) {
  for (auto kind : {DynaStrategy::Kind::kLeafNodes, DynaStrategy::Kind::kUniformRandom,
                    DynaStrategy::Kind::kGreedyTrajectory,
                    DynaStrategy::Kind::kEpsGreedyTrajectory,
                    DynaStrategy::Kind::kGeometricDepth}) {
    if (ToString(kind) == name) return kind;
  }
  throw std::invalid_argument("unknown dyna strategy '" + name + "'");
}

namespace {

std::vector<Transition> WalkTrajectory(const PlanResult& plan, double epsilon, Rng& rng) {
  std::vector<Transition> out;
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  int state = plan.root_state;
  for (int level = 0; level < plan.depth; ++level) {
    int action = plan.greedy_action[state];
    if (epsilon > 0.0 && unit(rng) < epsilon) {
      action = std::uniform_int_distribution<int>(0, plan.n_actions - 1)(rng);
    }
    const auto children = plan.Children(level, state, action);
    if (children.empty()) break;
    std::size_t pick = 0;
    if (children.size() > 1) {
      const double u = unit(rng);
      double cumulative = 0.0;
      pick = children.size() - 1;
      for (std::size_t i = 0; i < children.size(); ++i) {
        cumulative += children[i].prob;
        if (u < cumulative) {
          pick = i;
          break;
        }
      }
    }
    const Transition& t = children[pick].transition;
    out.push_back(t);
    if (t.terminal) break;
    state = t.next_state;
  }
  return out;
}

}  // namespace

std::vector<Transition> ExtractDynaSamples(const PlanResult& plan,
                                           const DynaStrategy& strategy, Rng& rng) {
  std::vector<Transition> out;
  if (plan.depth == 0 || plan.simulated.empty()) return out;
  switch (strategy.kind) {
    case DynaStrategy::Kind::kLeafNodes:
      for (const auto& sim : plan.simulated) {
        if (sim.depth == plan.depth) out.push_back(sim.transition);
      }
      break;
    case DynaStrategy::Kind::kUniformRandom: {
      std::uniform_int_distribution<std::size_t> pick(0, plan.simulated.size() - 1);
      for (int i = 0; i < strategy.k; ++i) out.push_back(plan.simulated[pick(rng)].transition);
      break;
    }
    case DynaStrategy::Kind::kGreedyTrajectory:
      out = WalkTrajectory(plan, 0.0, rng);
      break;
    case DynaStrategy::Kind::kEpsGreedyTrajectory:
      out = WalkTrajectory(plan, strategy.epsilon, rng);
      break;
    case DynaStrategy::Kind::kGeometricDepth: {
      std::vector<std::vector<std::size_t>> by_depth(plan.depth + 1);
      for (std::size_t i = 0; i < plan.simulated.size(); ++i) {
        by_depth[plan.simulated[i].depth].push_back(i);
      }
      std::vector<double> weights(plan.depth + 1, 0.0);
      for (int d = 1; d <= plan.depth; ++d) {
        if (!by_depth[d].empty()) weights[d] = std::pow(1.0 - strategy.p, plan.depth - d);
      }
      // p = 1 puts all mass on depth H; if every branch ended early, fall back
      // to the deepest level that has samples.
      if (std::all_of(weights.begin(), weights.end(), [](double w) { return w == 0.0; })) {
        for (int d = plan.depth; d >= 1; --d) {
          if (!by_depth[d].empty()) {
            weights[d] = 1.0;
            break;
          }
        }
      }
      std::discrete_distribution<int> depth_dist(weights.begin(), weights.end());
      for (int i = 0; i < strategy.k; ++i) {
        const auto& bucket = by_depth[depth_dist(rng)];
        std::uniform_int_distribution<std::size_t> pick(0, bucket.size() - 1);
        out.push_back(plan.simulated[bucket[pick(rng)]].transition);
      }
      break;
    }
  }
  return out;
}

}  // namespace gats
