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

#ifndef GATS_MDP_H_
#define GATS_MDP_H_

#include <cstdint>
#include <random>
#include <span>
#include <vector>

namespace gats {

// Every stochastic component draws from a single generator per run.
using Rng = std::mt19937_64;

// Row-sum tolerance for probability vectors stored in an MdpSpec.
inline constexpr double kRowSumTolerance = 1e-12;

struct Transition {
  int state = 0;
  int action = 0;
  double reward = 0.0;
  int next_state = 0;
  bool terminal = false;

  friend bool operator==(const Transition&, const Transition&) = default;
};

// Finite discounted MDP with mean rewards. Terminal states are absorbing and
// pay zero reward, so infinite-horizon formulas apply without special cases.
class MdpSpec {
 public:
  // `transition` is row-major [state][action][next_state]; `reward` is
  // [state][action]. Throws std::invalid_argument if any invariant fails.
  MdpSpec(int n_states, int n_actions, double gamma,
          std::vector<double> transition, std::vector<double> reward,
          std::vector<int> terminal_states);

  int n_states() const { return n_states_; }
  int n_actions() const { return n_actions_; }
  double gamma() const { return gamma_; }

  std::span<const double> row(int state, int action) const;
  double prob(int state, int action, int next_state) const {
    return row(state, action)[next_state];
  }
  double reward(int state, int action) const;
  bool is_terminal(int state) const;
  const std::vector<int>& terminal_states() const { return terminal_states_; }

  const std::vector<double>& transition_table() const { return transition_; }
  const std::vector<double>& reward_table() const { return reward_; }

  void check_state(int state) const;
  void check_action(int action) const;

 private:
  int n_states_;
  int n_actions_;
  double gamma_;
  std::vector<double> transition_;
  std::vector<double> reward_;
  std::vector<int> terminal_states_;
  std::vector<char> terminal_flag_;
};

// Behavior policy stored as a dense [state][action] probability table.
class Policy {
 public:
  enum class Kind { kDeterministic, kEpsilonGreedy, kStochastic };

  static Policy Deterministic(int n_actions, std::vector<int> actions);
  static Policy Stochastic(int n_actions, std::vector<double> probabilities);
  static Policy Uniform(int n_states, int n_actions);
  // Epsilon-greedy over a row-major Q table with lowest-index tie-break.
  static Policy EpsilonGreedy(std::span<const double> q_table, int n_states,
                              int n_actions, double epsilon);

  Kind kind() const { return kind_; }
  int n_states() const { return n_states_; }
  int n_actions() const { return n_actions_; }
  double probability(int state, int action) const {
    return probs_[static_cast<std::size_t>(state) * n_actions_ + action];
  }
  std::span<const double> row(int state) const;

 private:
  Policy(Kind kind, int n_states, int n_actions, std::vector<double> probs);

  Kind kind_;
  int n_states_;
  int n_actions_;
  std::vector<double> probs_;
};

// Index of the maximum element; ties go to the lowest index.
int ArgMax(std::span<const double> values);
double MaxOf(std::span<const double> values);

// Optimal action values by value iteration. Stops once successive sweeps
// differ by less than tol * (1 - gamma) / gamma in sup norm, which bounds the
// Bellman residual of the result by tol. Returns a row-major Q table.
std::vector<double> ValueIteration(const MdpSpec& mdp, double tol);

// Exact H-step truncated return
//   E_rollout[ sum_{h<H} gamma^h r_h + gamma^H max_a Q(x_H, a) | x ]
// by dynamic programming over (state, depth).
double ExactXi(const MdpSpec& mdp, std::span<const double> q_table,
               const Policy& rollout, int state, int depth);

Transition SampleStep(const MdpSpec& mdp, int state, int action, Rng& rng);

}  // namespace gats

#endif  // GATS_MDP_H_
