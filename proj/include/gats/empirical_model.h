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

#ifndef GATS_EMPIRICAL_MODEL_H_
#define GATS_EMPIRICAL_MODEL_H_

#include <array>
#include <cstdint>
#include <span>
#include <vector>

#include "gats/mdp.h"
#include "gats/model_view.h"
#include "gats/q_learner.h"

namespace gats {

enum class FallbackRule { kUniform, kSelfLoop };
enum class RewardMode { kMean, kClassDecode };

// Clipped reward class: r < -0.5 -> -1, r > 0.5 -> +1, otherwise 0.
int RewardClass(double reward);

// Count-based dynamics and reward estimates learned from observed transitions.
//
// Unseen (x, a) pairs fall back to a uniform successor distribution (or a
// self-loop) with reward 0. States observed as the successor of a terminal
// transition are marked terminal; their unseen pairs self-loop.
class EmpiricalModel {
 public:
  EmpiricalModel(int n_states, int n_actions, double gamma,
                 FallbackRule fallback = FallbackRule::kUniform);

  void Observe(const Transition& t);

  int n_states() const { return n_states_; }
  int n_actions() const { return n_actions_; }
  double gamma() const { return gamma_; }
  FallbackRule fallback() const { return fallback_; }

  std::int64_t Visits(int state, int action) const { return visits_[Index(state, action)]; }
  std::int64_t SuccessorCount(int state, int action, int next_state) const;
  // Count of class -1, 0, +1 observations.
  std::array<std::int64_t, 3> ClassCounts(int state, int action) const;
  double MeanReward(int state, int action) const { return mean_reward_[Index(state, action)]; }
  bool KnownTerminal(int state) const { return terminal_[state] != 0; }

  // Row-major [state][action] visit counts.
  std::span<const std::int64_t> visit_counts() const { return visits_; }

  std::vector<double> EstimatedRow(int state, int action) const;
  double EstimatedReward(int state, int action, RewardMode mode) const;
  ModelView AsModelView(RewardMode mode = RewardMode::kMean) const;

 private:
  std::size_t Index(int s, int a) const {
    return static_cast<std::size_t>(s) * n_actions_ + a;
  }

  int n_states_;
  int n_actions_;
  double gamma_;
  FallbackRule fallback_;
  std::vector<std::int64_t> visits_;
  std::vector<std::int64_t> successor_counts_;
  std::vector<std::array<std::int64_t, 3>> class_counts_;
  std::vector<double> mean_reward_;
  std::vector<char> terminal_;
};

// Tight uniform error bounds between a reference MDP and an estimate:
//   e_Q = max_{x,a} |Q - Q_hat|
//   e_R = max_x sum_a |r - r_hat|
//   e_T = max_{x,a} sum_x' |T - T_hat|
struct ModelErrors {
  double e_t = 0.0;
  double e_r = 0.0;
  double e_q = 0.0;
};

ModelErrors MeasureErrors(const MdpSpec& truth, const ModelView& model,
                          std::span<const double> q_true, std::span<const double> q_hat);
// Uses the mean-reward view of the empirical model.
ModelErrors MeasureErrors(const MdpSpec& truth, const EmpiricalModel& model,
                          const QFunction& q_true, const QFunction& q_hat);

}  // namespace gats

#endif  // GATS_EMPIRICAL_MODEL_H_
