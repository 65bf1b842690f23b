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

#include "gats/empirical_model.h"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace gats {

int RewardClass(double reward) {
  if (reward < -0.5) return -1;
  if (reward > 0.5) return 1;
  return 0;
}

EmpiricalModel::EmpiricalModel(int n_states, int n_actions, double gamma,
                               FallbackRule fallback)
    : n_states_(n_states), n_actions_(n_actions), gamma_(gamma), fallback_(fallback) {
  if (n_states <= 0 || n_actions <= 0) {
    throw std::invalid_argument("EmpiricalModel: counts must be positive");
  }
  const std::size_t pairs = static_cast<std::size_t>(n_states) * n_actions;
  visits_.assign(pairs, 0);
  successor_counts_.assign(pairs * n_states, 0);
  class_counts_.assign(pairs, {0, 0, 0});
  mean_reward_.assign(pairs, 0.0);
  terminal_.assign(n_states, 0);
}

void EmpiricalModel::Observe(const Transition& t) {
  if (t.state < 0 || t.state >= n_states_ || t.next_state < 0 ||
      t.next_state >= n_states_ || t.action < 0 || t.action >= n_actions_) {
    throw std::out_of_range("EmpiricalModel::Observe: index out of range");
  }
  const std::size_t i = Index(t.state, t.action);
  const std::int64_t n = ++visits_[i];
  ++successor_counts_[i * n_states_ + t.next_state];
  ++class_counts_[i][RewardClass(t.reward) + 1];
  mean_reward_[i] += (t.reward - mean_reward_[i]) / static_cast<double>(n);
  if (t.terminal) terminal_[t.next_state] = 1;
}

std::int64_t EmpiricalModel::SuccessorCount(int state, int action, int next_state) const {
  return successor_counts_[Index(state, action) * n_states_ + next_state];
}

std::array<std::int64_t, 3> EmpiricalModel::ClassCounts(int state, int action) const {
  return class_counts_[Index(state, action)];
}

std::vector<double> EmpiricalModel::EstimatedRow(int state, int action) const {
  std::vector<double> row(n_states_, 0.0);
  const std::size_t i = Index(state, action);
  const std::int64_t n = visits_[i];
  if (n == 0) {
    if (fallback_ == FallbackRule::kSelfLoop || terminal_[state]) {
      row[state] = 1.0;
    } else {
      std::fill(row.begin(), row.end(), 1.0 / n_states_);
    }
    return row;
  }
  for (int s2 = 0; s2 < n_states_; ++s2) {
    row[s2] = static_cast<double>(successor_counts_[i * n_states_ + s2]) / static_cast<double>(n);
  }
  return row;
}

double EmpiricalModel::EstimatedReward(int state, int action, RewardMode mode) const {
  const std::size_t i = Index(state, action);
  if (visits_[i] == 0) return 0.0;
  if (mode == RewardMode::kMean) return mean_reward_[i];
  // Argmax class; ties resolve toward the lowest class.
  const auto& counts = class_counts_[i];
  int best = 0;
  for (int c = 1; c < 3; ++c) {
    if (counts[c] > counts[best]) best = c;
  }
  return static_cast<double>(best - 1);
}

ModelView EmpiricalModel::AsModelView(RewardMode mode) const {
  const std::size_t ns = n_states_, na = n_actions_;
  std::vector<double> dense(ns * na * ns);
  std::vector<double> reward(ns * na);
  for (int s = 0; s < n_states_; ++s) {
    for (int a = 0; a < n_actions_; ++a) {
      const auto row = EstimatedRow(s, a);
      std::copy(row.begin(), row.end(), dense.begin() + Index(s, a) * ns);
      reward[Index(s, a)] = EstimatedReward(s, a, mode);
    }
  }
  return ModelView(n_states_, n_actions_, gamma_, dense, std::move(reward), terminal_,
                   Provenance::kLearnedModel);
}

ModelErrors MeasureErrors(const MdpSpec& truth, const ModelView& model,
                          std::span<const double> q_true, std::span<const double> q_hat) {
  const int ns = truth.n_states(), na = truth.n_actions();
  if (model.n_states() != ns || model.n_actions() != na ||
      q_true.size() != static_cast<std::size_t>(ns) * na || q_hat.size() != q_true.size()) {
    throw std::invalid_argument("MeasureErrors: mismatched spaces");
  }
  ModelErrors errors;
  for (int s = 0; s < ns; ++s) {
    double reward_l1 = 0.0;
    for (int a = 0; a < na; ++a) {
      reward_l1 += std::abs(truth.reward(s, a) - model.reward(s, a));
      const auto true_row = truth.row(s, a);
      const auto est_row = model.TransitionRow(s, a);
      double l1 = 0.0;
      for (int s2 = 0; s2 < ns; ++s2) l1 += std::abs(true_row[s2] - est_row[s2]);
      errors.e_t = std::max(errors.e_t, l1);
    }
    errors.e_r = std::max(errors.e_r, reward_l1);
  }
  for (std::size_t i = 0; i < q_true.size(); ++i) {
    errors.e_q = std::max(errors.e_q, std::abs(q_true[i] - q_hat[i]));
  }
  return errors;
}

ModelErrors MeasureErrors(const MdpSpec& truth, const EmpiricalModel& model,
                          const QFunction& q_true, const QFunction& q_hat) {
  const auto true_table = q_true.Table();
  const auto hat_table = q_hat.Table();
  return MeasureErrors(truth, model.AsModelView(RewardMode::kMean), true_table, hat_table);
}

}  // namespace gats
