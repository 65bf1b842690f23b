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

#ifndef GATS_MODEL_VIEW_H_
#define GATS_MODEL_VIEW_H_

#include <span>
#include <vector>

#include "gats/mdp.h"

namespace gats {

struct Successor {
  int state = 0;
  double prob = 0.0;
};

enum class Provenance { kTrueModel, kLearnedModel };

// Immutable snapshot of a (true or learned) environment model, stored as
// sparse successor lists so planners only touch reachable states.
class ModelView {
 public:
  static constexpr double kRowSumTolerance = 1e-9;

  // `dense_transition` is row-major [state][action][next_state].
  ModelView(int n_states, int n_actions, double gamma,
            std::span<const double> dense_transition, std::vector<double> reward,
            std::vector<char> terminal, Provenance provenance);

  static ModelView FromMdp(const MdpSpec& mdp);

  int n_states() const { return n_states_; }
  int n_actions() const { return n_actions_; }
  double gamma() const { return gamma_; }
  Provenance provenance() const { return provenance_; }

  std::span<const Successor> successors(int state, int action) const;
  double reward(int state, int action) const {
    return reward_[static_cast<std::size_t>(state) * n_actions_ + action];
  }
  bool terminal(int state) const { return terminal_[state] != 0; }
  // Dense probability vector over next states.
  std::vector<double> TransitionRow(int state, int action) const;

  const std::vector<double>& reward_table() const { return reward_; }

  // Same dynamics with r(x, a) + bonus[x * n_actions + a] as reward.
  ModelView WithRewardBonus(std::span<const double> bonus) const;

 private:
  ModelView() = default;

  int n_states_ = 0;
  int n_actions_ = 0;
  double gamma_ = 0.0;
  std::vector<std::size_t> row_offsets_;  // (state, action) -> start in successors_
  std::vector<Successor> successors_;
  std::vector<double> reward_;
  std::vector<char> terminal_;
  Provenance provenance_ = Provenance::kTrueModel;
};

}  // namespace gats

#endif  // GATS_MODEL_VIEW_H_
