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

#include "gats/model_view.h"

#include <cmath>
#include <stdexcept>

namespace gats {

ModelView::ModelView(int n_states, int n_actions, double gamma,
                     std::span<const double> dense_transition,
                     std::vector<double> reward, std::vector<char> terminal,
                     Provenance provenance)
    : n_states_(n_states),
      n_actions_(n_actions),
      gamma_(gamma),
      reward_(std::move(reward)),
      terminal_(std::move(terminal)),
      provenance_(provenance) {
  const std::size_t ns = n_states, na = n_actions;
  if (n_states <= 0 || n_actions <= 0 || dense_transition.size() != ns * na * ns ||
      reward_.size() != ns * na || terminal_.size() != ns) {
    throw std::invalid_argument("ModelView: table sizes do not match dims");
  }
  if (!(gamma >= 0.0 && gamma < 1.0)) throw std::invalid_argument("ModelView: gamma must lie in [0, 1)");
  row_offsets_.reserve(ns * na + 1);
  for (std::size_t row = 0; row < ns * na; ++row) {
    row_offsets_.push_back(successors_.size());
    double sum = 0.0;
    for (std::size_t s2 = 0; s2 < ns; ++s2) {
      const double p = dense_transition[row * ns + s2];
      if (p < 0.0 || !std::isfinite(p)) throw std::invalid_argument("ModelView: bad probability");
      if (p > 0.0) successors_.push_back({static_cast<int>(s2), p});
      sum += p;
    }
    if (std::abs(sum - 1.0) > kRowSumTolerance) {
      throw std::invalid_argument("ModelView: transition row does not sum to 1");
    }
  }
  row_offsets_.push_back(successors_.size());
}

ModelView ModelView::FromMdp(const MdpSpec& mdp) {
  std::vector<char> terminal(mdp.n_states());
  for (int s = 0; s < mdp.n_states(); ++s) terminal[s] = mdp.is_terminal(s) ? 1 : 0;
  return ModelView(mdp.n_states(), mdp.n_actions(), mdp.gamma(), mdp.transition_table(),
                   mdp.reward_table(), std::move(terminal), Provenance::kTrueModel);
}

std::span<const Successor> ModelView::successors(int state, int action) const {
  const std::size_t row = static_cast<std::size_t>(state) * n_actions_ + action;
  return {successors_.data() + row_offsets_[row], row_offsets_[row + 1] - row_offsets_[row]};
}

std::vector<double> ModelView::TransitionRow(int state, int action) const {
  std::vector<double> row(n_states_, 0.0);
  for (const Successor& s : successors(state, action)) row[s.state] = s.prob;
  return row;
}

ModelView ModelView::WithRewardBonus(std::span<const double> bonus) const {
  if (bonus.size() != reward_.size()) {
    throw std::invalid_argument("ModelView: bonus table has wrong size");
  }
  ModelView out = *this;
  for (std::size_t i = 0; i < out.reward_.size(); ++i) out.reward_[i] += bonus[i];
  return out;
}

}  // namespace gats
