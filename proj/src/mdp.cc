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

#include "gats/mdp.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

#include "gats/detail/xi_recursion.h"

namespace gats {

MdpSpec::MdpSpec(int n_states, int n_actions, double gamma,
                 std::vector<double> transition, std::vector<double> reward,
                 std::vector<int> terminal_states)
    : n_states_(n_states),
      n_actions_(n_actions),
      gamma_(gamma),
      transition_(std::move(transition)),
      reward_(std::move(reward)),
      terminal_states_(std::move(terminal_states)) {
  if (n_states_ <= 0 || n_actions_ <= 0) {
    throw std::invalid_argument("MdpSpec: state and action counts must be positive");
  }
  if (!(gamma_ >= 0.0 && gamma_ < 1.0)) {
    throw std::invalid_argument("MdpSpec: gamma must lie in [0, 1)");
  }
  const std::size_t ns = n_states_, na = n_actions_;
  if (transition_.size() != ns * na * ns) {
    throw std::invalid_argument("MdpSpec: transition table has wrong size");
  }
  if (reward_.size() != ns * na) {
    throw std::invalid_argument("MdpSpec: reward table has wrong size");
  }
  for (std::size_t i = 0; i < ns * na; ++i) {
    double sum = 0.0;
    for (std::size_t j = 0; j < ns; ++j) {
      const double p = transition_[i * ns + j];
      if (!(p >= 0.0) || !std::isfinite(p)) {
        throw std::invalid_argument("MdpSpec: negative or non-finite probability");
      }
      sum += p;
    }
    if (std::abs(sum - 1.0) > kRowSumTolerance) {
      throw std::invalid_argument("MdpSpec: transition row " + std::to_string(i) +
                                  " does not sum to 1");
    }
    if (!std::isfinite(reward_[i])) {
      throw std::invalid_argument("MdpSpec: non-finite reward");
    }
  }
  terminal_flag_.assign(ns, 0);
  std::sort(terminal_states_.begin(), terminal_states_.end());
  terminal_states_.erase(
      std::unique(terminal_states_.begin(), terminal_states_.end()),
      terminal_states_.end());
  for (int s : terminal_states_) {
    check_state(s);
    terminal_flag_[s] = 1;
    for (int a = 0; a < n_actions_; ++a) {
      if (prob(s, a, s) != 1.0 || this->reward(s, a) != 0.0) {
        throw std::invalid_argument(
            "MdpSpec: terminal state " + std::to_string(s) +
            " must be absorbing with zero reward");
      }
    }
  }
}

void MdpSpec::check_state(int state) const {
  if (state < 0 || state >= n_states_) {
    throw std::out_of_range("state index " + std::to_string(state) +
                            " out of range");
  }
}

void MdpSpec::check_action(int action) const {
  if (action < 0 || action >= n_actions_) {
    throw std::out_of_range("action index " + std::to_string(action) +
                            " out of range");
  }
}

std::span<const double> MdpSpec::row(int state, int action) const {
  const std::size_t offset =
      (static_cast<std::size_t>(state) * n_actions_ + action) * n_states_;
  return {transition_.data() + offset, static_cast<std::size_t>(n_states_)};
}

double MdpSpec::reward(int state, int action) const {
  return reward_[static_cast<std::size_t>(state) * n_actions_ + action];
}

bool MdpSpec::is_terminal(int state) const { return terminal_flag_[state] != 0; }

// ---------------------------------------------------------------------------

Policy::Policy(Kind kind, int n_states, int n_actions, std::vector<double> probs)
    : kind_(kind), n_states_(n_states), n_actions_(n_actions), probs_(std::move(probs)) {}

Policy Policy::Deterministic(int n_actions, std::vector<int> actions) {
  if (n_actions <= 0) throw std::invalid_argument("Policy: n_actions must be positive");
  const int ns = static_cast<int>(actions.size());
  std::vector<double> probs(static_cast<std::size_t>(ns) * n_actions, 0.0);
  for (int s = 0; s < ns; ++s) {
    if (actions[s] < 0 || actions[s] >= n_actions) {
      throw std::invalid_argument("Policy: invalid action index in deterministic table");
    }
    probs[static_cast<std::size_t>(s) * n_actions + actions[s]] = 1.0;
  }
  return Policy(Kind::kDeterministic, ns, n_actions, std::move(probs));
}

Policy Policy::Stochastic(int n_actions, std::vector<double> probabilities) {
  if (n_actions <= 0 || probabilities.size() % n_actions != 0) {
    throw std::invalid_argument("Policy: table size is not a multiple of n_actions");
  }
  const int ns = static_cast<int>(probabilities.size() / n_actions);
  for (int s = 0; s < ns; ++s) {
    double sum = 0.0;
    for (int a = 0; a < n_actions; ++a) {
      const double p = probabilities[static_cast<std::size_t>(s) * n_actions + a];
      if (!(p >= 0.0)) throw std::invalid_argument("Policy: negative probability");
      sum += p;
    }
    if (std::abs(sum - 1.0) > kRowSumTolerance) {
      throw std::invalid_argument("Policy: row does not sum to 1");
    }
  }
  return Policy(Kind::kStochastic, ns, n_actions, std::move(probabilities));
}

Policy Policy::Uniform(int n_states, int n_actions) {
  if (n_states <= 0 || n_actions <= 0) {
    throw std::invalid_argument("Policy: counts must be positive");
  }
  return Policy(Kind::kStochastic, n_states, n_actions,
                std::vector<double>(static_cast<std::size_t>(n_states) * n_actions,
                                    1.0 / n_actions));
}

Policy Policy::EpsilonGreedy(std::span<const double> q_table, int n_states,
                             int n_actions, double epsilon) {
  if (!(epsilon >= 0.0 && epsilon <= 1.0)) {
    throw std::invalid_argument("Policy: epsilon must lie in [0, 1]");
  }
  if (q_table.size() != static_cast<std::size_t>(n_states) * n_actions) {
    throw std::invalid_argument("Policy: Q table has wrong size");
  }
  std::vector<double> probs(q_table.size(), epsilon / n_actions);
  for (int s = 0; s < n_states; ++s) {
    const auto row = q_table.subspan(static_cast<std::size_t>(s) * n_actions, n_actions);
    probs[static_cast<std::size_t>(s) * n_actions + ArgMax(row)] += 1.0 - epsilon;
  }
  return Policy(Kind::kEpsilonGreedy, n_states, n_actions, std::move(probs));
}

std::span<const double> Policy::row(int state) const {
  return {probs_.data() + static_cast<std::size_t>(state) * n_actions_,
          static_cast<std::size_t>(n_actions_)};
}

// ---------------------------------------------------------------------------

int ArgMax(std::span<const double> values) {
  int best = 0;
  for (int i = 1; i < static_cast<int>(values.size()); ++i) {
    if (values[i] > values[best]) best = i;
  }
  return best;
}

double MaxOf(std::span<const double> values) { return values[ArgMax(values)]; }

std::vector<double> ValueIteration(const MdpSpec& mdp, double tol) {
  if (!(tol > 0.0)) throw std::invalid_argument("ValueIteration: tol must be positive");
  const int ns = mdp.n_states(), na = mdp.n_actions();
  const double gamma = mdp.gamma();
  std::vector<double> q(static_cast<std::size_t>(ns) * na, 0.0);
  if (gamma == 0.0) {
    for (int s = 0; s < ns; ++s)
      for (int a = 0; a < na; ++a) q[s * na + a] = mdp.reward(s, a);
    return q;
  }
  const double threshold = tol * (1.0 - gamma) / gamma;
  std::vector<double> v(ns, 0.0);
  for (;;) {
    double delta = 0.0;
    for (int s = 0; s < ns; ++s) {
      for (int a = 0; a < na; ++a) {
        const auto row = mdp.row(s, a);
        double cont = 0.0;
        for (int s2 = 0; s2 < ns; ++s2) cont += row[s2] * v[s2];
        const double updated = mdp.reward(s, a) + gamma * cont;
        delta = std::max(delta, std::abs(updated - q[s * na + a]));
        q[s * na + a] = updated;
      }
    }
    for (int s = 0; s < ns; ++s) v[s] = MaxOf({q.data() + s * na, static_cast<std::size_t>(na)});
    if (delta < threshold) break;
  }
  return q;
}

double ExactXi(const MdpSpec& mdp, std::span<const double> q_table,
               const Policy& rollout, int state, int depth) {
  mdp.check_state(state);
  if (depth < 0) throw std::invalid_argument("ExactXi: depth must be nonnegative");
  const int ns = mdp.n_states();
  const auto w = detail::XiAllStates(
      ns, mdp.n_actions(), mdp.gamma(),
      [&](int s, int a) { return mdp.reward(s, a); },
      [&](int s, int a, auto&& f) {
        const auto row = mdp.row(s, a);
        for (int s2 = 0; s2 < ns; ++s2)
          if (row[s2] != 0.0) f(s2, row[s2]);
      },
      q_table, rollout, depth);
  return w[state];
}

Transition SampleStep(const MdpSpec& mdp, int state, int action, Rng& rng) {
  mdp.check_state(state);
  mdp.check_action(action);
  const auto row = mdp.row(state, action);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  const double u = unit(rng);
  int next = -1;
  double cumulative = 0.0;
  int last_support = 0;
  for (int s2 = 0; s2 < mdp.n_states(); ++s2) {
    if (row[s2] == 0.0) continue;
    last_support = s2;
    cumulative += row[s2];
    if (u < cumulative) {
      next = s2;
      break;
    }
  }
  if (next < 0) next = last_support;  // rounding slack at the top of the CDF
  return Transition{state, action, mdp.reward(state, action), next,
                    mdp.is_terminal(next)};
}

}  // namespace gats
