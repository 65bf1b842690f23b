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

#include "gats/optimism.h"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "gats/planner.h"

namespace gats {

void OptimismConfig::Validate() const {
  if (!(c > 0.0)) throw std::invalid_argument("optimism: c must be positive");
  if (!(count_floor >= 1.0)) throw std::invalid_argument("optimism: count floor must be at least 1");
}

double Bonus(std::span<const std::int64_t> counts, int n_actions, int state, int action,
             const OptimismConfig& cfg) {
  const double n = static_cast<double>(counts[static_cast<std::size_t>(state) * n_actions + action]);
  return cfg.c * std::sqrt(1.0 / std::max(n, cfg.count_floor));
}

std::vector<double> BonusTable(std::span<const std::int64_t> counts,
                               const OptimismConfig& cfg) {
  std::vector<double> table(counts.size());
  for (std::size_t i = 0; i < counts.size(); ++i) {
    table[i] = cfg.c * std::sqrt(1.0 / std::max(static_cast<double>(counts[i]), cfg.count_floor));
  }
  return table;
}

std::vector<double> SolveC(const ModelView& model, const Policy& policy,
                           std::span<const std::int64_t> counts,
                           const OptimismConfig& cfg, std::span<const double> warm_start) {
  cfg.Validate();
  const int ns = model.n_states(), na = model.n_actions();
  const std::size_t size = static_cast<std::size_t>(ns) * na;
  if (counts.size() != size) throw std::invalid_argument("SolveC: counts have wrong size");
  if (policy.n_states() != ns || policy.n_actions() != na) {
    throw std::invalid_argument("SolveC: policy does not match the model");
  }
  const std::vector<double> bonus = BonusTable(counts, cfg);
  std::vector<double> c(size, 0.0);
  if (warm_start.size() == size) std::copy(warm_start.begin(), warm_start.end(), c.begin());
  std::vector<double> next(size);
  std::vector<double> v(ns);
  const double gamma = model.gamma();
  for (;;) {
    for (int s = 0; s < ns; ++s) {
      double value = 0.0;
      for (int a = 0; a < na; ++a) value += policy.probability(s, a) * c[static_cast<std::size_t>(s) * na + a];
      v[s] = value;
    }
    double delta = 0.0;
    for (int s = 0; s < ns; ++s) {
      for (int a = 0; a < na; ++a) {
        const std::size_t i = static_cast<std::size_t>(s) * na + a;
        double cont = 0.0;
        for (const Successor& succ : model.successors(s, a)) cont += succ.prob * v[succ.state];
        next[i] = bonus[i] + gamma * cont;
        delta = std::max(delta, std::abs(next[i] - c[i]));
      }
    }
    c.swap(next);
    if (delta < 1e-10) break;
  }
  return c;
}

void LearnedCUpdate(QFunction& c_learner, std::span<const Transition> batch,
                    std::span<const std::int64_t> counts, const OptimismConfig& cfg,
                    const LearnerConfig& learner_cfg) {
  if (batch.empty()) throw std::invalid_argument("LearnedCUpdate: empty batch");
  std::vector<Transition> substituted(batch.begin(), batch.end());
  for (Transition& t : substituted) {
    t.reward = Bonus(counts, c_learner.n_actions(), t.state, t.action, cfg);
    if (cfg.bootstrap_through_terminals) t.terminal = false;
  }
  QUpdate(c_learner, substituted, learner_cfg);
}

int OptimisticAct(const ModelView& model, std::span<const double> q_table,
                  std::span<const double> c_table, std::span<const std::int64_t> counts,
                  int state, int depth, const OptimismConfig& cfg) {
  if (q_table.size() != c_table.size()) {
    throw std::invalid_argument("OptimisticAct: Q and C tables differ in size");
  }
  const ModelView optimistic = model.WithRewardBonus(BonusTable(counts, cfg));
  std::vector<double> leaf(q_table.size());
  for (std::size_t i = 0; i < leaf.size(); ++i) leaf[i] = q_table[i] + c_table[i];
  return Plan(optimistic, leaf, state, depth, {.record_simulated = false}).chosen_action;
}

}  // namespace gats
