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

#ifndef GATS_OPTIMISM_H_
#define GATS_OPTIMISM_H_

#include <cstdint>
#include <span>
#include <vector>

#include "gats/mdp.h"
#include "gats/model_view.h"
#include "gats/q_learner.h"

namespace gats {

struct OptimismConfig {
  enum class Backend { kExactSolve, kLearnedC };

  double c = 1.0;            // bonus scale
  double count_floor = 1.0;  // counts below this are raised to it
  Backend backend = Backend::kExactSolve;
  // Learned C keeps bootstrapping through environment terminals unless unset.
  bool bootstrap_through_terminals = true;

  void Validate() const;  // throws std::invalid_argument
};

// c * sqrt(1 / max(N(x, a), floor)) with counts row-major [state][action].
double Bonus(std::span<const std::int64_t> counts, int n_actions, int state, int action,
             const OptimismConfig& cfg);
std::vector<double> BonusTable(std::span<const std::int64_t> counts,
                               const OptimismConfig& cfg);

// Fixed point of C(x, a) = bonus(x, a) + gamma * sum_x' T(x'|x, a) C(x', pi(x'))
// under the given policy, iterated until successive tables differ by less
// than 1e-10 in sup norm. `warm_start` may hold a previous solution.
std::vector<double> SolveC(const ModelView& model, const Policy& policy,
                           std::span<const std::int64_t> counts,
                           const OptimismConfig& cfg,
                           std::span<const double> warm_start = {});

// q_update with the reward of each transition replaced by its bonus.
void LearnedCUpdate(QFunction& c_learner, std::span<const Transition> batch,
                    std::span<const std::int64_t> counts, const OptimismConfig& cfg,
                    const LearnerConfig& learner_cfg);

// Plans with reward r + bonus and leaves Q + C, returns the argmax root action.
int OptimisticAct(const ModelView& model, std::span<const double> q_table,
                  std::span<const double> c_table, std::span<const std::int64_t> counts,
                  int state, int depth, const OptimismConfig& cfg);

}  // namespace gats

#endif  // GATS_OPTIMISM_H_
