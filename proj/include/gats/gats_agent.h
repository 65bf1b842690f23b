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

#ifndef GATS_GATS_AGENT_H_
#define GATS_GATS_AGENT_H_

#include <optional>
#include <vector>

#include "gats/empirical_model.h"
#include "gats/goldfish.h"
#include "gats/mdp.h"
#include "gats/optimism.h"
#include "gats/planner.h"
#include "gats/q_learner.h"

namespace gats {

enum class ModelSource { kTrue, kLearned };

struct GatsConfig {
  int depth = 0;
  std::optional<DynaStrategy> dyna;  // push tree samples into the replay buffer
  ModelSource model_source = ModelSource::kTrue;
  RewardMode learned_reward_mode = RewardMode::kMean;
  int model_update_period = 16;  // env steps between learned-model refits
  // Replace epsilon-greedy by planning with count bonuses and an exact C table.
  bool optimism = false;
  OptimismConfig optimism_cfg;
  int max_steps = 100;

  void Validate() const;
};

// The GATS(H) decision loop. Every environment step:
//   plan on the model -> epsilon-greedy over the root values -> act in env ->
//   store the real transition (plus tree samples with Dyna) -> learner step.
// Epsilon follows the learner's schedule indexed by episode. A learned model
// observes real transitions and is refit every model_update_period steps.
std::vector<EpisodeLog> GatsDecisionLoop(const MdpSpec& env, int start_state,
                                         QLearner& learner, const GatsConfig& cfg,
                                         int episodes, Rng& rng, std::uint64_t seed = 0);

}  // namespace gats

#endif  // GATS_GATS_AGENT_H_
