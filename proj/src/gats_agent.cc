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

#include "gats/gats_agent.h"

#include <stdexcept>

namespace gats {

void GatsConfig::Validate() const {
  if (depth < 0) throw std::invalid_argument("depth must be nonnegative");
  if (model_update_period <= 0) throw std::invalid_argument("model_update_period must be positive");
  if (max_steps < 1) throw std::invalid_argument("max_steps must be at least 1");
  if (dyna) {
    if (dyna->k <= 0) throw std::invalid_argument("dyna k must be positive");
    if (!(dyna->epsilon >= 0.0 && dyna->epsilon <= 1.0)) {
      throw std::invalid_argument("dyna epsilon must lie in [0, 1]");
    }
    if (!(dyna->p >= 0.0 && dyna->p <= 1.0)) throw std::invalid_argument("dyna p must lie in [0, 1]");
  }
  if (optimism) optimism_cfg.Validate();
}

std::vector<EpisodeLog> GatsDecisionLoop(const MdpSpec& env, int start_state,
                                         QLearner& learner, const GatsConfig& cfg,
                                         int episodes, Rng& rng, std::uint64_t seed) {
  cfg.Validate();
  const QFunction& q = learner.q();
  if (q.n_states() != env.n_states() || q.n_actions() != env.n_actions()) {
    throw std::invalid_argument("GatsDecisionLoop: learner and environment spaces differ");
  }
  const bool learned = cfg.model_source == ModelSource::kLearned;
  const bool track_counts = learned || cfg.optimism;
  EmpiricalModel empirical(env.n_states(), env.n_actions(), env.gamma());
  ModelView model = learned ? empirical.AsModelView(cfg.learned_reward_mode)
                            : ModelView::FromMdp(env);
  const PlanOptions plan_options{.record_simulated = cfg.dyna.has_value()};

  std::vector<double> c_table;
  std::int64_t env_steps = 0;
  std::vector<EpisodeLog> logs;
  logs.reserve(episodes);
  for (int episode = 0; episode < episodes; ++episode) {
    const double epsilon = learner.config().epsilon.At(episode);
    PlanResult last_plan;
    auto actor = [&](int state) {
      std::vector<double> leaf_storage;
      std::span<const double> leaf;
      if (q.backend() == QBackend::kTabular) {
        leaf = q.TabularView();
      } else {
        leaf_storage = q.Table();
        leaf = leaf_storage;
      }
      if (cfg.optimism) {
        const auto counts = empirical.visit_counts();
        const Policy greedy = Policy::EpsilonGreedy(leaf, env.n_states(), env.n_actions(), 0.0);
        c_table = SolveC(model, greedy, counts, cfg.optimism_cfg, c_table);
        if (cfg.dyna) last_plan = Plan(model, leaf, state, cfg.depth, plan_options);
        return OptimisticAct(model, leaf, c_table, counts, state, cfg.depth, cfg.optimism_cfg);
      }
      last_plan = Plan(model, leaf, state, cfg.depth, plan_options);
      return EpsGreedyOver(last_plan.root_values, epsilon, rng);
    };
    auto observer = [&](const Transition& t) {
      learner.AddExperience(t);
      if (cfg.dyna) {
        for (const Transition& sim : ExtractDynaSamples(last_plan, *cfg.dyna, rng)) {
          learner.AddExperience(sim);
        }
      }
      if (track_counts) empirical.Observe(t);
      learner.OnEnvStep(rng);
      ++env_steps;
      if (learned && env_steps % cfg.model_update_period == 0) {
        model = empirical.AsModelView(cfg.learned_reward_mode);
      }
    };
    EpisodeLog log =
        RunEpisode(env, start_state, actor, cfg.max_steps, env.gamma(), rng, observer);
    log.seed = seed;
    logs.push_back(std::move(log));
  }
  return logs;
}

}  // namespace gats
