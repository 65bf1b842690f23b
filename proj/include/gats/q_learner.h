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

#ifndef GATS_Q_LEARNER_H_
#define GATS_Q_LEARNER_H_

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "gats/mdp.h"

namespace gats {

enum class QBackend { kTabular, kMlp };

// State-action value estimator with a frozen target copy.
//
// Tabular parameters are the row-major [state][action] table. MLP parameters
// belong to a one-hidden-layer ReLU network over one-hot states, flattened as
// W1 [hidden x states], b1 [hidden], W2 [actions x hidden], b2 [actions].
class QFunction {
 public:
  static QFunction Tabular(int n_states, int n_actions, std::vector<double> table = {});
  // Table entries drawn uniformly from [low, high).
  static QFunction TabularUniform(int n_states, int n_actions, double low,
                                  double high, Rng& rng);
  // Weights uniform in [-1/sqrt(fan_in), 1/sqrt(fan_in)].
  static QFunction Mlp(int n_states, int n_actions, int hidden_width, Rng& rng);
  // Rebuild from raw parameter vectors (checkpoint loading).
  static QFunction FromParameters(QBackend backend, int n_states, int n_actions,
                                  int hidden_width, std::vector<double> live,
                                  std::vector<double> target);

  QBackend backend() const { return backend_; }
  int n_states() const { return n_states_; }
  int n_actions() const { return n_actions_; }
  int hidden_width() const { return hidden_; }

  double Value(int state, int action) const;
  void Values(int state, std::span<double> out) const;
  void TargetValues(int state, std::span<double> out) const;
  double MaxTarget(int state) const;

  // Live values for every state, row-major [state][action].
  std::vector<double> Table() const;
  // Direct view of the live table; tabular backend only.
  std::span<const double> TabularView() const;

  void SyncTarget() { target_ = live_; }

  std::span<double> parameters() { return live_; }
  std::span<const double> parameters() const { return live_; }
  std::span<const double> target_parameters() const { return target_; }

  // Mean over the batch of (y - Q(x, a))^2 with y from the target copy.
  double BatchLoss(std::span<const Transition> batch, double gamma) const;
  // Analytic gradient of BatchLoss with respect to parameters().
  std::vector<double> BatchLossGradient(std::span<const Transition> batch,
                                        double gamma) const;

 private:
  QFunction(QBackend backend, int n_states, int n_actions, int hidden,
            std::vector<double> live);
  void Forward(std::span<const double> params, int state, std::span<double> out) const;

  QBackend backend_;
  int n_states_;
  int n_actions_;
  int hidden_;
  std::vector<double> live_;
  std::vector<double> target_;
};

struct EpsilonSchedule {
  double start = 1.0;
  double end = 0.05;
  int decay = 150;  // counter value at which `end` is reached

  // Linear interpolation from start to end, constant afterwards.
  double At(int counter) const;
};

enum class ReplaySampling { kUniform, kRecency };

struct LearnerConfig {
  double learning_rate = 0.1;
  int batch_size = 32;
  int target_sync_period = 50;  // in updates
  EpsilonSchedule epsilon;
  int update_period = 4;  // env steps per update
  int buffer_capacity = 10000;
  int hidden_width = 64;
  double discount = 0.99;
  ReplaySampling sampling = ReplaySampling::kUniform;
  double recency_lambda = 0.9999;

  void Validate() const;  // throws std::invalid_argument
};

// y = r for terminal transitions, else r + gamma * max_a' Q_target(x', a').
double TdTarget(const Transition& t, const QFunction& q, double gamma);

// One learning step on the batch. Tabular: every touched entry moves to
// (1 - eta) Q + eta * mean(y) over its batch targets. MLP: one SGD step on
// the batch-mean squared TD error. Targets come from the frozen copy, which
// is left untouched. Throws on an empty batch.
void QUpdate(QFunction& q, std::span<const Transition> batch, const LearnerConfig& cfg);

// One uniform draw decides exploration, then a second picks the random action.
int ActEpsGreedy(const QFunction& q, int state, double epsilon, Rng& rng);
int EpsGreedyOver(std::span<const double> action_values, double epsilon, Rng& rng);

class ReplayBuffer {
 public:
  explicit ReplayBuffer(int capacity, ReplaySampling mode = ReplaySampling::kUniform,
                        double recency_lambda = 0.9999);

  void Push(const Transition& t);
  int size() const { return static_cast<int>(items_.size()); }
  int capacity() const { return capacity_; }
  std::uint64_t inserted() const { return inserted_; }
  ReplaySampling mode() const { return mode_; }

  // Age 0 is the newest item.
  const Transition& AtAge(int age) const;
  // Probability that a single draw returns the item of the given age.
  double Probability(int age) const;
  // m draws with replacement. Recency mode weights age k by lambda^k.
  std::vector<Transition> Sample(int m, Rng& rng) const;

 private:
  int capacity_;
  ReplaySampling mode_;
  double lambda_;
  std::vector<Transition> items_;
  std::uint64_t inserted_ = 0;
};

// Replay-based learner: buffer, update cadence, target sync cadence.
class QLearner {
 public:
  QLearner(QFunction q, LearnerConfig cfg);

  void AddExperience(const Transition& t) { buffer_.Push(t); }
  // Counts one environment step; runs an update every update_period steps
  // and syncs the target every target_sync_period updates.
  void OnEnvStep(Rng& rng);

  const QFunction& q() const { return q_; }
  QFunction& mutable_q() { return q_; }
  const LearnerConfig& config() const { return cfg_; }
  const ReplayBuffer& buffer() const { return buffer_; }
  std::int64_t updates() const { return updates_; }

 private:
  QFunction q_;
  LearnerConfig cfg_;
  ReplayBuffer buffer_;
  std::int64_t env_steps_ = 0;
  std::int64_t updates_ = 0;
};

}  // namespace gats

#endif  // GATS_Q_LEARNER_H_
