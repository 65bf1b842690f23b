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

#include "gats/q_learner.h"

#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>

namespace gats {
namespace {

std::size_t MlpParameterCount(int ns, int na, int hidden) {
  return static_cast<std::size_t>(hidden) * ns + hidden +
         static_cast<std::size_t>(na) * hidden + na;
}

}  // namespace

QFunction::QFunction(QBackend backend, int n_states, int n_actions, int hidden,
                     std::vector<double> live)
    : backend_(backend),
      n_states_(n_states),
      n_actions_(n_actions),
      hidden_(hidden),
      live_(std::move(live)),
      target_(live_) {}

QFunction QFunction::Tabular(int n_states, int n_actions, std::vector<double> table) {
  if (n_states <= 0 || n_actions <= 0) {
    throw std::invalid_argument("QFunction: counts must be positive");
  }
  const std::size_t size = static_cast<std::size_t>(n_states) * n_actions;
  if (table.empty()) table.assign(size, 0.0);
  if (table.size() != size) throw std::invalid_argument("QFunction: table has wrong size");
  for (double v : table) {
    if (!std::isfinite(v)) throw std::invalid_argument("QFunction: non-finite entry");
  }
  return QFunction(QBackend::kTabular, n_states, n_actions, 0, std::move(table));
}

QFunction QFunction::TabularUniform(int n_states, int n_actions, double low,
                                    double high, Rng& rng) {
  std::uniform_real_distribution<double> dist(low, high);
  std::vector<double> table(static_cast<std::size_t>(n_states) * n_actions);
  for (double& v : table) v = dist(rng);
  return Tabular(n_states, n_actions, std::move(table));
}

QFunction QFunction::Mlp(int n_states, int n_actions, int hidden_width, Rng& rng) {
  if (n_states <= 0 || n_actions <= 0 || hidden_width <= 0) {
    throw std::invalid_argument("QFunction: counts must be positive");
  }
  std::vector<double> params(MlpParameterCount(n_states, n_actions, hidden_width));
  // One-hot input: fan-in of the first layer is n_states.
  const double bound1 = 1.0 / std::sqrt(static_cast<double>(n_states));
  const double bound2 = 1.0 / std::sqrt(static_cast<double>(hidden_width));
  std::uniform_real_distribution<double> layer1(-bound1, bound1);
  std::uniform_real_distribution<double> layer2(-bound2, bound2);
  const std::size_t first_layer = static_cast<std::size_t>(hidden_width) * n_states + hidden_width;
  for (std::size_t i = 0; i < params.size(); ++i) {
    params[i] = i < first_layer ? layer1(rng) : layer2(rng);
  }
  return QFunction(QBackend::kMlp, n_states, n_actions, hidden_width, std::move(params));
}

QFunction QFunction::FromParameters(QBackend backend, int n_states, int n_actions,
                                    int hidden_width, std::vector<double> live,
                                    std::vector<double> target) {
  const std::size_t expected =
      backend == QBackend::kTabular
          ? static_cast<std::size_t>(n_states) * n_actions
          : MlpParameterCount(n_states, n_actions, hidden_width);
  if (n_states <= 0 || n_actions <= 0 || live.size() != expected ||
      target.size() != expected) {
    throw std::invalid_argument("QFunction: parameter vectors do not match dims");
  }
  QFunction q(backend, n_states, n_actions,
              backend == QBackend::kTabular ? 0 : hidden_width, std::move(live));
  q.target_ = std::move(target);
  return q;
}

void QFunction::Forward(std::span<const double> params, int state,
                        std::span<double> out) const {
  if (backend_ == QBackend::kTabular) {
    const auto row = params.subspan(static_cast<std::size_t>(state) * n_actions_, n_actions_);
    std::copy(row.begin(), row.end(), out.begin());
    return;
  }
  const double* w1 = params.data();
  const double* b1 = w1 + static_cast<std::size_t>(hidden_) * n_states_;
  const double* w2 = b1 + hidden_;
  const double* b2 = w2 + static_cast<std::size_t>(n_actions_) * hidden_;
  for (int a = 0; a < n_actions_; ++a) out[a] = b2[a];
  for (int j = 0; j < hidden_; ++j) {
    const double h = std::max(0.0, w1[static_cast<std::size_t>(j) * n_states_ + state] + b1[j]);
    if (h == 0.0) continue;
    for (int a = 0; a < n_actions_; ++a) out[a] += w2[static_cast<std::size_t>(a) * hidden_ + j] * h;
  }
}

double QFunction::Value(int state, int action) const {
  if (backend_ == QBackend::kTabular) {
    return live_[static_cast<std::size_t>(state) * n_actions_ + action];
  }
  std::vector<double> out(n_actions_);
  Forward(live_, state, out);
  return out[action];
}

void QFunction::Values(int state, std::span<double> out) const { Forward(live_, state, out); }

void QFunction::TargetValues(int state, std::span<double> out) const {
  Forward(target_, state, out);
}

double QFunction::MaxTarget(int state) const {
  if (backend_ == QBackend::kTabular) {
    return MaxOf({target_.data() + static_cast<std::size_t>(state) * n_actions_,
                  static_cast<std::size_t>(n_actions_)});
  }
  std::vector<double> out(n_actions_);
  Forward(target_, state, out);
  return MaxOf(out);
}

std::vector<double> QFunction::Table() const {
  if (backend_ == QBackend::kTabular) return live_;
  std::vector<double> table(static_cast<std::size_t>(n_states_) * n_actions_);
  for (int s = 0; s < n_states_; ++s) {
    Forward(live_, s, {table.data() + static_cast<std::size_t>(s) * n_actions_,
                       static_cast<std::size_t>(n_actions_)});
  }
  return table;
}

std::span<const double> QFunction::TabularView() const {
  if (backend_ != QBackend::kTabular) {
    throw std::logic_error("QFunction::TabularView called on an MLP backend");
  }
  return live_;
}

double QFunction::BatchLoss(std::span<const Transition> batch, double gamma) const {
  if (batch.empty()) throw std::invalid_argument("BatchLoss: empty batch");
  double total = 0.0;
  for (const Transition& t : batch) {
    const double err = TdTarget(t, *this, gamma) - Value(t.state, t.action);
    total += err * err;
  }
  return total / static_cast<double>(batch.size());
}

std::vector<double> QFunction::BatchLossGradient(std::span<const Transition> batch,
                                                 double gamma) const {
  if (batch.empty()) throw std::invalid_argument("BatchLossGradient: empty batch");
  std::vector<double> grad(live_.size(), 0.0);
  const double scale = -2.0 / static_cast<double>(batch.size());
  if (backend_ == QBackend::kTabular) {
    for (const Transition& t : batch) {
      const std::size_t idx = static_cast<std::size_t>(t.state) * n_actions_ + t.action;
      grad[idx] += scale * (TdTarget(t, *this, gamma) - live_[idx]);
    }
    return grad;
  }
  const std::size_t w1_off = 0;
  const std::size_t b1_off = static_cast<std::size_t>(hidden_) * n_states_;
  const std::size_t w2_off = b1_off + hidden_;
  const std::size_t b2_off = w2_off + static_cast<std::size_t>(n_actions_) * hidden_;
  std::vector<double> hidden(hidden_);
  for (const Transition& t : batch) {
    const double y = TdTarget(t, *this, gamma);
    double q = live_[b2_off + t.action];
    for (int j = 0; j < hidden_; ++j) {
      const double pre = live_[w1_off + static_cast<std::size_t>(j) * n_states_ + t.state] +
                         live_[b1_off + j];
      hidden[j] = std::max(0.0, pre);
      q += live_[w2_off + static_cast<std::size_t>(t.action) * hidden_ + j] * hidden[j];
    }
    const double g = scale * (y - q);  // dL/dQ(x, a)
    grad[b2_off + t.action] += g;
    for (int j = 0; j < hidden_; ++j) {
      const std::size_t w2_idx = w2_off + static_cast<std::size_t>(t.action) * hidden_ + j;
      grad[w2_idx] += g * hidden[j];
      if (hidden[j] > 0.0) {
        const double dh = g * live_[w2_idx];
        grad[w1_off + static_cast<std::size_t>(j) * n_states_ + t.state] += dh;
        grad[b1_off + j] += dh;
      }
    }
  }
  return grad;
}

// ---------------------------------------------------------------------------

double EpsilonSchedule::At(int counter) const {
  if (decay <= 0 || counter >= decay) return end;
  const double frac = static_cast<double>(counter) / decay;
  return start + (end - start) * frac;
}

void LearnerConfig::Validate() const {
  if (!(learning_rate >= 0.0)) throw std::invalid_argument("learning_rate must be nonnegative");
  if (batch_size <= 0) throw std::invalid_argument("batch_size must be positive");
  if (target_sync_period <= 0) throw std::invalid_argument("target_sync_period must be positive");
  if (update_period <= 0) throw std::invalid_argument("update_period must be positive");
  if (buffer_capacity <= 0) throw std::invalid_argument("buffer_capacity must be positive");
  if (hidden_width <= 0) throw std::invalid_argument("hidden_width must be positive");
  if (!(discount >= 0.0 && discount < 1.0)) throw std::invalid_argument("discount must lie in [0, 1)");
  for (double e : {epsilon.start, epsilon.end}) {
    if (!(e >= 0.0 && e <= 1.0)) throw std::invalid_argument("epsilon must lie in [0, 1]");
  }
  if (epsilon.decay < 0) throw std::invalid_argument("epsilon decay must be nonnegative");
  if (!(recency_lambda > 0.0 && recency_lambda <= 1.0)) {
    throw std::invalid_argument("recency_lambda must lie in (0, 1]");
  }
}

double TdTarget(const Transition& t, const QFunction& q, double gamma) {
  if (t.terminal) return t.reward;
  return t.reward + gamma * q.MaxTarget(t.next_state);
}

void QUpdate(QFunction& q, std::span<const Transition> batch, const LearnerConfig& cfg) {
  if (batch.empty()) throw std::invalid_argument("QUpdate: empty batch");
  const double eta = cfg.learning_rate;
  if (q.backend() == QBackend::kTabular) {
    // Mean target per touched entry, all computed before any write.
    std::map<std::size_t, std::pair<double, int>> targets;
    for (const Transition& t : batch) {
      auto& [sum, count] =
          targets[static_cast<std::size_t>(t.state) * q.n_actions() + t.action];
      sum += TdTarget(t, q, cfg.discount);
      ++count;
    }
    auto params = q.parameters();
    for (const auto& [idx, acc] : targets) {
      const double y = acc.first / acc.second;
      params[idx] = (1.0 - eta) * params[idx] + eta * y;
    }
    return;
  }
  const std::vector<double> grad = q.BatchLossGradient(batch, cfg.discount);
  auto params = q.parameters();
  for (std::size_t i = 0; i < params.size(); ++i) params[i] -= eta * grad[i];
}

int EpsGreedyOver(std::span<const double> action_values, double epsilon, Rng& rng) {
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  if (unit(rng) < epsilon) {
    return std::uniform_int_distribution<int>(
        0, static_cast<int>(action_values.size()) - 1)(rng);
  }
  return ArgMax(action_values);
}

int ActEpsGreedy(const QFunction& q, int state, double epsilon, Rng& rng) {
  if (!(epsilon >= 0.0 && epsilon <= 1.0)) {
    throw std::invalid_argument("ActEpsGreedy: epsilon must lie in [0, 1]");
  }
  std::vector<double> values(q.n_actions());
  q.Values(state, values);
  return EpsGreedyOver(values, epsilon, rng);
}

// ---------------------------------------------------------------------------

ReplayBuffer::ReplayBuffer(int capacity, ReplaySampling mode, double recency_lambda)
    : capacity_(capacity), mode_(mode), lambda_(recency_lambda) {
  if (capacity <= 0) throw std::invalid_argument("ReplayBuffer: capacity must be positive");
  if (!(recency_lambda > 0.0 && recency_lambda <= 1.0)) {
    throw std::invalid_argument("ReplayBuffer: lambda must lie in (0, 1]");
  }
  items_.reserve(std::min(capacity, 1 << 16));
}

void ReplayBuffer::Push(const Transition& t) {
  if (static_cast<int>(items_.size()) < capacity_) {
    items_.push_back(t);
  } else {
    items_[inserted_ % capacity_] = t;
  }
  ++inserted_;
}

const Transition& ReplayBuffer::AtAge(int age) const {
  const std::uint64_t newest = inserted_ - 1;
  return items_[(newest - static_cast<std::uint64_t>(age)) % capacity_];
}

double ReplayBuffer::Probability(int age) const {
  const int n = size();
  if (age < 0 || age >= n) return 0.0;
  if (mode_ == ReplaySampling::kUniform || lambda_ == 1.0) return 1.0 / n;
  // lambda^k (1 - lambda) / (1 - lambda^n)
  const double log_lambda = std::log(lambda_);
  return std::exp(age * log_lambda) * -std::expm1(log_lambda) /
         -std::expm1(n * log_lambda);
}

std::vector<Transition> ReplayBuffer::Sample(int m, Rng& rng) const {
  if (m <= 0) throw std::invalid_argument("ReplayBuffer::Sample: m must be positive");
  if (items_.empty()) throw std::logic_error("ReplayBuffer::Sample: buffer is empty");
  const int n = size();
  std::vector<Transition> batch;
  batch.reserve(m);
  if (mode_ == ReplaySampling::kUniform || lambda_ == 1.0) {
    std::uniform_int_distribution<int> pick(0, n - 1);
    for (int i = 0; i < m; ++i) batch.push_back(AtAge(pick(rng)));
    return batch;
  }
  // Inverse CDF of the truncated geometric law over ages.
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  const double log_lambda = std::log(lambda_);
  const double mass = std::expm1(n * log_lambda);  // lambda^n - 1
  for (int i = 0; i < m; ++i) {
    const double u = unit(rng);
    const double k = std::floor(std::log1p(u * mass) / log_lambda);
    batch.push_back(AtAge(std::clamp(static_cast<int>(k), 0, n - 1)));
  }
  return batch;
}

// ---------------------------------------------------------------------------

QLearner::QLearner(QFunction q, LearnerConfig cfg)
    : q_(std::move(q)),
      cfg_(cfg),
      buffer_(cfg.buffer_capacity, cfg.sampling, cfg.recency_lambda) {
  cfg_.Validate();
}

void QLearner::OnEnvStep(Rng& rng) {
  ++env_steps_;
  if (env_steps_ % cfg_.update_period != 0 || buffer_.size() == 0) return;
  const std::vector<Transition> batch = buffer_.Sample(cfg_.batch_size, rng);
  QUpdate(q_, batch, cfg_);
  ++updates_;
  if (updates_ % cfg_.target_sync_period == 0) q_.SyncTarget();
}

}  // namespace gats
