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

#ifndef GATS_BOUND_CHECKER_H_
#define GATS_BOUND_CHECKER_H_

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "gats/empirical_model.h"
#include "gats/mdp.h"
#include "gats/model_view.h"

namespace gats {

// Absolute tolerance for declaring that the bound holds.
inline constexpr double kBoundTolerance = 1e-9;

struct BoundCoefficients {
  double a_t = 0.0;
  double a_r = 0.0;
  double a_q = 0.0;
};

// Coefficients of the model-error bound on the lookahead return:
//   a_T = (1 - g^H + H g^H (1 - g)) / (1 - g)^2
//   a_R = (1 - g^H) / (1 - g)
//   a_Q = g^H
// Evaluated through the finite geometric sum so that g close to 1 does not
// cancel. Throws for gamma outside [0, 1) or negative depth.
BoundCoefficients Coefficients(double gamma, int depth);

// Term-by-term sums from the derivation:
//   a_T = sum_{i=1..H} g^{i-1} (1 - g^{H+1-i}) / (1 - g),  a_R = sum_{i=1..H} g^{i-1}
// The closed-form a_T exceeds this one by exactly 2 H g^H / (1 - g).
BoundCoefficients PartialSumCoefficients(double gamma, int depth);

// The lookahead return under a learned model and estimated Q.
double ExactXiP(const ModelView& model, std::span<const double> q_hat,
                const Policy& rollout, int state, int depth);

struct BoundReport {
  double lhs = 0.0;  // max_x |xi_p(x) - xi(x)|
  double rhs = 0.0;
  BoundCoefficients coefficients;
  ModelErrors errors;
  bool holds = true;
  double slack = 0.0;  // rhs - lhs
  std::vector<double> per_state_lhs;
};

BoundReport CheckModelErrorBound(const MdpSpec& truth, const ModelView& model,
                              std::span<const double> q_true,
                              std::span<const double> q_hat, const Policy& rollout,
                              int depth);

// |max Q_hat - max Q| <= max_a |Q_hat(a) - Q(a)|
bool CheckMaxDifference(std::span<const double> q_row, std::span<const double> q_hat_row);

// Randomized certification run over many small instances.
struct BoundCheckParams {
  int n_instances = 1000;
  int n_states = 6;
  int n_actions = 3;
  std::vector<int> depths{1, 2, 3};
  std::vector<double> gammas{0.5, 0.9, 0.99};
  std::uint64_t seed = 0;
  double reward_density = 0.5;
  double q_perturbation = 0.5;  // Q_hat = Q + U[-q_perturbation, q_perturbation]
  int max_samples_per_pair = 4;  // model sees U{0..max} samples of each (x, a)

  void Validate() const;
};

struct BoundCheckRow {
  std::uint64_t seed = 0;
  int depth = 0;
  double gamma = 0.0;
  BoundReport report;  // worse of the uniform and greedy-over-Q_hat rollouts
};

std::vector<BoundCheckRow> RunBoundCheck(const BoundCheckParams& params);
// seed,H,gamma,e_T,e_R,e_Q,lhs,rhs,slack,holds
std::string BoundCheckCsv(const std::vector<BoundCheckRow>& rows);

}  // namespace gats

#endif  // GATS_BOUND_CHECKER_H_
