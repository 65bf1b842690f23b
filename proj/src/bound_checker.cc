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

#include "gats/bound_checker.h"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include "gats/csv.h"
#include "gats/detail/xi_recursion.h"
#include "gats/goldfish.h"

namespace gats {
namespace {

void CheckGammaDepth(double gamma, int depth) {
  if (!(gamma >= 0.0 && gamma < 1.0)) throw std::invalid_argument("gamma must lie in [0, 1)");
  if (depth < 0) throw std::invalid_argument("depth must be nonnegative");
}

// sum_{i<n} gamma^i
double GeometricSum(double gamma, int n) {
  double sum = 0.0, term = 1.0;
  for (int i = 0; i < n; ++i) {
    sum += term;
    term *= gamma;
  }
  return sum;
}

}  // namespace

BoundCoefficients Coefficients(double gamma, int depth) {
  CheckGammaDepth(gamma, depth);
  const double geo = GeometricSum(gamma, depth);  // (1 - g^H) / (1 - g)
  const double g_h = std::pow(gamma, depth);
  BoundCoefficients c;
  c.a_t = (geo + depth * g_h) / (1.0 - gamma);
  c.a_r = geo;
  c.a_q = g_h;
  return c;
}

BoundCoefficients PartialSumCoefficients(double gamma, int depth) {
  CheckGammaDepth(gamma, depth);
  BoundCoefficients c;
  double g_prev = 1.0;  // gamma^{i-1}
  for (int i = 1; i <= depth; ++i) {
    // (1 - g^{H+1-i}) / (1 - g) written as a finite sum.
    c.a_t += g_prev * GeometricSum(gamma, depth + 1 - i);
    c.a_r += g_prev;
    g_prev *= gamma;
  }
  c.a_q = std::pow(gamma, depth);
  return c;
}

double ExactXiP(const ModelView& model, std::span<const double> q_hat,
                const Policy& rollout, int state, int depth) {
  if (state < 0 || state >= model.n_states()) throw std::out_of_range("ExactXiP: state out of range");
  if (depth < 0) throw std::invalid_argument("ExactXiP: depth must be nonnegative");
  const auto w = detail::XiAllStates(
      model.n_states(), model.n_actions(), model.gamma(),
      [&](int s, int a) { return model.reward(s, a); },
      [&](int s, int a, auto&& f) {
        for (const Successor& succ : model.successors(s, a)) f(succ.state, succ.prob);
      },
      q_hat, rollout, depth);
  return w[state];
}

BoundReport CheckModelErrorBound(const MdpSpec& truth, const ModelView& model,
                              std::span<const double> q_true,
                              std::span<const double> q_hat, const Policy& rollout,
                              int depth) {
  if (model.gamma() != truth.gamma()) {
    throw std::invalid_argument("CheckModelErrorBound: model and truth use different discounts");
  }
  BoundReport report;
  report.errors = MeasureErrors(truth, model, q_true, q_hat);
  report.coefficients = Coefficients(truth.gamma(), depth);
  report.rhs = report.coefficients.a_t * report.errors.e_t +
               report.coefficients.a_r * report.errors.e_r +
               report.coefficients.a_q * report.errors.e_q;
  report.per_state_lhs.resize(truth.n_states());
  for (int x = 0; x < truth.n_states(); ++x) {
    const double xi = ExactXi(truth, q_true, rollout, x, depth);
    const double xi_p = ExactXiP(model, q_hat, rollout, x, depth);
    report.per_state_lhs[x] = std::abs(xi_p - xi);
    report.lhs = std::max(report.lhs, report.per_state_lhs[x]);
  }
  report.slack = report.rhs - report.lhs;
  report.holds = report.lhs <= report.rhs + kBoundTolerance;
  return report;
}

bool CheckMaxDifference(std::span<const double> q_row, std::span<const double> q_hat_row) {
  if (q_row.size() != q_hat_row.size() || q_row.empty()) {
    throw std::invalid_argument("CheckMaxDifference: rows must be nonempty and of equal length");
  }
  double e_q = 0.0;
  for (std::size_t i = 0; i < q_row.size(); ++i) e_q = std::max(e_q, std::abs(q_row[i] - q_hat_row[i]));
  return std::abs(MaxOf(q_hat_row) - MaxOf(q_row)) <= e_q;
}

void BoundCheckParams::Validate() const {
  if (n_instances < 0) throw std::invalid_argument("n_instances must be nonnegative");
  if (n_states < 2 || n_actions < 1) throw std::invalid_argument("need at least 2 states and 1 action");
  for (int h : depths) {
    if (h < 0) throw std::invalid_argument("depths must be nonnegative");
  }
  for (double g : gammas) {
    if (!(g >= 0.0 && g < 1.0)) throw std::invalid_argument("gammas must lie in [0, 1)");
  }
  if (max_samples_per_pair < 0) throw std::invalid_argument("max_samples_per_pair must be nonnegative");
}

std::vector<BoundCheckRow> RunBoundCheck(const BoundCheckParams& params) {
  params.Validate();
  std::vector<BoundCheckRow> rows;
  for (int i = 0; i < params.n_instances; ++i) {
    const std::uint64_t seed = params.seed + static_cast<std::uint64_t>(i);
    for (double gamma : params.gammas) {
      const MdpSpec truth =
          RandomMdp(params.n_states, params.n_actions, params.reward_density, seed, gamma);
      // Separate stream so the model draws do not depend on the MDP draws.
      Rng rng(seed ^ 0x9E3779B97F4A7C15ULL);
      EmpiricalModel learned(truth.n_states(), truth.n_actions(), gamma);
      std::uniform_int_distribution<int> samples(0, params.max_samples_per_pair);
      for (int s = 0; s < truth.n_states(); ++s) {
        for (int a = 0; a < truth.n_actions(); ++a) {
          const int n = samples(rng);
          for (int k = 0; k < n; ++k) learned.Observe(SampleStep(truth, s, a, rng));
        }
      }
      const ModelView model = learned.AsModelView(RewardMode::kMean);
      const std::vector<double> q_true = ValueIteration(truth, 1e-12);
      std::vector<double> q_hat = q_true;
      std::uniform_real_distribution<double> noise(-params.q_perturbation, params.q_perturbation);
      for (double& v : q_hat) v += noise(rng);
      const Policy uniform = Policy::Uniform(truth.n_states(), truth.n_actions());
      const Policy greedy =
          Policy::EpsilonGreedy(q_hat, truth.n_states(), truth.n_actions(), 0.0);
      for (int depth : params.depths) {
        BoundReport a = CheckModelErrorBound(truth, model, q_true, q_hat, uniform, depth);
        BoundReport b = CheckModelErrorBound(truth, model, q_true, q_hat, greedy, depth);
        rows.push_back({seed, depth, gamma, a.lhs >= b.lhs ? std::move(a) : std::move(b)});
      }
    }
  }
  return rows;
}

std::string BoundCheckCsv(const std::vector<BoundCheckRow>& rows) {
  std::ostringstream out;
  out << "seed,H,gamma,e_T,e_R,e_Q,lhs,rhs,slack,holds\n";
  for (const auto& row : rows) {
    const BoundReport& r = row.report;
    out << row.seed << ',' << row.depth << ',' << FormatDouble(row.gamma) << ','
        << FormatDouble(r.errors.e_t) << ',' << FormatDouble(r.errors.e_r) << ','
        << FormatDouble(r.errors.e_q) << ',' << FormatDouble(r.lhs) << ','
        << FormatDouble(r.rhs) << ',' << FormatDouble(r.slack) << ','
        << (r.holds ? 1 : 0) << '\n';
  }
  return out.str();
}

}  // namespace gats
