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

#ifndef GATS_DETAIL_XI_RECURSION_H_
#define GATS_DETAIL_XI_RECURSION_H_

#include <span>
#include <vector>

#include "gats/mdp.h"

namespace gats::detail {

// Backward recursion shared by the true-model and learned-model returns:
//   W_0(s) = max_a Q(s, a)
//   W_k(s) = sum_a pi(a|s) [ r(s, a) + gamma * sum_s' T(s'|s, a) W_{k-1}(s') ]
// `for_each_successor(s, a, f)` must call f(next_state, probability) for every
// successor with nonzero mass. Returns W_depth for every state.
template <typename RewardFn, typename SuccessorFn>
std::vector<double> XiAllStates(int n_states, int n_actions, double gamma,
                                RewardFn&& reward, SuccessorFn&& for_each_successor,
                                std::span<const double> q_table,
                                const Policy& rollout, int depth) {
  std::vector<double> w(n_states);
  for (int s = 0; s < n_states; ++s) {
    w[s] = MaxOf(q_table.subspan(static_cast<std::size_t>(s) * n_actions,
                                 n_actions));
  }
  std::vector<double> next(n_states);
  for (int k = 1; k <= depth; ++k) {
    for (int s = 0; s < n_states; ++s) {
      double total = 0.0;
      for (int a = 0; a < n_actions; ++a) {
        const double pa = rollout.probability(s, a);
        if (pa == 0.0) continue;
        double cont = 0.0;
        for_each_successor(s, a, [&](int s2, double p) { cont += p * w[s2]; });
        total += pa * (reward(s, a) + gamma * cont);
      }
      next[s] = total;
    }
    w.swap(next);
  }
  return w;
}

}  // namespace gats::detail

#endif  // GATS_DETAIL_XI_RECURSION_H_
