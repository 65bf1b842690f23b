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

#ifndef GATS_TESTS_FIXTURES_H_
#define GATS_TESTS_FIXTURES_H_

#include <vector>

#include "gats/mdp.h"

namespace gats::fixtures {

// Deterministic chain 0..n-1 with actions left (0) and right (1). Taking
// right at the last state pays `end_reward` and stays there; nothing else
// pays. No terminal states.
inline MdpSpec Chain(int n, double gamma, double end_reward = 1.0) {
  std::vector<double> t(static_cast<std::size_t>(n) * 2 * n, 0.0);
  std::vector<double> r(static_cast<std::size_t>(n) * 2, 0.0);
  for (int s = 0; s < n; ++s) {
    t[(static_cast<std::size_t>(s) * 2 + 0) * n + (s > 0 ? s - 1 : 0)] = 1.0;
    t[(static_cast<std::size_t>(s) * 2 + 1) * n + (s < n - 1 ? s + 1 : s)] = 1.0;
  }
  r[static_cast<std::size_t>(n - 1) * 2 + 1] = end_reward;
  return MdpSpec(n, 2, gamma, std::move(t), std::move(r), {});
}

// Deterministic MDP from a successor table next[s][a] and reward table.
inline MdpSpec Deterministic(int ns, int na, double gamma, const std::vector<int>& next,
                             std::vector<double> reward, std::vector<int> terminal = {}) {
  std::vector<double> t(static_cast<std::size_t>(ns) * na * ns, 0.0);
  for (int i = 0; i < ns * na; ++i) t[static_cast<std::size_t>(i) * ns + next[i]] = 1.0;
  return MdpSpec(ns, na, gamma, std::move(t), std::move(reward), std::move(terminal));
}

}  // namespace gats::fixtures

#endif  // GATS_TESTS_FIXTURES_H_
