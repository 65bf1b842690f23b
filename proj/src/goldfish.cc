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

#include "gats/goldfish.h"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>
#include <stdexcept>

#include "gats/csv.h"

namespace gats {
namespace {

bool InBounds(const GridWorldSpec& spec, Cell c) {
  return c.row >= 0 && c.row < spec.height && c.col >= 0 && c.col < spec.width;
}

Cell Move(const GridWorldSpec& spec, Cell c, int action) {
  Cell next = c;
  switch (action) {
    case kUp: --next.row; break;
    case kDown: ++next.row; break;
    case kLeft: --next.col; break;
    case kRight: ++next.col; break;
    default: throw std::invalid_argument("unknown grid action");
  }
  return InBounds(spec, next) ? next : c;
}

}  // namespace

bool GridWorldSpec::IsShark(Cell c) const {
  return std::find(sharks.begin(), sharks.end(), c) != sharks.end();
}

void GridWorldSpec::Validate() const {
  if (width <= 0 || height <= 0) {
    throw std::invalid_argument("grid dimensions must be positive");
  }
  if (!InBounds(*this, start)) throw std::invalid_argument("start cell out of bounds");
  if (!InBounds(*this, gold)) throw std::invalid_argument("gold cell out of bounds");
  for (const Cell& s : sharks) {
    if (!InBounds(*this, s)) throw std::invalid_argument("shark cell out of bounds");
    if (s == gold) throw std::invalid_argument("shark placed on the gold cell");
  }
  if (start == gold || IsShark(start)) {
    throw std::invalid_argument("start cell must be open water");
  }
  if (!(cost_of_living > 0.0)) throw std::invalid_argument("cost_of_living must be positive");
  if (!(gamma >= 0.0 && gamma < 1.0)) throw std::invalid_argument("gamma must lie in [0, 1)");
  if (max_steps < 1) throw std::invalid_argument("max_steps must be at least 1");
}

MdpSpec BuildGoldfish(const GridWorldSpec& spec) {
  spec.Validate();
  const int ns = spec.width * spec.height + 1;
  const int terminal = spec.TerminalState();
  const std::size_t nsz = ns;
  std::vector<double> transition(nsz * kNumGridActions * nsz, 0.0);
  std::vector<double> reward(nsz * kNumGridActions, 0.0);
  auto at = [&](int s, int a, int s2) -> double& {
    return transition[(static_cast<std::size_t>(s) * kNumGridActions + a) * nsz + s2];
  };
  for (int s = 0; s < terminal; ++s) {
    const Cell here = spec.CellOf(s);
    for (int a = 0; a < kNumGridActions; ++a) {
      const Cell next = Move(spec, here, a);
      double r = -spec.cost_of_living;
      int s2 = spec.StateOf(next);
      if (next == spec.gold) {
        r = 1.0;
        s2 = terminal;
      } else if (spec.IsShark(next)) {
        r = -1.0;
        s2 = terminal;
      }
      at(s, a, s2) = 1.0;
      reward[static_cast<std::size_t>(s) * kNumGridActions + a] = r;
    }
  }
  for (int a = 0; a < kNumGridActions; ++a) at(terminal, a, terminal) = 1.0;
  return MdpSpec(ns, kNumGridActions, spec.gamma, std::move(transition),
                 std::move(reward), {terminal});
}

GridWorldSpec DefaultGoldfish10x10(std::uint64_t seed, bool perturb_sharks) {
  GridWorldSpec spec;
  spec.width = 10;
  spec.height = 10;
  spec.start = {7, 2};
  spec.gold = {2, 7};
  spec.cost_of_living = 0.05;
  spec.gamma = 0.99;
  spec.max_steps = 100;
  int shift = 0;
  if (perturb_sharks) {
    Rng rng(seed);
    shift = std::uniform_int_distribution<int>(-1, 1)(rng);
  }
  for (int col = 1; col <= 6; ++col) spec.sharks.push_back({5, col + shift});
  return spec;
}

MdpSpec RandomMdp(int n_states, int n_actions, double reward_density,
                  std::uint64_t seed, double gamma) {
  if (n_states < 2) throw std::invalid_argument("RandomMdp: need at least 2 states");
  if (n_actions < 1) throw std::invalid_argument("RandomMdp: need at least 1 action");
  if (!(reward_density >= 0.0 && reward_density <= 1.0)) {
    throw std::invalid_argument("RandomMdp: reward_density must lie in [0, 1]");
  }
  Rng rng(seed);
  std::exponential_distribution<double> expo(1.0);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  const std::size_t ns = n_states, na = n_actions;
  std::vector<double> transition(ns * na * ns);
  for (std::size_t row = 0; row < ns * na; ++row) {
    double* p = transition.data() + row * ns;
    double sum = 0.0;
    for (std::size_t j = 0; j < ns; ++j) sum += (p[j] = expo(rng));
    for (std::size_t j = 0; j < ns; ++j) p[j] /= sum;
  }
  std::vector<std::size_t> pairs(ns * na);
  std::iota(pairs.begin(), pairs.end(), 0);
  std::shuffle(pairs.begin(), pairs.end(), rng);
  const auto rewarded = static_cast<std::size_t>(std::llround(reward_density * pairs.size()));
  std::vector<double> reward(ns * na, 0.0);
  for (std::size_t i = 0; i < rewarded; ++i) reward[pairs[i]] = unit(rng);
  return MdpSpec(n_states, n_actions, gamma, std::move(transition), std::move(reward), {});
}

std::string ToString(Termination t) {
  switch (t) {
    case Termination::kGold: return "gold";
    case Termination::kShark: return "shark";
    case Termination::kTruncated: return "truncated";
  }
  return "unknown";
}

EpisodeLog RunEpisode(const MdpSpec& mdp, int start_state, const Actor& actor,
                      int max_steps, double gamma, Rng& rng,
                      const StepObserver& observer) {
  mdp.check_state(start_state);
  EpisodeLog log;
  int state = start_state;
  double discount = 1.0;
  for (int t = 0; t < max_steps; ++t) {
    const int action = actor(state);
    const Transition tr = SampleStep(mdp, state, action, rng);
    log.transitions.push_back(tr);
    log.undiscounted_return += tr.reward;
    log.discounted_return += discount * tr.reward;
    discount *= gamma;
    if (observer) observer(tr);
    state = tr.next_state;
    if (tr.terminal) {
      log.termination = tr.reward > 0.0   ? Termination::kGold
                        : tr.reward < 0.0 ? Termination::kShark
                                          : Termination::kTruncated;
      break;
    }
  }
  return log;
}

std::string EpisodeLogToCsv(const EpisodeLog& log) {
  std::ostringstream out;
  out << "step,state,action,reward,next_state,terminal\n";
  for (std::size_t t = 0; t < log.transitions.size(); ++t) {
    const Transition& tr = log.transitions[t];
    out << t << ',' << tr.state << ',' << tr.action << ',' << FormatDouble(tr.reward)
        << ',' << tr.next_state << ',' << (tr.terminal ? 1 : 0) << '\n';
  }
  return out.str();
}

}  // namespace gats
