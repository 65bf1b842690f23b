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

#ifndef GATS_GOLDFISH_H_
#define GATS_GOLDFISH_H_

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "gats/mdp.h"

namespace gats {

struct Cell {
  int row = 0;
  int col = 0;
  friend bool operator==(const Cell&, const Cell&) = default;
};

// Grid moves. Row 0 is the top of the grid.
enum GridAction : int { kUp = 0, kDown = 1, kLeft = 2, kRight = 3 };
inline constexpr int kNumGridActions = 4;

// Goldfish-and-gold-bucket layout. Entering the gold cell pays +1 and ends
// the episode, entering a shark cell pays -1 and ends it, any other move pays
// -cost_of_living. Bumping into the border leaves the fish in place.
struct GridWorldSpec {
  int width = 10;
  int height = 10;
  Cell start{};
  Cell gold{};
  std::vector<Cell> sharks;
  double cost_of_living = 0.05;
  double gamma = 0.99;
  int max_steps = 100;

  void Validate() const;  // throws std::invalid_argument
  int StateOf(Cell c) const { return c.row * width + c.col; }
  Cell CellOf(int state) const { return {state / width, state % width}; }
  int TerminalState() const { return width * height; }
  int StartState() const { return StateOf(start); }
  bool IsShark(Cell c) const;

  friend bool operator==(const GridWorldSpec&, const GridWorldSpec&) = default;
};

// One state per cell plus one absorbing terminal state (index width*height).
MdpSpec BuildGoldfish(const GridWorldSpec& spec);

// The fixed 10x10 layout used by the experiments:
//
//   row 0  . . . . . . . . . .
//   row 1  . . . . . . . . . .
//   row 2  . . . . . . . G . .
//   row 3  . . . . . . . . . .
//   row 4  . . . . . . . . . .
//   row 5  . S S S S S S . . .     S = shark, gap at columns 0 and 7-9
//   row 6  . . . . . . . . . .
//   row 7  . . F . . . . . . .     F = start
//   row 8  . . . . . . . . . .
//   row 9  . . . . . . . . . .
//
// With perturb_sharks set, the seed shifts the shark barrier horizontally by
// up to one cell; otherwise the seed is ignored.
GridWorldSpec DefaultGoldfish10x10(std::uint64_t seed = 0, bool perturb_sharks = false);

// Random instance for bound verification: Dirichlet(1) transition rows and a
// `reward_density` fraction of (s, a) pairs with mean reward U[0, 1].
MdpSpec RandomMdp(int n_states, int n_actions, double reward_density,
                  std::uint64_t seed, double gamma = 0.9);

enum class Termination { kGold, kShark, kTruncated };
std::string ToString(Termination t);

struct EpisodeLog {
  std::uint64_t seed = 0;
  std::vector<Transition> transitions;
  double undiscounted_return = 0.0;
  double discounted_return = 0.0;
  Termination termination = Termination::kTruncated;

  int steps() const { return static_cast<int>(transitions.size()); }
  friend bool operator==(const EpisodeLog&, const EpisodeLog&) = default;
};

using Actor = std::function<int(int state)>;
using StepObserver = std::function<void(const Transition&)>;

// Steps until a terminal state or max_steps. A terminal step with positive
// reward counts as reaching gold, with negative reward as hitting a shark.
EpisodeLog RunEpisode(const MdpSpec& mdp, int start_state, const Actor& actor,
                      int max_steps, double gamma, Rng& rng,
                      const StepObserver& observer = nullptr);

// step,state,action,reward,next_state,terminal
std::string EpisodeLogToCsv(const EpisodeLog& log);

}  // namespace gats

#endif  // GATS_GOLDFISH_H_
