// Copyright 2026 The UQF Authors.
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


#ifndef UQF_ENVS_H_
#define UQF_ENVS_H_

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "uqf/pomdp.h"

namespace uqf {

// Grid maze.  Layout characters: '#' wall, '.' free, 'S' start, 'G' goal.
struct GridSpec {
  std::vector<std::string> layout;
  double slip = 0.2;
  double step_reward = 0.0;
  double goal_reward = 1.0;
};

// Parses a plain-text layout, one row per line; blank trailing lines are
// ignored.  Throws ConfigError on any character outside "#.SG" or ragged
// rows.  Semantic checks happen in compile_gridworld.
GridSpec parse_grid(std::string_view text, double slip = 0.2);

// Actions, in id order.
enum GridAction : int { kUp = 0, kDown = 1, kLeft = 2, kRight = 3 };
inline constexpr int kGridActions = 4;
// Wall counts 0..4; real cells see at most 3, the terminal emits 4.
inline constexpr int kGridObservations = 5;
inline constexpr double kGridGamma = 0.99;

struct GridWorld {
  Pomdp model;
  std::vector<std::pair<int, int>> cells;  // state -> (row, col); terminal excluded
  int start = -1;
  int goal = -1;
  int terminal = -1;

  Environment env(std::string name) const {
    return {std::move(name), model, terminal};
  }
};

// States are the free cells in row-major order plus one absorbing terminal
// state (last).  The intended move executes with probability 1 - slip;
// otherwise a uniformly random action (possibly the intended one) runs.
// Bumping into a wall leaves the agent in place.  The observation is the
// number of walls among the four neighbours of the arrived cell.  Any action
// at the goal pays goal_reward and moves to the terminal; every other
// non-terminal (s, a) pays step_reward.
//
// Throws InvalidModelError unless there is exactly one S and one G, the
// border is all wall, and every free cell is reachable from S.
GridWorld compile_gridworld(const GridSpec& spec);

// Moves from S to G with slip = 0; -1 when unreachable.
int grid_distance(const GridSpec& spec);

// Three variants on one maze, with the start progressively farther from G.
std::vector<GridSpec> builtin_gridworlds();

// Built-in variant by name "A", "B" or "C".  Throws ConfigError otherwise.
GridSpec builtin_gridworld(std::string_view name);

// Random instance: T, Z rows and mu from a symmetric Dirichlet, R uniform on
// [0, reward_scale], gamma = 0.9.  Deterministic in the seed.
Pomdp random_pomdp(int k, int num_actions, int num_obs, double concentration,
                   double reward_scale, std::uint64_t seed);

}  // namespace uqf

#endif  // UQF_ENVS_H_
