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


#include "uqf/envs.h"

#include <array>
#include <deque>
#include <random>
#include <sstream>

#include "uqf/errors.h"

namespace uqf {
namespace {

constexpr std::array<std::pair<int, int>, kGridActions> kMoves = {
    {{-1, 0}, {1, 0}, {0, -1}, {0, 1}}};

bool is_wall(const std::vector<std::string>& g, int r, int c) {
  return r < 0 || c < 0 || r >= static_cast<int>(g.size()) ||
         c >= static_cast<int>(g[static_cast<std::size_t>(r)].size()) ||
         g[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)] == '#';
}

std::pair<int, int> find_unique(const std::vector<std::string>& g, char ch) {
  std::pair<int, int> at{-1, -1};
  int seen = 0;
  for (std::size_t r = 0; r < g.size(); ++r) {
    for (std::size_t c = 0; c < g[r].size(); ++c) {
      if (g[r][c] == ch) {
        at = {static_cast<int>(r), static_cast<int>(c)};
        ++seen;
      }
    }
  }
  if (seen != 1) {
    throw InvalidModelError(std::string("grid: expected exactly one '") + ch +
                            "', found " + std::to_string(seen));
  }
  return at;
}

// BFS distances from `from` over free cells; -1 = unreachable.
std::vector<std::vector<int>> distances(const std::vector<std::string>& g,
                                        std::pair<int, int> from) {
  std::vector<std::vector<int>> dist(g.size());
  for (std::size_t r = 0; r < g.size(); ++r) dist[r].assign(g[r].size(), -1);
  std::deque<std::pair<int, int>> queue{from};
  dist[static_cast<std::size_t>(from.first)][static_cast<std::size_t>(from.second)] = 0;
  while (!queue.empty()) {
    const auto [r, c] = queue.front();
    queue.pop_front();
    for (const auto& [dr, dc] : kMoves) {
      const int nr = r + dr;
      const int nc = c + dc;
      if (is_wall(g, nr, nc)) continue;
      int& d = dist[static_cast<std::size_t>(nr)][static_cast<std::size_t>(nc)];
      if (d >= 0) continue;
      d = dist[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)] + 1;
      queue.emplace_back(nr, nc);
    }
  }
  return dist;
}

void check_layout(const GridSpec& spec) {
  const auto& g = spec.layout;
  if (g.empty() || g.front().empty()) throw InvalidModelError("grid: empty layout");
  for (const auto& row : g) {
    if (row.size() != g.front().size()) throw InvalidModelError("grid: ragged rows");
    for (char ch : row) {
      if (ch != '#' && ch != '.' && ch != 'S' && ch != 'G') {
        throw InvalidModelError(std::string("grid: bad character '") + ch + "'");
      }
    }
  }
  const int rows = static_cast<int>(g.size());
  const int cols = static_cast<int>(g.front().size());
  for (int r = 0; r < rows; ++r) {
    for (int c = 0; c < cols; ++c) {
      const bool border = r == 0 || c == 0 || r == rows - 1 || c == cols - 1;
      if (border && g[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)] != '#') {
        throw InvalidModelError("grid: border cell (" + std::to_string(r) + "," +
                                std::to_string(c) + ") is not a wall");
      }
    }
  }
  if (!(spec.slip >= 0.0 && spec.slip < 1.0)) {
    throw InvalidModelError("grid: slip must lie in [0, 1)");
  }
}

}  // namespace

GridSpec parse_grid(std::string_view text, double slip) {
  GridSpec spec;
  spec.slip = slip;
  std::istringstream in{std::string(text)};
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    spec.layout.push_back(line);
  }
  while (!spec.layout.empty() && spec.layout.back().empty()) spec.layout.pop_back();
  if (spec.layout.empty()) throw ConfigError("grid layout is empty");
  for (std::size_t r = 0; r < spec.layout.size(); ++r) {
    const std::string& row = spec.layout[r];
    if (row.size() != spec.layout.front().size()) {
      throw ConfigError("grid layout line " + std::to_string(r + 1) +
                        " has length " + std::to_string(row.size()) +
                        ", expected " + std::to_string(spec.layout.front().size()));
    }
    if (row.find_first_not_of("#.SG") != std::string::npos) {
      throw ConfigError("grid layout line " + std::to_string(r + 1) +
                        ": only '#', '.', 'S', 'G' are allowed");
    }
  }
  return spec;
}

GridWorld compile_gridworld(const GridSpec& spec) {
  check_layout(spec);
  const auto& g = spec.layout;
  const auto start_rc = find_unique(g, 'S');
  const auto goal_rc = find_unique(g, 'G');
  const auto dist = distances(g, start_rc);

  GridWorld world;
  std::vector<std::vector<int>> id(g.size());
  for (std::size_t r = 0; r < g.size(); ++r) {
    id[r].assign(g[r].size(), -1);
    for (std::size_t c = 0; c < g[r].size(); ++c) {
      if (g[r][c] == '#') continue;
      if (dist[r][c] < 0) {
        throw InvalidModelError("grid: cell (" + std::to_string(r) + "," +
                                std::to_string(c) + ") unreachable from S");
      }
      id[r][c] = static_cast<int>(world.cells.size());
      world.cells.emplace_back(static_cast<int>(r), static_cast<int>(c));
    }
  }
  const int free = static_cast<int>(world.cells.size());
  const int k = free + 1;
  world.terminal = free;
  world.start = id[static_cast<std::size_t>(start_rc.first)][static_cast<std::size_t>(start_rc.second)];
  world.goal = id[static_cast<std::size_t>(goal_rc.first)][static_cast<std::size_t>(goal_rc.second)];

  Pomdp& m = world.model;
  m.num_states = k;
  m.num_actions = kGridActions;
  m.num_obs = kGridObservations;
  m.gamma = kGridGamma;
  m.transition.assign(kGridActions, Eigen::MatrixXd::Zero(k, k));
  m.emission.assign(kGridActions, Eigen::MatrixXd::Zero(k, kGridObservations));
  m.reward = Eigen::MatrixXd::Constant(k, kGridActions, spec.step_reward);
  m.initial = Eigen::VectorXd::Zero(k);
  m.initial[world.start] = 1.0;

  // Deterministic successor of each (cell, executed action).
  auto target = [&](int s, int a) {
    const auto [r, c] = world.cells[static_cast<std::size_t>(s)];
    const int nr = r + kMoves[static_cast<std::size_t>(a)].first;
    const int nc = c + kMoves[static_cast<std::size_t>(a)].second;
    return is_wall(g, nr, nc) ? s : id[static_cast<std::size_t>(nr)][static_cast<std::size_t>(nc)];
  };

  for (int a = 0; a < kGridActions; ++a) {
    Eigen::MatrixXd& t = m.transition[static_cast<std::size_t>(a)];
    for (int s = 0; s < free; ++s) {
      if (s == world.goal) {
        t(s, world.terminal) = 1.0;
        continue;
      }
      t(s, target(s, a)) += 1.0 - spec.slip;
      for (int b = 0; b < kGridActions; ++b) {
        t(s, target(s, b)) += spec.slip / kGridActions;
      }
    }
    t(world.terminal, world.terminal) = 1.0;

    Eigen::MatrixXd& z = m.emission[static_cast<std::size_t>(a)];
    for (int s = 0; s < free; ++s) {
      const auto [r, c] = world.cells[static_cast<std::size_t>(s)];
      int walls = 0;
      for (const auto& [dr, dc] : kMoves) walls += is_wall(g, r + dr, c + dc) ? 1 : 0;
      z(s, walls) = 1.0;
    }
    z(world.terminal, kGridObservations - 1) = 1.0;
  }
  m.reward.row(world.goal).setConstant(spec.goal_reward);
  m.reward.row(world.terminal).setZero();
  require_valid(m);
  return world;
}

int grid_distance(const GridSpec& spec) {
  check_layout(spec);
  const auto goal = find_unique(spec.layout, 'G');
  const auto dist = distances(spec.layout, find_unique(spec.layout, 'S'));
  return dist[static_cast<std::size_t>(goal.first)][static_cast<std::size_t>(goal.second)];
}

namespace {

// Shared maze; starts are filled in per variant.
constexpr std::array<const char*, 6> kMaze = {
    "#######",
    "#.....#",
    "#.##..#",
    "#..#G.#",
    "##...##",
    "#######",
};

GridSpec with_start(int row, int col) {
  GridSpec spec;
  for (const char* line : kMaze) spec.layout.emplace_back(line);
  spec.layout[static_cast<std::size_t>(row)][static_cast<std::size_t>(col)] = 'S';
  return spec;
}

}  // namespace

std::vector<GridSpec> builtin_gridworlds() {
  return {with_start(1, 4), with_start(4, 2), with_start(1, 1)};
}

GridSpec builtin_gridworld(std::string_view name) {
  const auto all = builtin_gridworlds();
  if (name == "A") return all[0];
  if (name == "B") return all[1];
  if (name == "C") return all[2];
  throw ConfigError("unknown built-in gridworld '" + std::string(name) +
                    "' (expected A, B or C)");
}

Pomdp random_pomdp(int k, int num_actions, int num_obs, double concentration,
                   double reward_scale, std::uint64_t seed) {
  if (k < 1 || num_actions < 1 || num_obs < 1) {
    throw std::invalid_argument("random_pomdp: sizes must be >= 1");
  }
  if (!(concentration > 0.0)) {
    throw std::invalid_argument("random_pomdp: concentration must be > 0");
  }
  std::mt19937_64 rng(seed);
  std::gamma_distribution<double> gamma(concentration, 1.0);
  auto dirichlet = [&](int n) {
    Eigen::VectorXd v(n);
    double total = 0.0;
    while (!(total > 0.0)) {
      for (int i = 0; i < n; ++i) v[i] = gamma(rng);
      total = v.sum();
    }
    return Eigen::VectorXd(v / total);
  };

  Pomdp m;
  m.num_states = k;
  m.num_actions = num_actions;
  m.num_obs = num_obs;
  m.gamma = 0.9;
  m.transition.assign(static_cast<std::size_t>(num_actions), Eigen::MatrixXd(k, k));
  m.emission.assign(static_cast<std::size_t>(num_actions), Eigen::MatrixXd(k, num_obs));
  for (auto& t : m.transition) {
    for (int s = 0; s < k; ++s) t.row(s) = dirichlet(k).transpose();
  }
  for (auto& z : m.emission) {
    for (int s = 0; s < k; ++s) z.row(s) = dirichlet(num_obs).transpose();
  }
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  m.reward.resize(k, num_actions);
  for (int s = 0; s < k; ++s) {
    for (int a = 0; a < num_actions; ++a) m.reward(s, a) = reward_scale * unit(rng);
  }
  m.initial = dirichlet(k);
  return m;
}

}  // namespace uqf
