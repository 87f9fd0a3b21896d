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


#ifndef UQF_CLI_CONFIG_H_
#define UQF_CLI_CONFIG_H_

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "uqf/planner.h"
#include "uqf/spectral.h"
#include "uqf_cli/io.h"

namespace uqf::cli {

// Everything a subcommand may need.  Loaded from a JSON file; every key is
// optional and falls back to the defaults below.  Nested keys:
//   env, slip, count, episode_length, sizes, seeds, seed,
//   basis.{max_prefixes,max_suffixes,max_len}, rank, gamma,
//   compressed.{enabled,d_u,d_v,seed},
//   eval.{episodes,max_len,gamma_eval},
//   iterate.{epsilon0,eta,iterations,episodes_per_iter}
struct ExperimentConfig {
  std::string env = "A";
  double slip = 0.2;
  int count = 1000;
  int episode_length = 100;
  std::vector<int> sizes = {100, 200, 400, 800};
  std::vector<std::uint64_t> seeds = {0, 1, 2, 3, 4};
  std::uint64_t seed = 0;
  LearnConfig learn;
  EvalConfig eval;
  IterationConfig iterate;  // learn/eval/seed/episode_length filled on use
};

// Throws ConfigError naming the path for unreadable or malformed files.
ExperimentConfig load_config(const std::filesystem::path& path);
ExperimentConfig config_from_json(const Json& j, const std::string& where);
Json to_json(const ExperimentConfig& config);

// Environment reference: "A" / "B" / "C" (built-in gridworlds, optionally
// prefixed "gridworld:"), "chain", "line", a *.json Pomdp file (optional
// "terminal_state" field) or a plain-text grid layout.  File problems are
// reported as ConfigError naming the path.
Environment resolve_env(const std::string& ref, double slip);

}  // namespace uqf::cli

#endif  // UQF_CLI_CONFIG_H_
