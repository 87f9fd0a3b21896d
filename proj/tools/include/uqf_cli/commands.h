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


#ifndef UQF_CLI_COMMANDS_H_
#define UQF_CLI_COMMANDS_H_

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "uqf_cli/config.h"

namespace uqf::cli {

enum ExitCode : int {
  kOk = 0,
  kCheckFailed = 1,
  kConfigFailure = 2,
  kLearningFailure = 3,
  kIoFailure = 4,
};

// Command-line overrides shared by every subcommand.
struct Options {
  std::optional<std::filesystem::path> config;
  std::filesystem::path out = ".";
  std::optional<std::uint64_t> seed;
  std::optional<std::string> env;
  std::optional<std::filesystem::path> episodes;
  std::optional<std::filesystem::path> model;
  std::optional<std::string> baseline;  // "random" | "optimal"
  std::optional<int> count;
};

// Config file (or defaults) with --env / --seed / --count applied.
ExperimentConfig effective_config(const Options& options);

// Each command writes files under options.out and a short summary to `log`.
// Errors propagate as exceptions; run() maps them to exit codes.
void cmd_sample(const Options& options, std::ostream& log);
void cmd_learn(const Options& options, std::ostream& log);
void cmd_eval(const Options& options, std::ostream& log);
void cmd_curve(const Options& options, std::ostream& log);
// Returns false if any check failed.
bool cmd_selfcheck(const Options& options, std::ostream& log);
void cmd_iterate(const Options& options, std::ostream& log);

struct CurveRow {
  std::string env;
  std::string policy;  // uqf | random | optimal
  int train_size = 0;
  std::uint64_t seed = 0;
  std::optional<double> mean_return;  // empty when the cell failed
  std::optional<double> std_error;
  std::string note;
};

// For every (size, seed): sample `size` uniform-policy episodes, learn, and
// evaluate; plus random and optimal baseline rows.  Failures are recorded in
// the note column and the sweep continues.  All policies for one seed share
// the evaluation seed, so baseline rows repeat exactly across sizes.
std::vector<CurveRow> run_curve(const ExperimentConfig& config,
                                const Environment& env);
// Header: env,policy,train_size,seed,mean_return,stderr,note
std::string curve_csv(const std::vector<CurveRow>& rows);

std::uint64_t curve_sample_seed(std::uint64_t seed, int size);
std::uint64_t curve_eval_seed(std::uint64_t seed);

// Parses argv and dispatches; returns an ExitCode.
int run(int argc, char** argv, std::ostream& out, std::ostream& err);

}  // namespace uqf::cli

#endif  // UQF_CLI_COMMANDS_H_
