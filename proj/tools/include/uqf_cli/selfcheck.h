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


#ifndef UQF_CLI_SELFCHECK_H_
#define UQF_CLI_SELFCHECK_H_

#include <functional>
#include <string>
#include <vector>

#include "uqf/pomdp.h"
#include "uqf/wfa.h"

namespace uqf::cli {

struct CheckResult {
  std::string name;
  bool passed = false;
  double max_error = 0.0;
  double tolerance = 0.0;
  std::string detail;
};

struct SelfcheckOptions {
  // Builds the automaton compared against the path-enumeration oracle in
  // the reward-function check.  Tests swap in a perturbed builder.
  std::function<Wfa(const Pomdp&, const StatePolicy&)> reward_wfa = exact_wfa;
};

// Oracle equivalence checks on the built-in fixtures and a few random
// instances: reward function, path probability, Neumann series, recovery
// from exact moments, identity-projection reduction.
std::vector<CheckResult> run_selfcheck(const SelfcheckOptions& options = {});

}  // namespace uqf::cli

#endif  // UQF_CLI_SELFCHECK_H_
