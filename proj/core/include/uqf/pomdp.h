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


#ifndef UQF_POMDP_H_
#define UQF_POMDP_H_

#include <cstdint>
#include <optional>
#include <random>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "uqf/symbol.h"
#include "uqf/wfa.h"

namespace uqf {

// Finite POMDP.  Emissions condition on the arrived state:
//   transition[a](s, s') = P(s' | s, a)
//   emission[a](s', o)   = P(o | s', a)
//   reward(s, a)         = reward for executing a in s
struct Pomdp {
  int num_states = 0;
  int num_actions = 0;
  int num_obs = 0;
  std::vector<Eigen::MatrixXd> transition;
  std::vector<Eigen::MatrixXd> emission;
  Eigen::MatrixXd reward;
  Eigen::VectorXd initial;
  double gamma = 0.0;

  Alphabet alphabet() const { return {num_actions, num_obs}; }
};

// Stochastic state-level policy: probs(s, a) = P(a | s).
struct StatePolicy {
  Eigen::MatrixXd probs;

  static StatePolicy uniform(int num_states, int num_actions);
  static StatePolicy deterministic(std::span<const int> actions,
                                   int num_actions);
};

struct Violation {
  std::string path;     // e.g. "T[0,1,:]"
  std::string message;  // e.g. "row sums to 0.9"
};
using ValidationReport = std::vector<Violation>;

inline constexpr double kStochasticTolerance = 1e-12;

ValidationReport validate(const Pomdp& model);
ValidationReport validate(const StatePolicy& policy, const Pomdp& model);
// Throw InvalidModelError listing every violation.
void require_valid(const Pomdp& model);
void require_valid(const StatePolicy& policy, const Pomdp& model);

struct Step {
  Symbol symbol;
  double reward = 0.0;
  int state_after = -1;  // hidden; only tests read it
};

struct Episode {
  std::uint64_t seed = 0;
  int initial_state = -1;  // hidden; only tests read it
  std::vector<Step> steps;

  Word word() const;
};

// Uniform double in [0, 1) from the top 53 bits, identical on every
// platform for a given engine state.
inline double uniform01(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

// Inverse-CDF draw from a probability vector.
int sample_index(const Eigen::Ref<const Eigen::VectorXd>& probs,
                 std::mt19937_64& rng);

// Decision maker driven by the simulator.  `true_state` is the hidden state
// and must only be read by fully observable reference controllers.
class Controller {
 public:
  virtual ~Controller() = default;
  virtual void reset() = 0;
  virtual int act(int true_state, std::mt19937_64& rng) = 0;
  virtual void observe(Symbol symbol) = 0;
};

// Draws actions from a state-level policy.
class StatePolicyController : public Controller {
 public:
  explicit StatePolicyController(StatePolicy policy)
      : policy_(std::move(policy)) {}
  void reset() override {}
  int act(int true_state, std::mt19937_64& rng) override;
  void observe(Symbol) override {}

 private:
  StatePolicy policy_;
};

// A model plus the absorbing state at which episodes end early, if any.
struct Environment {
  std::string name;
  Pomdp model;
  std::optional<int> terminal_state;
};

struct SimulationOptions {
  int length = 1;
  // Stop an episode once this (absorbing, zero-reward) state is entered.
  std::optional<int> terminal_state;
};

// Runs one episode.  Per step: a ~ controller, s' ~ T[s,a,:],
// o ~ Z[s',a,:], reward R[s,a].
Episode simulate_episode(const Pomdp& model, Controller& controller,
                         const SimulationOptions& options,
                         std::uint64_t episode_seed);

// Episode i uses seed derive_seed(seed, i); output is bit-identical for equal
// arguments.
std::vector<Episode> simulate(const Pomdp& model, Controller& controller,
                              int count, const SimulationOptions& options,
                              std::uint64_t seed);

std::vector<Episode> sample_episodes(const Pomdp& model,
                                     const StatePolicy& policy, int count,
                                     int length, std::uint64_t seed);

// Joint vector [P(S_{n+1} = s, history)]_s = mu^T B_{a1o1} ... B_{anon}.
// Normalize to obtain the conditional belief.
Eigen::VectorXd belief_forward(const Pomdp& model, const StatePolicy& policy,
                               std::span<const Symbol> history);

// WFA <mu, {B_ao}, q> with B_ao = diag(pi[:,a]) T[:,a,:] diag(Z[:,a,o]) and
// q[s] = sum_a pi[s,a] R[s,a]; computes g(h) = E[R | h] P(h).
Wfa exact_wfa(const Pomdp& model, const StatePolicy& policy);

// Same transitions with an all-ones terminal vector; computes P(h).
Wfa probability_wfa(const Pomdp& model, const StatePolicy& policy);

struct MdpSolution {
  Eigen::VectorXd values;
  std::vector<int> policy;
  int iterations = 0;
};

inline constexpr double kValueIterationTolerance = 1e-10;

// Value iteration on the fully observable MDP with the model's discount.
// Greedy ties go to the lowest action id.
MdpSolution mdp_optimal(const Pomdp& model);

// max_s |V(s) - max_a (R(s,a) + gamma sum_s' T V(s'))|
double bellman_residual(const Pomdp& model, const Eigen::VectorXd& values);

}  // namespace uqf

#endif  // UQF_POMDP_H_
