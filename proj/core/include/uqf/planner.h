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


#ifndef UQF_PLANNER_H_
#define UQF_PLANNER_H_

#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "uqf/pomdp.h"
#include "uqf/spectral.h"
#include "uqf/wfa.h"

namespace uqf {

// Acts greedily on a learned UQF:
//   pi(h) = argmax_a sum_o alpha^T A_h A_(a,o) omega / Pi(a|h),
// where Pi is the policy that sampled the training data.  That policy is
// either uniform or epsilon-greedy over the previous GreedyPolicy, so a
// policy produced by k rounds of policy iteration carries k levels, each
// with its own forward state.
//
// Forward states are rescaled by positive constants when they drift toward
// under/overflow; decisions are invariant to that.
class GreedyPolicy final : public Controller {
 public:
  // UQF learned from uniformly sampled data.
  explicit GreedyPolicy(Wfa uqf);
  // UQF learned from data sampled by epsilon_greedy(previous, epsilon).
  GreedyPolicy(const GreedyPolicy& previous, Wfa uqf, double epsilon);

  int num_actions() const;
  int num_levels() const { return static_cast<int>(levels_.size()); }
  const Wfa& uqf() const { return *levels_.back().uqf; }
  double sampling_epsilon() const { return levels_.back().epsilon; }

  // Pi(a | h) for the current history, the divisor used by scores().
  double sampling_probability(int action) const;
  // action_scores at the current history.
  Eigen::VectorXd scores() const;
  // Lowest-id argmax of scores(); does not advance the history.
  int greedy_action() const;
  // Advances every level's forward state by one symbol.
  void act_and_observe(Symbol symbol);
  int history_len() const { return history_len_; }
  // Total WFA step() calls since construction, for complexity checks.
  long step_calls() const { return step_calls_; }

  void reset() override;
  int act(int true_state, std::mt19937_64& rng) override;
  void observe(Symbol symbol) override { act_and_observe(symbol); }

 private:
  struct Level {
    std::shared_ptr<const Wfa> uqf;
    double epsilon;  // 1 means the level was learned from uniform data
    Eigen::MatrixXd w;  // column a: sum_o A_(a,o) omega
  };

  static Level make_level(Wfa uqf, double epsilon);
  // Greedy action of every level at the current history, bottom-up.
  std::vector<int> level_actions() const;
  double level_divisor(std::size_t level, int action,
                       const std::vector<int>& actions) const;
  Eigen::VectorXd level_scores(std::size_t level,
                               const std::vector<int>& actions) const;

  std::vector<Level> levels_;
  std::vector<Eigen::VectorXd> forward_;
  int history_len_ = 0;
  long step_calls_ = 0;
};

// Argmax with ties to the lowest index.
int argmax_lowest(const Eigen::VectorXd& values);

// Stochastic history-level sampling policy: uniform, or epsilon-greedy over
// a GreedyPolicy with
//   Pi(a | h) = (1 - epsilon) 1[a = greedy(h)] + epsilon / |A|.
class HistoryPolicy final : public Controller {
 public:
  static HistoryPolicy uniform(int num_actions);

  int num_actions() const { return num_actions_; }
  double epsilon() const { return epsilon_; }
  const GreedyPolicy* base() const { return base_ ? &*base_ : nullptr; }

  Eigen::VectorXd probabilities() const;
  double probability(int action) const { return probabilities()[action]; }

  void reset() override;
  int act(int true_state, std::mt19937_64& rng) override;
  void observe(Symbol symbol) override;

 private:
  friend HistoryPolicy epsilon_greedy(GreedyPolicy base, double epsilon);
  HistoryPolicy(int num_actions, double epsilon,
                std::optional<GreedyPolicy> base)
      : num_actions_(num_actions), epsilon_(epsilon), base_(std::move(base)) {}

  int num_actions_;
  double epsilon_;
  std::optional<GreedyPolicy> base_;
};

// Throws std::invalid_argument unless 0 <= epsilon <= 1.
HistoryPolicy epsilon_greedy(GreedyPolicy base, double epsilon);

struct EvalConfig {
  int episodes = 1000;
  int max_len = 100;
  double gamma_eval = 0.99;
};

struct EvalResult {
  double mean_return = 0.0;
  double std_error = 0.0;  // standard error of the mean
};

// Mean over episodes of sum_t gamma_eval^(t-1) r_t, truncated at max_len or
// at the terminal state.  Episode i uses derive_seed(seed, i).
EvalResult evaluate_policy(const Environment& env, Controller& controller,
                           const EvalConfig& config, std::uint64_t seed);

struct IterationConfig {
  double epsilon0 = 1.0;
  double eta = 2.0;
  int iterations = 3;
  int episodes_per_iter = 2000;
  int episode_length = 100;
  LearnConfig learn;
  EvalConfig eval;
  std::uint64_t seed = 0;
};

struct IterationMetrics {
  int iter = 0;
  double epsilon = 0.0;
  int episodes = 0;
  double mean_return = 0.0;
  double std_error = 0.0;
  double spectral_radius = 0.0;
  int rank_used = 0;
  std::string error;  // empty when learning succeeded
};

struct PolicyIterationResult {
  std::optional<GreedyPolicy> policy;  // empty if every round failed
  std::vector<IterationMetrics> metrics;
};

// Seed streams used by policy_iteration for round i (0-based).
std::uint64_t iteration_sample_seed(std::uint64_t seed, int round);
std::uint64_t iteration_eval_seed(std::uint64_t seed, int round);

// Repeats: wrap the current policy epsilon-greedy (uniform when there is no
// policy yet), sample episodes_per_iter episodes, learn a UQF whose divisor
// is that sampling policy, evaluate it, then epsilon /= eta.  A failed round
// keeps the previous policy and records the error.
PolicyIterationResult policy_iteration(
    const Environment& env, const IterationConfig& config,
    std::optional<GreedyPolicy> initial = std::nullopt);

}  // namespace uqf

#endif  // UQF_PLANNER_H_
