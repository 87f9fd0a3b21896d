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


#include "uqf/planner.h"

#include <cmath>
#include <stdexcept>

#include "uqf/errors.h"

namespace uqf {
namespace {

constexpr double kRescaleHigh = 1e100;
constexpr double kRescaleLow = 1e-100;

void keep_in_range(Eigen::VectorXd& v) {
  const double m = v.cwiseAbs().maxCoeff();
  if (m > kRescaleHigh || (m > 0.0 && m < kRescaleLow)) v /= m;
}

}  // namespace

int argmax_lowest(const Eigen::VectorXd& values) {
  int best = 0;
  for (int i = 1; i < values.size(); ++i) {
    if (values[i] > values[best]) best = i;
  }
  return best;
}

GreedyPolicy::Level GreedyPolicy::make_level(Wfa uqf, double epsilon) {
  if (!(epsilon >= 0.0 && epsilon <= 1.0)) {
    throw std::invalid_argument("epsilon must lie in [0, 1]");
  }
  const Alphabet& alphabet = uqf.alphabet();
  Eigen::MatrixXd w = Eigen::MatrixXd::Zero(uqf.num_states(), alphabet.num_actions);
  for (int a = 0; a < alphabet.num_actions; ++a) {
    for (int o = 0; o < alphabet.num_obs; ++o) {
      w.col(a) += uqf.transition({a, o}) * uqf.omega();
    }
  }
  return {std::make_shared<const Wfa>(std::move(uqf)), epsilon, std::move(w)};
}

GreedyPolicy::GreedyPolicy(Wfa uqf) {
  levels_.push_back(make_level(std::move(uqf), 1.0));
  forward_.push_back(levels_.back().uqf->alpha());
}

GreedyPolicy::GreedyPolicy(const GreedyPolicy& previous, Wfa uqf,
                           double epsilon)
    : levels_(previous.levels_) {
  if (!(uqf.alphabet() == previous.uqf().alphabet())) {
    throw std::invalid_argument("GreedyPolicy: alphabet mismatch between levels");
  }
  levels_.push_back(make_level(std::move(uqf), epsilon));
  for (const Level& l : levels_) forward_.push_back(l.uqf->alpha());
}

int GreedyPolicy::num_actions() const {
  return levels_.front().uqf->alphabet().num_actions;
}

double GreedyPolicy::level_divisor(std::size_t level, int action,
                                   const std::vector<int>& actions) const {
  const double eps = levels_[level].epsilon;
  const double uniform = eps / num_actions();
  if (level == 0 || eps >= 1.0) return uniform;
  return uniform + (actions[level - 1] == action ? 1.0 - eps : 0.0);
}

Eigen::VectorXd GreedyPolicy::level_scores(
    std::size_t level, const std::vector<int>& actions) const {
  Eigen::VectorXd scores = (forward_[level].transpose() * levels_[level].w).transpose();
  for (int a = 0; a < scores.size(); ++a) {
    const double p = level_divisor(level, a, actions);
    if (!(p >= kMinSamplingProbability)) {
      throw ZeroSamplingProbabilityError("greedy policy: Pi(" +
                                         std::to_string(a) + "|h) is " +
                                         std::to_string(p));
    }
    scores[a] /= p;
  }
  return scores;
}

std::vector<int> GreedyPolicy::level_actions() const {
  std::vector<int> actions;
  actions.reserve(levels_.size());
  for (std::size_t l = 0; l < levels_.size(); ++l) {
    actions.push_back(argmax_lowest(level_scores(l, actions)));
  }
  return actions;
}

double GreedyPolicy::sampling_probability(int action) const {
  const std::size_t top = levels_.size() - 1;
  std::vector<int> actions = level_actions();
  actions.pop_back();
  return level_divisor(top, action, actions);
}

Eigen::VectorXd GreedyPolicy::scores() const {
  std::vector<int> actions = level_actions();
  actions.pop_back();
  return level_scores(levels_.size() - 1, actions);
}

int GreedyPolicy::greedy_action() const { return level_actions().back(); }

void GreedyPolicy::act_and_observe(Symbol symbol) {
  for (std::size_t l = 0; l < levels_.size(); ++l) {
    ForwardState state{std::move(forward_[l]), history_len_};
    state = step(state, *levels_[l].uqf, symbol);
    ++step_calls_;
    forward_[l] = std::move(state.vector);
    keep_in_range(forward_[l]);
  }
  ++history_len_;
}

void GreedyPolicy::reset() {
  for (std::size_t l = 0; l < levels_.size(); ++l) {
    forward_[l] = levels_[l].uqf->alpha();
  }
  history_len_ = 0;
}

int GreedyPolicy::act(int /*true_state*/, std::mt19937_64& /*rng*/) {
  return greedy_action();
}

HistoryPolicy HistoryPolicy::uniform(int num_actions) {
  if (num_actions < 1) throw std::invalid_argument("num_actions must be >= 1");
  return HistoryPolicy(num_actions, 1.0, std::nullopt);
}

HistoryPolicy epsilon_greedy(GreedyPolicy base, double epsilon) {
  if (!(epsilon >= 0.0 && epsilon <= 1.0)) {
    throw std::invalid_argument("epsilon must lie in [0, 1]");
  }
  const int n = base.num_actions();
  return HistoryPolicy(n, epsilon, std::move(base));
}

Eigen::VectorXd HistoryPolicy::probabilities() const {
  Eigen::VectorXd p = Eigen::VectorXd::Constant(num_actions_, epsilon_ / num_actions_);
  if (base_ && epsilon_ < 1.0) p[base_->greedy_action()] += 1.0 - epsilon_;
  return p;
}

void HistoryPolicy::reset() {
  if (base_) base_->reset();
}

int HistoryPolicy::act(int /*true_state*/, std::mt19937_64& rng) {
  return sample_index(probabilities(), rng);
}

void HistoryPolicy::observe(Symbol symbol) {
  // Uniform sampling never consults the base, so skip the forward update.
  if (base_ && epsilon_ < 1.0) base_->observe(symbol);
}

EvalResult evaluate_policy(const Environment& env, Controller& controller,
                           const EvalConfig& config, std::uint64_t seed) {
  if (config.episodes < 1) throw std::invalid_argument("eval episodes must be >= 1");
  const SimulationOptions options{.length = config.max_len,
                                  .terminal_state = env.terminal_state};
  std::vector<double> returns;
  returns.reserve(static_cast<std::size_t>(config.episodes));
  for (int i = 0; i < config.episodes; ++i) {
    const Episode ep = simulate_episode(env.model, controller, options,
                                        derive_seed(seed, static_cast<std::uint64_t>(i)));
    double ret = 0.0;
    double discount = 1.0;
    for (const Step& s : ep.steps) {
      ret += discount * s.reward;
      discount *= config.gamma_eval;
    }
    returns.push_back(ret);
  }
  const double n = static_cast<double>(returns.size());
  double mean = 0.0;
  for (double r : returns) mean += r;
  mean /= n;
  double ss = 0.0;
  for (double r : returns) ss += (r - mean) * (r - mean);
  const double var = returns.size() > 1 ? ss / (n - 1.0) : 0.0;
  return {mean, std::sqrt(var / n)};
}

std::uint64_t iteration_sample_seed(std::uint64_t seed, int round) {
  return derive_seed(derive_seed(seed, 0x5a4d), static_cast<std::uint64_t>(round));
}

std::uint64_t iteration_eval_seed(std::uint64_t seed, int round) {
  return derive_seed(derive_seed(seed, 0xe7a1), static_cast<std::uint64_t>(round));
}

PolicyIterationResult policy_iteration(const Environment& env,
                                       const IterationConfig& config,
                                       std::optional<GreedyPolicy> initial) {
  if (!(config.epsilon0 >= 0.0 && config.epsilon0 <= 1.0)) {
    throw std::invalid_argument("epsilon0 must lie in [0, 1]");
  }
  if (!(config.eta > 1.0)) throw std::invalid_argument("eta must be > 1");
  const Alphabet alphabet = env.model.alphabet();
  PolicyIterationResult result;
  result.policy = std::move(initial);
  double epsilon = config.epsilon0;
  for (int round = 0; round < config.iterations; ++round) {
    const double used = result.policy ? epsilon : 1.0;
    HistoryPolicy sampler = result.policy ? epsilon_greedy(*result.policy, used)
                                          : HistoryPolicy::uniform(alphabet.num_actions);
    const std::vector<Episode> episodes =
        simulate(env.model, sampler, config.episodes_per_iter,
                 {.length = config.episode_length, .terminal_state = std::nullopt},
                 iteration_sample_seed(config.seed, round));

    IterationMetrics m;
    m.iter = round + 1;
    m.epsilon = used;
    m.episodes = config.episodes_per_iter;
    try {
      LearnResult learned = learn_uqf(episodes, alphabet, config.learn);
      m.spectral_radius = learned.report.spectral_radius;
      m.rank_used = learned.report.rank_used;
      result.policy = result.policy
                          ? GreedyPolicy(*result.policy, std::move(learned.uqf), used)
                          : GreedyPolicy(std::move(learned.uqf));
    } catch (const Error& e) {
      m.error = e.what();
    }

    const std::uint64_t eval_seed = iteration_eval_seed(config.seed, round);
    EvalResult eval;
    if (result.policy) {
      GreedyPolicy evaluated = *result.policy;
      eval = evaluate_policy(env, evaluated, config.eval, eval_seed);
    } else {
      HistoryPolicy random = HistoryPolicy::uniform(alphabet.num_actions);
      eval = evaluate_policy(env, random, config.eval, eval_seed);
    }
    m.mean_return = eval.mean_return;
    m.std_error = eval.std_error;
    result.metrics.push_back(std::move(m));
    epsilon /= config.eta;
  }
  return result;
}

}  // namespace uqf
