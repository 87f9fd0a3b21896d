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


#include <cmath>
#include <random>

#include <gtest/gtest.h>

#include "uqf/envs.h"
#include "uqf/errors.h"
#include "uqf/fixtures.h"
#include "uqf/planner.h"

namespace uqf {
namespace {

Wfa chain_uqf() {
  return to_uqf(exact_wfa(chain_pomdp(), StatePolicy::uniform(2, 2)), 0.5);
}

Wfa random_wfa(int n, Alphabet ab, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  auto vec = [&](int k) {
    Eigen::VectorXd v(k);
    for (int i = 0; i < k; ++i) v[i] = normal(rng);
    return v;
  };
  std::vector<Eigen::MatrixXd> ts;
  for (int i = 0; i < ab.size(); ++i) {
    Eigen::MatrixXd m(n, n);
    for (Eigen::Index j = 0; j < m.size(); ++j) m.data()[j] = 0.4 * normal(rng);
    ts.push_back(m);
  }
  return Wfa(ab, vec(n), std::move(ts), vec(n));
}

Word random_word(const Alphabet& a, int len, std::mt19937_64& rng) {
  Word w;
  for (int i = 0; i < len; ++i) {
    w.push_back(a.symbol(static_cast<int>(rng() % static_cast<std::uint64_t>(a.size()))));
  }
  return w;
}

TEST(GreedyPolicy, ChainSwapsAtLambda) { EXPECT_EQ(GreedyPolicy(chain_uqf()).greedy_action(), 1); }

TEST(GreedyPolicy, ZeroTransitionsTieToActionZero) {
  const Alphabet ab{3, 2};
  const Wfa w(ab, Eigen::VectorXd::Ones(2),
              std::vector<Eigen::MatrixXd>(6, Eigen::MatrixXd::Zero(2, 2)), Eigen::VectorXd::Ones(2));
  EXPECT_EQ(GreedyPolicy(w).greedy_action(), 0);
}

TEST(GreedyPolicy, ScoresMatchActionScoresWithUniformDivisor) {
  const Wfa w = random_wfa(3, {3, 2}, 1);
  GreedyPolicy p(w);
  p.act_and_observe({2, 1});
  ForwardState s = step(ForwardState::initial(w), w, {2, 1});
  EXPECT_TRUE(p.scores().isApprox(action_scores(w, s, [](int) { return 1.0 / 3.0; })));
  // A constant divisor does not move the argmax.
  EXPECT_EQ(p.greedy_action(), argmax_lowest(action_scores(w, s, [](int) { return 1.0; })));
}

TEST(GreedyPolicy, IncrementalEqualsReplay) {
  std::mt19937_64 rng(8);
  for (int trial = 0; trial < 500; ++trial) {
    const Wfa w = random_wfa(3, {2, 2}, 100 + static_cast<std::uint64_t>(trial % 10));
    const Word h = random_word(w.alphabet(), static_cast<int>(rng() % 8), rng);
    GreedyPolicy online(w);
    for (const Symbol s : h) online.act_and_observe(s);
    ForwardState st = ForwardState::initial(w);
    for (const Symbol s : h) st = step(st, w, s);
    EXPECT_EQ(online.greedy_action(),
              argmax_lowest(action_scores(w, st, [](int) { return 0.5; })));
    EXPECT_EQ(online.history_len(), static_cast<int>(h.size()));
  }
}

TEST(GreedyPolicy, NoSymbolsUsesAlpha) {
  const Wfa w = random_wfa(3, {2, 2}, 2);
  EXPECT_TRUE(GreedyPolicy(w).scores().isApprox(
      action_scores(w, ForwardState::initial(w), [](int) { return 0.5; })));
}

TEST(GreedyPolicy, OneStepCallPerSymbol) {
  GreedyPolicy p(random_wfa(4, {2, 2}, 3));
  std::mt19937_64 rng(1);
  for (int t = 0; t < 100; ++t) p.act_and_observe({static_cast<int>(rng() % 2), 1});
  EXPECT_EQ(p.step_calls(), 100);
}

TEST(GreedyPolicy, PositiveScalingOfOmegaKeepsDecisions) {
  std::mt19937_64 rng(5);
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    const Wfa w = random_wfa(3, {3, 2}, seed);
    GreedyPolicy a(w);
    GreedyPolicy b(w.with_omega(7.5 * w.omega()));
    const Word h = random_word(w.alphabet(), 6, rng);
    for (const Symbol s : h) {
      EXPECT_EQ(a.greedy_action(), b.greedy_action());
      a.act_and_observe(s);
      b.act_and_observe(s);
    }
  }
}

TEST(GreedyPolicy, RescalingKeepsLongRunsFinite) {
  const Alphabet ab{2, 1};
  std::vector<Eigen::MatrixXd> ts(2, 1e-3 * Eigen::MatrixXd::Identity(2, 2));
  const Wfa w(ab, Eigen::Vector2d(1, 2), ts, Eigen::Vector2d(1, -1));
  GreedyPolicy p(w);
  for (int t = 0; t < 500; ++t) p.act_and_observe({t % 2, 0});
  EXPECT_TRUE(p.scores().allFinite());
  EXPECT_NE(p.scores().cwiseAbs().maxCoeff(), 0.0);
}

TEST(GreedyPolicy, DivisorIsTheEpsilonGreedyFormula) {
  const Wfa w1 = random_wfa(3, {4, 1}, 7);
  const Wfa w2 = random_wfa(3, {4, 1}, 8);
  const GreedyPolicy base(w1);
  const HistoryPolicy sampler = epsilon_greedy(base, 0.2);
  GreedyPolicy next(base, w2, 0.2);
  EXPECT_EQ(next.num_levels(), 2);
  // Spy divisor: the scores of the new level divide by exactly Pi(a|h).
  std::vector<double> seen;
  const Eigen::VectorXd expected = action_scores(
      w2, ForwardState::initial(w2), [&](int a) {
        seen.push_back(sampler.probability(a));
        return sampler.probability(a);
      });
  EXPECT_TRUE(next.scores().isApprox(expected));
  const int g = base.greedy_action();
  for (int a = 0; a < 4; ++a) {
    EXPECT_DOUBLE_EQ(next.sampling_probability(a), a == g ? 0.85 : 0.05);
    EXPECT_DOUBLE_EQ(seen[static_cast<std::size_t>(a)], a == g ? 0.85 : 0.05);
  }
}

TEST(EpsilonGreedy, ClosedForms) {
  const GreedyPolicy base(random_wfa(2, {4, 2}, 3));
  const int g = base.greedy_action();
  const HistoryPolicy one = epsilon_greedy(base, 1.0);
  const HistoryPolicy zero = epsilon_greedy(base, 0.0);
  const HistoryPolicy mid = epsilon_greedy(base, 0.2);
  for (int a = 0; a < 4; ++a) {
    EXPECT_DOUBLE_EQ(one.probability(a), 0.25);
    EXPECT_DOUBLE_EQ(zero.probability(a), a == g ? 1.0 : 0.0);
    EXPECT_DOUBLE_EQ(mid.probability(a), a == g ? 0.85 : 0.05);
  }
  EXPECT_DOUBLE_EQ(mid.probabilities().sum(), 1.0);
  EXPECT_THROW(epsilon_greedy(base, 1.5), std::invalid_argument);
  EXPECT_THROW(epsilon_greedy(base, -0.1), std::invalid_argument);
}

TEST(EpsilonGreedy, EpsilonOneDrawsUniformly) {
  HistoryPolicy p = epsilon_greedy(GreedyPolicy(random_wfa(2, {4, 1}, 9)), 1.0);
  std::mt19937_64 rng(4);
  std::array<long, 4> counts{};
  const int n = 100000;
  for (int i = 0; i < n; ++i) ++counts[static_cast<std::size_t>(p.act(-1, rng))];
  const double sd = std::sqrt(n * 0.25 * 0.75);
  for (long c : counts) EXPECT_NEAR(static_cast<double>(c), n / 4.0, 3 * sd);
}

TEST(EvaluatePolicy, ZeroRewardIsZero) {
  Pomdp m = random_pomdp(3, 2, 2, 1.0, 1.0, 1);
  m.reward.setZero();
  HistoryPolicy u = HistoryPolicy::uniform(2);
  const EvalResult r = evaluate_policy({"zero", m, std::nullopt}, u, {100, 20, 0.9}, 0);
  EXPECT_EQ(r.mean_return, 0.0);
  EXPECT_EQ(r.std_error, 0.0);
}

TEST(EvaluatePolicy, ChainAlwaysSwapGeometricSeries) {
  const int swap[] = {1, 1};
  StatePolicyController c(StatePolicy::deterministic(swap, 2));
  const EvalResult r = evaluate_policy({"chain", chain_pomdp(), std::nullopt}, c, {10, 100, 0.5}, 3);
  EXPECT_NEAR(r.mean_return, 2.0 / 3.0, 1e-12);
}

TEST(EvaluatePolicy, UniformBelowOptimalOnGridworld) {
  const GridWorld g = compile_gridworld(builtin_gridworld("B"));
  const Environment env = g.env("B");
  HistoryPolicy u = HistoryPolicy::uniform(4);
  StatePolicyController opt(StatePolicy::deterministic(mdp_optimal(g.model).policy, 4));
  const EvalResult ru = evaluate_policy(env, u, {1000, 100, 0.99}, 6);
  const EvalResult ro = evaluate_policy(env, opt, {1000, 100, 0.99}, 6);
  EXPECT_LE(ru.mean_return, ro.mean_return + 3 * std::hypot(ru.std_error, ro.std_error));
}

TEST(EvaluatePolicy, DeterministicUnderSeed) {
  const GridWorld g = compile_gridworld(builtin_gridworld("A"));
  HistoryPolicy u1 = HistoryPolicy::uniform(4);
  HistoryPolicy u2 = HistoryPolicy::uniform(4);
  const EvalResult a = evaluate_policy(g.env("A"), u1, {200, 50, 0.99}, 9);
  const EvalResult b = evaluate_policy(g.env("A"), u2, {200, 50, 0.99}, 9);
  EXPECT_EQ(a.mean_return, b.mean_return);
  EXPECT_EQ(a.std_error, b.std_error);
}

TEST(PolicyIteration, SingleUniformRoundEqualsLearnUqf) {
  const Environment env{"chain", chain_pomdp(), std::nullopt};
  IterationConfig c;
  c.iterations = 1;
  c.episodes_per_iter = 3000;
  c.episode_length = 12;
  c.learn.rank = 2;
  c.learn.gamma = 0.5;
  c.eval = {50, 20, 0.9};
  c.seed = 4;
  const PolicyIterationResult r = policy_iteration(env, c);
  ASSERT_TRUE(r.policy.has_value());
  const auto eps = sample_episodes(env.model, StatePolicy::uniform(2, 2), c.episodes_per_iter,
                                   c.episode_length, iteration_sample_seed(c.seed, 0));
  const LearnResult direct = learn_uqf(eps, env.model.alphabet(), c.learn);
  EXPECT_EQ(r.policy->uqf().omega(), direct.uqf.omega());
  EXPECT_EQ(r.policy->uqf().transitions(), direct.uqf.transitions());
}

TEST(PolicyIteration, EpsilonDecaySchedule) {
  const Environment env{"chain", chain_pomdp(), std::nullopt};
  IterationConfig c;
  c.iterations = 3;
  c.eta = 2.0;
  c.epsilon0 = 1.0;
  c.episodes_per_iter = 2000;
  c.episode_length = 12;
  c.learn.rank = 2;
  c.learn.gamma = 0.5;
  c.eval = {20, 10, 0.9};
  const PolicyIterationResult r = policy_iteration(env, c);
  ASSERT_EQ(r.metrics.size(), 3u);
  EXPECT_EQ(r.metrics[0].epsilon, 1.0);
  EXPECT_EQ(r.metrics[1].epsilon, 0.5);
  EXPECT_EQ(r.metrics[2].epsilon, 0.25);
  ASSERT_TRUE(r.policy.has_value());
  EXPECT_EQ(r.policy->num_levels(), 3);
  EXPECT_EQ(r.policy->sampling_epsilon(), 0.25);
}

TEST(PolicyIteration, FailedRoundKeepsPreviousPolicy) {
  const Environment env{"chain", chain_pomdp(), std::nullopt};
  IterationConfig c;
  c.iterations = 2;
  c.episodes_per_iter = 200;
  c.episode_length = 8;
  c.learn.rank = 40;  // always rank deficient
  c.eval = {10, 10, 0.9};
  const PolicyIterationResult r = policy_iteration(env, c);
  EXPECT_FALSE(r.policy.has_value());
  ASSERT_EQ(r.metrics.size(), 2u);
  for (const auto& m : r.metrics) EXPECT_FALSE(m.error.empty());
}

}  // namespace
}  // namespace uqf
