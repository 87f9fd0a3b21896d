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
#include "uqf/oracles.h"
#include "uqf/pomdp.h"
#include "uqf/wfa.h"

namespace uqf {
namespace {

const Symbol kSwap{1, 0};

Wfa random_wfa(int n, Alphabet alphabet, std::uint64_t seed, double scale = 0.3) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  auto fill = [&](Eigen::MatrixXd m) {
    for (Eigen::Index i = 0; i < m.size(); ++i) m.data()[i] = normal(rng);
    return m;
  };
  std::vector<Eigen::MatrixXd> ts;
  for (int i = 0; i < alphabet.size(); ++i) ts.push_back(scale * fill(Eigen::MatrixXd(n, n)));
  return Wfa(alphabet, fill(Eigen::MatrixXd(n, 1)).col(0), std::move(ts),
             fill(Eigen::MatrixXd(n, 1)).col(0));
}

Word random_word(const Alphabet& a, int len, std::mt19937_64& rng) {
  Word w;
  for (int i = 0; i < len; ++i) {
    w.push_back(a.symbol(static_cast<int>(rng() % static_cast<std::uint64_t>(a.size()))));
  }
  return w;
}

TEST(WfaConstruction, RejectsBadShapes) {
  const Alphabet ab{1, 2};
  const Eigen::VectorXd v = Eigen::VectorXd::Ones(2);
  EXPECT_THROW(Wfa(ab, v, {Eigen::MatrixXd::Zero(2, 2)}, v), InvalidModelError);
  EXPECT_THROW(Wfa(ab, v, {Eigen::MatrixXd::Zero(2, 2), Eigen::MatrixXd::Zero(3, 3)}, v),
               InvalidModelError);
  Eigen::MatrixXd nan = Eigen::MatrixXd::Zero(2, 2);
  nan(0, 1) = std::nan("");
  EXPECT_THROW(Wfa(ab, v, {nan, nan}, v), InvalidModelError);
}

TEST(Evaluate, EmptyWordIsDot) {
  const Wfa w = random_wfa(3, {2, 2}, 1);
  EXPECT_DOUBLE_EQ(evaluate(w, Word{}), w.alpha().dot(w.omega()));
}

TEST(Evaluate, IdentityTransitions) {
  const Alphabet ab{2, 2};
  const Eigen::VectorXd alpha = Eigen::Vector3d(1, 2, 3);
  const Eigen::VectorXd omega = Eigen::Vector3d(-1, 0.5, 2);
  const Wfa w(ab, alpha, std::vector<Eigen::MatrixXd>(4, Eigen::MatrixXd::Identity(3, 3)), omega);
  EXPECT_DOUBLE_EQ(evaluate(w, Word{{0, 1}, {1, 1}, {1, 0}}), alpha.dot(omega));
}

TEST(Evaluate, SymbolOutOfRange) {
  const Wfa w = random_wfa(2, {2, 2}, 3);
  EXPECT_THROW(evaluate(w, Word{{2, 0}}), SymbolOutOfRangeError);
  EXPECT_THROW(step(ForwardState::initial(w), w, Symbol{0, 5}), SymbolOutOfRangeError);
}

TEST(Step, ChainMatchesBelief) {
  const Pomdp m = chain_pomdp();
  const StatePolicy u = StatePolicy::uniform(2, 2);
  const Wfa b = exact_wfa(m, u);
  const ForwardState s0 = ForwardState::initial(b);
  EXPECT_EQ(s0.vector, b.alpha());
  EXPECT_EQ(s0.history_len, 0);
  const ForwardState s1 = step(s0, b, kSwap);
  EXPECT_EQ(s1.history_len, 1);
  EXPECT_TRUE(s1.vector.isApprox(belief_forward(m, u, Word{kSwap})));
  EXPECT_NEAR(s1.vector[0], 0.0, 1e-15);
  EXPECT_NEAR(s1.vector[1], 0.5, 1e-15);
}

TEST(Step, FoldEqualsEvaluateExactly) {
  std::mt19937_64 rng(42);
  const Wfa w = random_wfa(4, {2, 3}, 9);
  for (int trial = 0; trial < 1000; ++trial) {
    const Word word = random_word(w.alphabet(), static_cast<int>(rng() % 12), rng);
    ForwardState s = ForwardState::initial(w);
    for (const Symbol sym : word) s = step(s, w, sym);
    EXPECT_EQ(s.vector.dot(w.omega()), evaluate(w, word));
  }
}

TEST(SymbolSum, ChainHandSum) {
  const Wfa b = exact_wfa(chain_pomdp(), StatePolicy::uniform(2, 2));
  EXPECT_TRUE(symbol_sum(b).isApprox(Eigen::Matrix2d::Constant(0.5)));
}

TEST(SymbolSum, ZeroAndSingleSymbol) {
  const Eigen::VectorXd v = Eigen::VectorXd::Ones(2);
  const Wfa zero({2, 1}, v, std::vector<Eigen::MatrixXd>(2, Eigen::MatrixXd::Zero(2, 2)), v);
  EXPECT_EQ(symbol_sum(zero), Eigen::MatrixXd::Zero(2, 2));
  const Wfa one = random_wfa(2, {1, 1}, 4);
  EXPECT_EQ(symbol_sum(one), one.transitions()[0]);
}

TEST(SpectralRadius, HandCases) {
  EXPECT_NEAR(spectral_radius(Eigen::MatrixXd::Identity(3, 3)), 1.0, 1e-8);
  EXPECT_NEAR(spectral_radius(Eigen::MatrixXd::Constant(2, 2, 0.5)), 1.0, 1e-8);
  EXPECT_NEAR(spectral_radius(Eigen::Vector2d(0.3, -0.9).asDiagonal().toDenseMatrix()), 0.9, 1e-8);
  Eigen::Matrix2d rot;
  rot << 0, -0.7, 0.7, 0;  // complex pair +-0.7i
  EXPECT_NEAR(spectral_radius(rot), 0.7, 1e-8);
  EXPECT_THROW(spectral_radius(Eigen::MatrixXd::Zero(2, 3)), std::invalid_argument);
}

TEST(ToUqf, ChainHandInversion) {
  const Wfa a = to_uqf(exact_wfa(chain_pomdp(), StatePolicy::uniform(2, 2)), 0.5);
  EXPECT_NEAR(a.omega()[0], 0.5, 1e-12);
  EXPECT_NEAR(a.omega()[1], 1.5, 1e-12);
}

TEST(ToUqf, GammaZeroKeepsTau) {
  const Wfa b = exact_wfa(random_pomdp(3, 2, 2, 1.0, 1.0, 8), StatePolicy::uniform(3, 2));
  const Wfa a = to_uqf(b, 0.0);
  EXPECT_TRUE(a.omega().isApprox(b.omega()));
  EXPECT_EQ(a.alpha(), b.alpha());
  EXPECT_EQ(a.transitions(), b.transitions());
}

TEST(ToUqf, SpectralGuard) {
  const Wfa b = exact_wfa(chain_pomdp(), StatePolicy::uniform(2, 2));
  try {
    to_uqf(b, 1.0 - 1e-10);
    FAIL() << "expected SpectralRadiusTooLargeError";
  } catch (const SpectralRadiusTooLargeError& e) {
    EXPECT_NEAR(e.rho(), 1.0 - 1e-10, 1e-8);
  }
  EXPECT_NO_THROW(to_uqf(b, 0.999));
}

TEST(ToUqf, ResidualContract) {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const Wfa b = exact_wfa(random_pomdp(4, 2, 3, 0.5, 1.0, seed), StatePolicy::uniform(4, 2));
    const Wfa a = to_uqf(b, 0.95);
    const Eigen::MatrixXd lhs =
        Eigen::MatrixXd::Identity(4, 4) - 0.95 * symbol_sum(b);
    EXPECT_LE((lhs * a.omega() - b.omega()).norm(), 1e-10 * std::max(1.0, b.omega().norm()));
  }
}

// V~(h) = sum_{|z|<=N} gamma^|z| g(hz) + tail, z enumerated literally.
TEST(ToUqf, SuffixSeriesOnTwoSymbolAlphabet) {
  const Pomdp m = random_pomdp(3, 2, 1, 1.0, 1.0, 12);
  const StatePolicy u = StatePolicy::uniform(3, 2);
  const Wfa b = exact_wfa(m, u);
  const double gamma = 0.4;
  const Wfa a = to_uqf(b, gamma);
  for (const Word& h : enumerate_words(m.alphabet(), 2)) {
    double series = 0.0;
    for (const Word& z : enumerate_words(m.alphabet(), 6)) {
      series += std::pow(gamma, static_cast<double>(z.size())) * evaluate(b, concat(h, z));
    }
    const double tail = std::pow(gamma, 7) / (1.0 - gamma) * m.reward.maxCoeff();
    EXPECT_NEAR(evaluate(a, h), series, tail);
    EXPECT_GE(evaluate(a, h), series - 1e-15);
  }
}

TEST(ActionScores, UniformDivisorScalesByActions) {
  const Wfa a = to_uqf(exact_wfa(random_pomdp(3, 3, 2, 1.0, 1.0, 2), StatePolicy::uniform(3, 3)), 0.5);
  const ForwardState s = ForwardState::initial(a);
  const Eigen::VectorXd uniform = action_scores(a, s, [](int) { return 1.0 / 3.0; });
  const Eigen::VectorXd raw = action_scores(a, s, [](int) { return 1.0; });
  EXPECT_TRUE(uniform.isApprox(3.0 * raw));
}

TEST(ActionScores, ChainPrefersSwapAtStart) {
  const Pomdp m = chain_pomdp();
  const StatePolicy u = StatePolicy::uniform(2, 2);
  const Wfa a = to_uqf(exact_wfa(m, u), 0.5);
  const Eigen::VectorXd s = action_scores(a, ForwardState::initial(a), [](int) { return 0.5; });
  EXPECT_GT(s[1], s[0]);
  EXPECT_GT(oracle_q(m, u, {}, 1, 0.5, 25), oracle_q(m, u, {}, 0, 0.5, 25));
}

TEST(ActionScores, ChainArgmaxMatchesOracleOnShortHistories) {
  const Pomdp m = chain_pomdp();
  const StatePolicy u = StatePolicy::uniform(2, 2);
  const Wfa a = to_uqf(exact_wfa(m, u), 0.5);
  for (const Word& h : enumerate_words(m.alphabet(), 3)) {
    ForwardState st = ForwardState::initial(a);
    for (const Symbol s : h) st = step(st, a, s);
    const Eigen::VectorXd sc = action_scores(a, st, [](int) { return 0.5; });
    const double q0 = oracle_q(m, u, h, 0, 0.5, 25);
    const double q1 = oracle_q(m, u, h, 1, 0.5, 25);
    EXPECT_EQ(sc[1] > sc[0], q1 > q0) << to_string(h);
  }
}

TEST(ActionScores, ZeroProbabilityIsAnError) {
  const Wfa a = random_wfa(2, {2, 1}, 5);
  EXPECT_THROW(action_scores(a, ForwardState::initial(a), [](int x) { return x == 0 ? 1.0 : 0.0; }),
               ZeroSamplingProbabilityError);
}

}  // namespace
}  // namespace uqf
