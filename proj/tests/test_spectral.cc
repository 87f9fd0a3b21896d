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

#include <gtest/gtest.h>

#include "uqf/envs.h"
#include "uqf/errors.h"
#include "uqf/fixtures.h"
#include "uqf/oracles.h"
#include "uqf/planner.h"
#include "uqf/spectral.h"

namespace uqf {
namespace {

const Symbol kSwap{1, 0};

Episode episode_of(std::initializer_list<std::pair<Symbol, double>> steps) {
  Episode e;
  for (const auto& [s, r] : steps) e.steps.push_back({s, r, -1});
  return e;
}

// One example per string, label g(h) * count so that per-length
// normalization yields g exactly.
Dataset analytic_dataset(const Pomdp& m, const StatePolicy& p, int max_len) {
  Dataset d;
  for (const Word& h : enumerate_words(m.alphabet(), max_len)) {
    const double count = std::pow(m.alphabet().size(), static_cast<double>(h.size()));
    d.add({h, oracle_g(m, p, h) * count});
  }
  return d;
}

TEST(ExtractExamples, LengthsAndLabels) {
  const Episode e = episode_of({{kSwap, 0.0}, {kSwap, 1.0}, {kSwap, 0.0}});
  const Dataset d = extract_examples(std::span(&e, 1));
  ASSERT_EQ(d.examples.size(), 3u);
  EXPECT_EQ(d.examples[0].prefix, Word{});
  EXPECT_EQ(d.examples[0].label, 0.0);
  EXPECT_EQ(d.examples[1].prefix, Word{kSwap});
  EXPECT_EQ(d.examples[1].label, 1.0);
  EXPECT_EQ(d.examples[2].prefix, (Word{kSwap, kSwap}));
  EXPECT_EQ(d.examples[2].label, 0.0);
  EXPECT_EQ(d.count_by_length, (std::map<int, long>{{0, 1}, {1, 1}, {2, 1}}));
}

TEST(ExtractExamples, EmptyAndTruncated) {
  EXPECT_TRUE(extract_examples({}).examples.empty());
  const auto eps = sample_episodes(chain_pomdp(), StatePolicy::uniform(2, 2), 10, 20, 1);
  const Dataset d = extract_examples(eps, 4);
  EXPECT_EQ(d.examples.size(), 50u);
  for (const auto& [len, c] : d.count_by_length) EXPECT_EQ(c, 10) << len;
}

TEST(SelectBasis, FrequencyRule) {
  Dataset d;
  d.add({Word{{0, 0}, {1, 0}}, 1.0});
  d.add({Word{{0, 0}, {0, 0}}, 1.0});
  d.add({Word{{0, 0}}, 1.0});
  const Basis b = select_basis(d, 2, 3, 1);
  ASSERT_EQ(b.prefixes().size(), 2u);
  EXPECT_EQ(b.prefixes()[0], Word{});
  EXPECT_EQ(b.prefixes()[1], (Word{{0, 0}}));
  EXPECT_EQ(b.suffixes()[0], Word{});
  EXPECT_EQ(b.suffixes()[1], (Word{{0, 0}}));  // count 2 beats (1,0)'s 1
  EXPECT_EQ(b.suffixes()[2], (Word{{1, 0}}));
}

TEST(SelectBasis, SingleSlotAndTies) {
  Dataset d;
  d.add({Word{{1, 1}}, 0.0});
  d.add({Word{{0, 1}}, 0.0});
  EXPECT_EQ(select_basis(d, 1, 1, 3).prefixes(), std::vector<Word>{Word{}});
  const Basis b = select_basis(d, 2, 2, 3);
  EXPECT_EQ(b.prefixes()[1], (Word{{0, 1}}));
  EXPECT_EQ(b.suffixes()[1], (Word{{0, 1}}));
}

TEST(Basis, RequiresLambdaFirstAndUnique) {
  EXPECT_THROW(Basis({Word{{0, 0}}}, {Word{}}), std::invalid_argument);
  EXPECT_THROW(Basis({Word{}, Word{{0, 0}}, Word{{0, 0}}}, {Word{}}), std::invalid_argument);
}

TEST(EstimateHankel, AnalyticDatasetReproducesOracle) {
  const Pomdp m = random_pomdp(3, 2, 2, 1.0, 1.0, 4);
  const StatePolicy u = StatePolicy::uniform(3, 2);
  const Basis basis = complete_basis(m.alphabet(), 1);
  const HankelEstimate h = estimate_hankel(analytic_dataset(m, u, 3), basis, m.alphabet());
  for (std::size_t i = 0; i < basis.prefixes().size(); ++i) {
    for (std::size_t j = 0; j < basis.suffixes().size(); ++j) {
      const Word& pre = basis.prefixes()[i];
      const Word& suf = basis.suffixes()[j];
      EXPECT_NEAR(h.h_lambda(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)),
                  oracle_g(m, u, concat(pre, suf)), 1e-14);
      for (const Symbol s : m.alphabet().symbols()) {
        EXPECT_NEAR(h.h_sigma[static_cast<std::size_t>(m.alphabet().id(s))](
                        static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)),
                    oracle_g(m, u, concat(pre, s, suf)), 1e-14);
      }
    }
  }
}

TEST(EstimateHankel, EmptyDatasetIsZero) {
  const Alphabet ab{2, 1};
  const HankelEstimate h = estimate_hankel(Dataset{}, complete_basis(ab, 1), ab);
  EXPECT_TRUE(h.h_lambda.isZero());
  for (const auto& m : h.h_sigma) EXPECT_TRUE(m.isZero());
}

TEST(EstimateHankel, ChainMonteCarloCell) {
  const Pomdp m = chain_pomdp();
  const auto eps = sample_episodes(m, StatePolicy::uniform(2, 2), 100000, 3, 17);
  const Dataset d = extract_examples(eps);
  const Basis basis = complete_basis(m.alphabet(), 1);
  const HankelEstimate h = estimate_hankel(d, basis, m.alphabet());
  const int col = *basis.suffix_index(Word{kSwap});
  EXPECT_NEAR(h.h_lambda(0, col), 0.5, 0.01);
  // (lambda, lambda) is the plain mean of length-0 labels.
  double mean0 = 0.0;
  for (const auto& ex : d.examples) {
    if (ex.prefix.empty()) mean0 += ex.label;
  }
  EXPECT_EQ(h.h_lambda(0, 0), mean0 / 100000.0);
}

TEST(TruncatedSvd, HandCases) {
  const TruncatedSvd id = truncated_svd(Eigen::MatrixXd::Identity(3, 3), 3);
  EXPECT_TRUE(id.d.isApprox(Eigen::Vector3d::Ones()));
  const Eigen::Vector3d a(1, 2, 3);
  const Eigen::Vector4d b(0.5, -1, 2, 0);
  const Eigen::MatrixXd outer = a * b.transpose();
  const TruncatedSvd r1 = truncated_svd(outer, 1);
  EXPECT_LT((outer - r1.u * r1.d.asDiagonal() * r1.v.transpose()).norm(), 1e-12);
  const Eigen::MatrixXd diag = Eigen::Vector3d(3, 2, 1).asDiagonal();
  const TruncatedSvd r2 = truncated_svd(diag, 2);
  EXPECT_NEAR((diag - r2.u * r2.d.asDiagonal() * r2.v.transpose()).norm(), 1.0, 1e-12);
  EXPECT_THROW(truncated_svd(diag, 4), std::invalid_argument);
}

TEST(TruncatedSvd, OrthonormalAndOrdered) {
  std::mt19937_64 rng(3);
  std::normal_distribution<double> n(0, 1);
  for (int trial = 0; trial < 20; ++trial) {
    Eigen::MatrixXd m(7, 5);
    for (Eigen::Index i = 0; i < m.size(); ++i) m.data()[i] = n(rng);
    const TruncatedSvd s = truncated_svd(m, 4);
    EXPECT_LE((s.u.transpose() * s.u - Eigen::MatrixXd::Identity(4, 4)).cwiseAbs().maxCoeff(), 1e-10);
    EXPECT_LE((s.v.transpose() * s.v - Eigen::MatrixXd::Identity(4, 4)).cwiseAbs().maxCoeff(), 1e-10);
    for (int i = 1; i < 4; ++i) EXPECT_GE(s.d[i - 1], s.d[i]);
    EXPECT_GE(s.d.minCoeff(), 0.0);
    // Eckart-Young: residual equals the discarded spectrum.
    EXPECT_NEAR((m - s.u * s.d.asDiagonal() * s.v.transpose()).norm(),
                s.spectrum.tail(1).norm(), 1e-10);
  }
}

TEST(RecoverWfa, ChainExactMoments) {
  const Pomdp m = chain_pomdp();
  const StatePolicy u = StatePolicy::uniform(2, 2);
  const Basis basis = complete_basis(m.alphabet(), 1);
  const Wfa w = recover_wfa(estimate_hankel(analytic_dataset(m, u, 3), basis, m.alphabet()), 2);
  for (const Word& x : enumerate_words(m.alphabet(), 4)) {
    EXPECT_NEAR(evaluate(w, x), oracle_g(m, u, x), 1e-8) << to_string(x);
  }
}

TEST(RecoverWfa, ZeroHankelIsRankDeficient) {
  const Alphabet ab{2, 1};
  const HankelEstimate h = estimate_hankel(Dataset{}, complete_basis(ab, 1), ab);
  try {
    recover_wfa(h, 1);
    FAIL();
  } catch (const RankDeficientError& e) {
    EXPECT_EQ(e.effective(), 0);
    EXPECT_EQ(e.requested(), 1);
  }
}

TEST(LearnUqf, ChainGreedyAtLambdaSwaps) {
  const Pomdp m = chain_pomdp();
  const auto eps = sample_episodes(m, StatePolicy::uniform(2, 2), 10000, 10, 23);
  LearnConfig cfg;
  cfg.rank = 2;
  cfg.gamma = 0.5;
  const LearnResult r = learn_uqf(eps, m.alphabet(), cfg);
  EXPECT_EQ(GreedyPolicy(r.uqf).greedy_action(), 1);
  EXPECT_EQ(r.report.rank_used, 2);
  EXPECT_LT(r.report.spectral_radius, 1.0);
  EXPECT_FALSE(r.report.singular_values.empty());
}

TEST(LearnUqf, GammaZeroKeepsRewardTerminal) {
  const Pomdp m = chain_pomdp();
  const auto eps = sample_episodes(m, StatePolicy::uniform(2, 2), 2000, 10, 2);
  LearnConfig cfg;
  cfg.rank = 2;
  cfg.gamma = 0.0;
  const LearnResult r = learn_uqf(eps, m.alphabet(), cfg);
  EXPECT_TRUE(r.uqf.omega().isApprox(r.reward_wfa.omega()));
}

TEST(LearnUqf, RankTooHighReportsSpectrum) {
  const Pomdp m = chain_pomdp();
  const auto eps = sample_episodes(m, StatePolicy::uniform(2, 2), 500, 10, 2);
  LearnConfig cfg;
  cfg.rank = 50;
  try {
    learn_uqf(eps, m.alphabet(), cfg);
    FAIL();
  } catch (const RankDeficientError& e) {
    EXPECT_EQ(e.requested(), 50);
  }
}

// Mean error on a probe set shrinks with data (median over seeds).
TEST(LearnUqf, ErrorShrinksWithSampleSize) {
  const Pomdp m = random_pomdp(2, 2, 2, 2.0, 1.0, 31);
  const StatePolicy u = StatePolicy::uniform(2, 2);
  const auto probes = enumerate_words(m.alphabet(), 3);
  std::vector<double> medians;
  for (int n : {100, 1000, 10000, 100000}) {
    std::vector<double> errs;
    for (std::uint64_t seed = 0; seed < 5; ++seed) {
      const auto eps = sample_episodes(m, u, n, 6, seed);
      const Dataset d = extract_examples(eps);
      const Basis basis = complete_basis(m.alphabet(), 1);
      const Wfa w = recover_wfa(estimate_hankel(d, basis, m.alphabet()), 2);
      double e = 0.0;
      for (const Word& x : probes) e += std::abs(evaluate(w, x) - oracle_g(m, u, x));
      errs.push_back(e / static_cast<double>(probes.size()));
    }
    std::sort(errs.begin(), errs.end());
    medians.push_back(errs[2]);
  }
  for (std::size_t i = 1; i < medians.size(); ++i) EXPECT_LE(medians[i], medians[i - 1]);
}

}  // namespace
}  // namespace uqf
