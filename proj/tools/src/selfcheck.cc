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


#include "uqf_cli/selfcheck.h"

#include <algorithm>
#include <cmath>
#include <exception>

#include "uqf/envs.h"
#include "uqf/fixtures.h"
#include "uqf/oracles.h"
#include "uqf/projection.h"
#include "uqf/spectral.h"

namespace uqf::cli {
namespace {

struct Instance {
  std::string name;
  Pomdp model;
  StatePolicy policy;
};

std::vector<Instance> instances() {
  std::vector<Instance> out;
  out.push_back({"chain", chain_pomdp(), StatePolicy::uniform(2, 2)});
  out.push_back({"line", line_world(), StatePolicy::uniform(3, 2)});
  for (std::uint64_t seed = 0; seed < 4; ++seed) {
    Pomdp m = random_pomdp(3, 2, 2, 1.0, 1.0, seed);
    // Random state-level policy, so pi is not always uniform.
    Pomdp p = random_pomdp(3, 1, 2, 1.0, 1.0, seed + 100);
    StatePolicy pi{p.emission[0]};
    out.push_back({"random-" + std::to_string(seed), std::move(m), std::move(pi)});
  }
  return out;
}

// Runs `body`, turning exceptions into a failed check.
CheckResult guarded(const std::string& name, double tolerance,
                    const std::function<double(std::string&)>& body) {
  CheckResult r{name, false, 0.0, tolerance, ""};
  try {
    r.max_error = body(r.detail);
    r.passed = r.max_error <= tolerance;
  } catch (const std::exception& e) {
    r.detail = e.what();
    r.max_error = INFINITY;
  }
  return r;
}

// Rank of the exact reward Hankel over `basis`, populated from the oracle.
HankelEstimate exact_hankel(const Pomdp& m, const StatePolicy& pi,
                            const Basis& basis) {
  const Alphabet alphabet = m.alphabet();
  const auto& us = basis.prefixes();
  const auto& vs = basis.suffixes();
  const auto rows = static_cast<Eigen::Index>(us.size());
  const auto cols = static_cast<Eigen::Index>(vs.size());
  HankelEstimate h{alphabet, Eigen::MatrixXd(rows, cols),
                   std::vector<Eigen::MatrixXd>(static_cast<std::size_t>(alphabet.size()),
                                                Eigen::MatrixXd(rows, cols))};
  for (Eigen::Index i = 0; i < rows; ++i) {
    for (Eigen::Index j = 0; j < cols; ++j) {
      const Word& u = us[static_cast<std::size_t>(i)];
      const Word& v = vs[static_cast<std::size_t>(j)];
      h.h_lambda(i, j) = oracle_g(m, pi, concat(u, v));
      for (const Symbol s : alphabet.symbols()) {
        h.h_sigma[static_cast<std::size_t>(alphabet.id(s))](i, j) =
            oracle_g(m, pi, concat(u, s, v));
      }
    }
  }
  return h;
}

int numerical_rank(const Eigen::MatrixXd& m) {
  const Eigen::VectorXd sv = Eigen::JacobiSVD<Eigen::MatrixXd>(m).singularValues();
  int r = 0;
  for (Eigen::Index i = 0; i < sv.size(); ++i) r += sv[i] > 1e-9 * sv[0] ? 1 : 0;
  return r;
}

}  // namespace

std::vector<CheckResult> run_selfcheck(const SelfcheckOptions& options) {
  const std::vector<Instance> all = instances();
  std::vector<CheckResult> results;

  results.push_back(guarded("reward automaton vs enumerated g(h)", 1e-10, [&](std::string& d) {
    double err = 0.0;
    for (const Instance& in : all) {
      const Wfa b = options.reward_wfa(in.model, in.policy);
      for (const Word& h : enumerate_words(in.model.alphabet(), 4)) {
        err = std::max(err, std::abs(evaluate(b, h) - oracle_g(in.model, in.policy, h)));
      }
    }
    d = std::to_string(all.size()) + " models, histories up to length 4";
    return err;
  }));

  results.push_back(guarded("mu^T B_h 1 vs enumerated P(h)", 1e-12, [&](std::string& d) {
    double err = 0.0;
    for (const Instance& in : all) {
      const Wfa p = probability_wfa(in.model, in.policy);
      for (const Word& h : enumerate_words(in.model.alphabet(), 3)) {
        err = std::max(err, std::abs(evaluate(p, h) -
                                     oracle_probability(in.model, in.policy, h)));
      }
    }
    d = "histories up to length 3";
    return err;
  }));

  results.push_back(guarded("length-3 probability mass", 1e-10, [&](std::string& d) {
    double err = 0.0;
    for (const Instance& in : all) {
      double total = 0.0;
      for (const Word& h : words_of_length(in.model.alphabet(), 3)) {
        total += oracle_probability(in.model, in.policy, h);
      }
      err = std::max(err, std::abs(total - 1.0));
    }
    d = "|sum_h P(h) - 1| over |h| = 3";
    return err;
  }));

  results.push_back(guarded("Neumann series vs linear solve", 1.0, [&](std::string& d) {
    // Reported error is the worst ratio |omega' - series_50| / bound.
    double worst = 0.0;
    for (const Instance& in : all) {
      const Wfa b = exact_wfa(in.model, in.policy);
      const Eigen::MatrixXd m = symbol_sum(b);
      const double rho = spectral_radius(m);
      for (double gamma : {0.3, 0.9}) {
        const Wfa u = to_uqf(b, gamma);
        Eigen::VectorXd term = b.omega();
        Eigen::VectorXd series = term;
        for (int i = 1; i <= 50; ++i) {
          term = gamma * m * term;
          series += term;
        }
        // Geometric tail plus a round-off allowance; at gamma = 0.3 the tail
        // alone is far below machine precision.
        const double bound = std::pow(gamma, 51) * rho / (1.0 - gamma * rho) *
                                 b.omega().cwiseAbs().maxCoeff() +
                             1e-12 * std::max(1.0, u.omega().cwiseAbs().maxCoeff());
        const double gap = (u.omega() - series).cwiseAbs().maxCoeff();
        worst = std::max(worst, gap / bound);
      }
    }
    d = "gamma in {0.3, 0.9}, 50 terms; error is gap / bound";
    return worst;
  }));

  results.push_back(guarded("recovery from exact moments", 1e-8, [&](std::string& d) {
    double err = 0.0;
    for (const Instance& in : all) {
      const Basis basis = complete_basis(in.model.alphabet(), 2);
      const HankelEstimate h = exact_hankel(in.model, in.policy, basis);
      const int k = numerical_rank(h.h_lambda);
      const Wfa w = recover_wfa(h, k);
      for (const Word& x : enumerate_words(in.model.alphabet(), 4)) {
        err = std::max(err, std::abs(evaluate(w, x) - oracle_g(in.model, in.policy, x)));
      }
    }
    d = "complete basis up to length 2, strings up to length 4";
    return err;
  }));

  results.push_back(guarded("identity projection reduction", 1e-10, [&](std::string& d) {
    const Pomdp m = chain_pomdp();
    const StatePolicy pi = StatePolicy::uniform(2, 2);
    const auto episodes = sample_episodes(m, pi, 2000, 6, 7);
    const Dataset data = extract_examples(episodes);
    const Basis basis = complete_basis(m.alphabet(), 2);
    const Wfa plain = recover_wfa(estimate_hankel(data, basis, m.alphabet()), 2);
    const JlProjection pu = JlProjection::explicit_rows(basis.prefixes());
    const JlProjection pv = JlProjection::explicit_rows(basis.suffixes());
    const Wfa comp = recover_wfa_compressed(
        compressed_estimate(data, basis, m.alphabet(), pu, pv), basis, pu, 2);
    double err = 0.0;
    for (const Word& x : enumerate_words(m.alphabet(), 3)) {
      err = std::max(err, std::abs(evaluate(plain, x) - evaluate(comp, x)));
    }
    d = "chain, 2000 sampled episodes, strings up to length 3";
    return err;
  }));
  return results;
}

}  // namespace uqf::cli
