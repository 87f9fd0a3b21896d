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


#include "uqf/oracles.h"

#include <cmath>
#include <vector>

#include "uqf/errors.h"

namespace uqf {
namespace {

void check_budget(double paths, const char* who) {
  if (paths > kEnumerationBudget) {
    throw EnumerationLimitError(std::string(who) + ": " +
                                std::to_string(paths) +
                                " paths exceed the enumeration budget");
  }
}

void check_symbols(const Pomdp& m, std::span<const Symbol> history) {
  const Alphabet alphabet = m.alphabet();
  for (const Symbol& s : history) {
    if (!alphabet.contains(s)) {
      throw SymbolOutOfRangeError("oracle: symbol outside alphabet");
    }
  }
}

// Depth-first walk over s_1 .. s_{n+1}, accumulating path weight.
void enumerate_paths(const Pomdp& m, const StatePolicy& pi,
                     std::span<const Symbol> history, std::size_t t, int state,
                     double weight, Eigen::VectorXd& joint) {
  if (t == history.size()) {
    joint[state] += weight;
    return;
  }
  const Symbol sym = history[t];
  const auto a = static_cast<std::size_t>(sym.action);
  const double p_act = pi.probs(state, sym.action);
  if (p_act == 0.0) return;
  for (int next = 0; next < m.num_states; ++next) {
    const double w = weight * p_act * m.transition[a](state, next) *
                     m.emission[a](next, sym.observation);
    if (w == 0.0) continue;
    enumerate_paths(m, pi, history, t + 1, next, w, joint);
  }
}

Eigen::VectorXd expected_reward(const Pomdp& m, const StatePolicy& pi) {
  Eigen::VectorXd q(m.num_states);
  for (int s = 0; s < m.num_states; ++s) {
    double r = 0.0;
    for (int a = 0; a < m.num_actions; ++a) r += pi.probs(s, a) * m.reward(s, a);
    q[s] = r;
  }
  return q;
}

}  // namespace

Eigen::VectorXd oracle_joint(const Pomdp& model, const StatePolicy& policy,
                             std::span<const Symbol> history) {
  check_symbols(model, history);
  check_budget(std::pow(static_cast<double>(model.num_states),
                        static_cast<double>(history.size() + 1)),
               "oracle_joint");
  Eigen::VectorXd joint = Eigen::VectorXd::Zero(model.num_states);
  for (int s = 0; s < model.num_states; ++s) {
    if (model.initial[s] == 0.0) continue;
    enumerate_paths(model, policy, history, 0, s, model.initial[s], joint);
  }
  return joint;
}

double oracle_probability(const Pomdp& model, const StatePolicy& policy,
                          std::span<const Symbol> history) {
  return oracle_joint(model, policy, history).sum();
}

double oracle_g(const Pomdp& model, const StatePolicy& policy,
                std::span<const Symbol> history) {
  return oracle_joint(model, policy, history).dot(expected_reward(model, policy));
}

double oracle_v_tilde(const Pomdp& model, const StatePolicy& policy,
                      std::span<const Symbol> history, double gamma,
                      int horizon) {
  const Eigen::VectorXd joint = oracle_joint(model, policy, history);
  // Policy-averaged transition matrix: P(s' | s) = sum_a pi[s,a] T[s,a,s'].
  Eigen::MatrixXd averaged = Eigen::MatrixXd::Zero(model.num_states, model.num_states);
  for (int a = 0; a < model.num_actions; ++a) {
    averaged += policy.probs.col(a).asDiagonal() *
                model.transition[static_cast<std::size_t>(a)];
  }
  // Backward recursion: w_j = q + gamma * P w_{j-1}, w_0 = q.
  const Eigen::VectorXd q = expected_reward(model, policy);
  Eigen::VectorXd w = q;
  for (int j = 0; j < horizon; ++j) w = q + gamma * averaged * w;
  return joint.dot(w);
}

double oracle_v_tilde_exhaustive(const Pomdp& model, const StatePolicy& policy,
                                 std::span<const Symbol> history, double gamma,
                                 int horizon) {
  const Alphabet alphabet = model.alphabet();
  const double paths =
      std::pow(static_cast<double>(alphabet.size()), horizon) *
      std::pow(static_cast<double>(model.num_states),
               static_cast<double>(history.size()) + horizon + 1);
  check_budget(paths, "oracle_v_tilde_exhaustive");
  const Word prefix(history.begin(), history.end());
  double total = 0.0;
  double discount = 1.0;
  for (int len = 0; len <= horizon; ++len) {
    double layer = 0.0;
    for (const Word& z : words_of_length(alphabet, len)) {
      layer += oracle_g(model, policy, concat(prefix, z));
    }
    total += discount * layer;
    discount *= gamma;
  }
  return total;
}

double oracle_sampling_probability(const Pomdp& model,
                                   const StatePolicy& policy,
                                   std::span<const Symbol> history,
                                   int action) {
  const Eigen::VectorXd joint = oracle_joint(model, policy, history);
  const double p = joint.sum();
  if (p <= 0.0) return 0.0;
  return joint.dot(policy.probs.col(action)) / p;
}

double oracle_q(const Pomdp& model, const StatePolicy& policy,
                std::span<const Symbol> history, int action, double gamma,
                int horizon) {
  const double pi = oracle_sampling_probability(model, policy, history, action);
  if (!(pi >= 1e-12)) {
    throw ZeroSamplingProbabilityError("oracle_q: Pi(a|h) is " +
                                       std::to_string(pi));
  }
  const Word prefix(history.begin(), history.end());
  double total = 0.0;
  for (int o = 0; o < model.num_obs; ++o) {
    Word h = prefix;
    h.push_back({action, o});
    total += oracle_v_tilde(model, policy, h, gamma, horizon);
  }
  return total / pi;
}

}  // namespace uqf
