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


#include "uqf/pomdp.h"

#include <cmath>
#include <sstream>

#include "uqf/errors.h"

namespace uqf {
namespace {

std::string fmt(double v) {
  std::ostringstream os;
  os.precision(12);
  os << v;
  return os.str();
}

std::string index_path(const char* name, std::initializer_list<int> idx,
                       bool trailing_colon) {
  std::string out = std::string(name) + "[";
  bool first = true;
  for (int i : idx) {
    if (!first) out += ",";
    out += std::to_string(i);
    first = false;
  }
  if (trailing_colon) out += first ? ":" : ",:";
  return out + "]";
}

// Checks non-negativity and unit sum of a probability row.
void check_distribution(const Eigen::Ref<const Eigen::RowVectorXd>& row,
                        const std::string& path, ValidationReport& report) {
  for (Eigen::Index j = 0; j < row.size(); ++j) {
    if (!std::isfinite(row[j]) || row[j] < 0.0) {
      report.push_back({path, "entry " + std::to_string(j) + " is " +
                                  fmt(row[j]) + ", must be >= 0"});
    }
  }
  const double sum = row.sum();
  if (!(std::abs(sum - 1.0) <= kStochasticTolerance)) {
    report.push_back({path, "row sums to " + fmt(sum)});
  }
}

void throw_report(const char* what, const ValidationReport& report) {
  std::string msg = std::string(what) + " is invalid:";
  for (const auto& v : report) msg += " " + v.path + ": " + v.message + ";";
  throw InvalidModelError(msg);
}

}  // namespace

StatePolicy StatePolicy::uniform(int num_states, int num_actions) {
  return {Eigen::MatrixXd::Constant(num_states, num_actions,
                                    1.0 / num_actions)};
}

StatePolicy StatePolicy::deterministic(std::span<const int> actions,
                                       int num_actions) {
  StatePolicy p{Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(actions.size()),
                                      num_actions)};
  for (std::size_t s = 0; s < actions.size(); ++s) {
    p.probs(static_cast<Eigen::Index>(s), actions[s]) = 1.0;
  }
  return p;
}

ValidationReport validate(const Pomdp& m) {
  ValidationReport report;
  if (m.num_states < 1) report.push_back({"num_states", "must be >= 1"});
  if (m.num_actions < 1) report.push_back({"num_actions", "must be >= 1"});
  if (m.num_obs < 1) report.push_back({"num_obs", "must be >= 1"});
  if (!report.empty()) return report;

  const int k = m.num_states;
  if (static_cast<int>(m.transition.size()) != m.num_actions) {
    report.push_back({"T", "expected one matrix per action"});
  } else {
    for (int a = 0; a < m.num_actions; ++a) {
      const auto& t = m.transition[static_cast<std::size_t>(a)];
      if (t.rows() != k || t.cols() != k) {
        report.push_back({index_path("T", {}, true), "action " +
                                                         std::to_string(a) +
                                                         " block has wrong shape"});
        continue;
      }
      for (int s = 0; s < k; ++s) {
        check_distribution(t.row(s), index_path("T", {s, a}, true), report);
      }
    }
  }
  if (static_cast<int>(m.emission.size()) != m.num_actions) {
    report.push_back({"Z", "expected one matrix per action"});
  } else {
    for (int a = 0; a < m.num_actions; ++a) {
      const auto& z = m.emission[static_cast<std::size_t>(a)];
      if (z.rows() != k || z.cols() != m.num_obs) {
        report.push_back({"Z", "action " + std::to_string(a) +
                                   " block has wrong shape"});
        continue;
      }
      for (int s = 0; s < k; ++s) {
        check_distribution(z.row(s), index_path("Z", {s, a}, true), report);
      }
    }
  }
  if (m.reward.rows() != k || m.reward.cols() != m.num_actions) {
    report.push_back({"R", "expected shape [num_states x num_actions]"});
  } else if (!m.reward.allFinite()) {
    report.push_back({"R", "non-finite entries"});
  }
  if (m.initial.size() != k) {
    report.push_back({"mu", "expected length num_states"});
  } else {
    check_distribution(m.initial.transpose(), "mu", report);
  }
  if (!(m.gamma >= 0.0 && m.gamma < 1.0)) {
    report.push_back({"gamma", "is " + fmt(m.gamma) + ", must be in [0,1)"});
  }
  return report;
}

ValidationReport validate(const StatePolicy& policy, const Pomdp& model) {
  ValidationReport report;
  if (policy.probs.rows() != model.num_states ||
      policy.probs.cols() != model.num_actions) {
    report.push_back({"pi", "expected shape [num_states x num_actions]"});
    return report;
  }
  for (int s = 0; s < model.num_states; ++s) {
    check_distribution(policy.probs.row(s), index_path("pi", {s}, true),
                       report);
  }
  return report;
}

void require_valid(const Pomdp& model) {
  if (auto r = validate(model); !r.empty()) throw_report("model", r);
}

void require_valid(const StatePolicy& policy, const Pomdp& model) {
  if (auto r = validate(policy, model); !r.empty()) throw_report("policy", r);
}

Word Episode::word() const {
  Word w;
  w.reserve(steps.size());
  for (const Step& s : steps) w.push_back(s.symbol);
  return w;
}

int sample_index(const Eigen::Ref<const Eigen::VectorXd>& probs,
                 std::mt19937_64& rng) {
  const double u = uniform01(rng);
  double acc = 0.0;
  const Eigen::Index n = probs.size();
  for (Eigen::Index i = 0; i < n; ++i) {
    acc += probs[i];
    if (u < acc) return static_cast<int>(i);
  }
  // Rounding left u above the final partial sum; take the last positive entry.
  for (Eigen::Index i = n - 1; i >= 0; --i) {
    if (probs[i] > 0.0) return static_cast<int>(i);
  }
  return static_cast<int>(n - 1);
}

int StatePolicyController::act(int true_state, std::mt19937_64& rng) {
  return sample_index(policy_.probs.row(true_state).transpose(), rng);
}

Episode simulate_episode(const Pomdp& model, Controller& controller,
                         const SimulationOptions& options,
                         std::uint64_t episode_seed) {
  std::mt19937_64 rng(episode_seed);
  Episode ep;
  ep.seed = episode_seed;
  ep.steps.reserve(static_cast<std::size_t>(options.length));
  controller.reset();
  int s = sample_index(model.initial, rng);
  ep.initial_state = s;
  for (int t = 0; t < options.length; ++t) {
    if (options.terminal_state && s == *options.terminal_state) break;
    const int a = controller.act(s, rng);
    const auto& t_a = model.transition[static_cast<std::size_t>(a)];
    const int next = sample_index(t_a.row(s).transpose(), rng);
    const auto& z_a = model.emission[static_cast<std::size_t>(a)];
    const int o = sample_index(z_a.row(next).transpose(), rng);
    const Symbol sym{a, o};
    ep.steps.push_back({sym, model.reward(s, a), next});
    controller.observe(sym);
    s = next;
  }
  return ep;
}

std::vector<Episode> simulate(const Pomdp& model, Controller& controller,
                              int count, const SimulationOptions& options,
                              std::uint64_t seed) {
  require_valid(model);
  if (options.length < 1) throw InvalidModelError("episode length must be >= 1");
  std::vector<Episode> out;
  out.reserve(static_cast<std::size_t>(std::max(count, 0)));
  for (int i = 0; i < count; ++i) {
    out.push_back(simulate_episode(model, controller, options,
                                   derive_seed(seed, static_cast<std::uint64_t>(i))));
  }
  return out;
}

std::vector<Episode> sample_episodes(const Pomdp& model,
                                     const StatePolicy& policy, int count,
                                     int length, std::uint64_t seed) {
  require_valid(policy, model);
  StatePolicyController controller(policy);
  return simulate(model, controller, count, {.length = length, .terminal_state = std::nullopt}, seed);
}

namespace {

Eigen::MatrixXd forward_operator(const Pomdp& m, const StatePolicy& pi,
                                 Symbol s) {
  const auto a = static_cast<std::size_t>(s.action);
  return pi.probs.col(s.action).asDiagonal() * m.transition[a] *
         m.emission[a].col(s.observation).asDiagonal();
}

std::vector<Eigen::MatrixXd> forward_operators(const Pomdp& m,
                                               const StatePolicy& pi) {
  std::vector<Eigen::MatrixXd> ops;
  const Alphabet alphabet = m.alphabet();
  ops.reserve(static_cast<std::size_t>(alphabet.size()));
  for (int id = 0; id < alphabet.size(); ++id) {
    ops.push_back(forward_operator(m, pi, alphabet.symbol(id)));
  }
  return ops;
}

}  // namespace

Eigen::VectorXd belief_forward(const Pomdp& model, const StatePolicy& policy,
                               std::span<const Symbol> history) {
  Eigen::RowVectorXd b = model.initial.transpose();
  const Alphabet alphabet = model.alphabet();
  for (const Symbol& s : history) {
    if (!alphabet.contains(s)) {
      throw SymbolOutOfRangeError("belief_forward: symbol outside alphabet");
    }
    b = b * forward_operator(model, policy, s);
  }
  return b.transpose();
}

Wfa exact_wfa(const Pomdp& model, const StatePolicy& policy) {
  require_valid(model);
  require_valid(policy, model);
  // q = vec(diag(Pi R^T)): expected immediate reward per state.
  Eigen::VectorXd q = (policy.probs.array() * model.reward.array()).rowwise().sum();
  return Wfa(model.alphabet(), model.initial, forward_operators(model, policy),
             std::move(q));
}

Wfa probability_wfa(const Pomdp& model, const StatePolicy& policy) {
  require_valid(model);
  require_valid(policy, model);
  return Wfa(model.alphabet(), model.initial, forward_operators(model, policy),
             Eigen::VectorXd::Ones(model.num_states));
}

namespace {

Eigen::MatrixXd action_values(const Pomdp& m, const Eigen::VectorXd& v) {
  Eigen::MatrixXd q(m.num_states, m.num_actions);
  for (int a = 0; a < m.num_actions; ++a) {
    q.col(a) = m.reward.col(a) +
               m.gamma * m.transition[static_cast<std::size_t>(a)] * v;
  }
  return q;
}

}  // namespace

MdpSolution mdp_optimal(const Pomdp& model) {
  require_valid(model);
  MdpSolution sol;
  sol.values = Eigen::VectorXd::Zero(model.num_states);
  for (;;) {
    const Eigen::VectorXd next = action_values(model, sol.values).rowwise().maxCoeff();
    const double change = (next - sol.values).cwiseAbs().maxCoeff();
    sol.values = next;
    ++sol.iterations;
    if (change < kValueIterationTolerance) break;
  }
  const Eigen::MatrixXd q = action_values(model, sol.values);
  sol.policy.resize(static_cast<std::size_t>(model.num_states));
  for (int s = 0; s < model.num_states; ++s) {
    int best = 0;
    for (int a = 1; a < model.num_actions; ++a) {
      // A relative slack keeps fixed-point round-off from breaking ties.
      if (q(s, a) > q(s, best) + 1e-12 * std::max(1.0, std::abs(q(s, best)))) {
        best = a;
      }
    }
    sol.policy[static_cast<std::size_t>(s)] = best;
  }
  return sol;
}

double bellman_residual(const Pomdp& model, const Eigen::VectorXd& values) {
  const Eigen::VectorXd backed = action_values(model, values).rowwise().maxCoeff();
  return (backed - values).cwiseAbs().maxCoeff();
}

}  // namespace uqf
