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


#include "uqf/wfa.h"

#include <cmath>
#include <stdexcept>
#include <string>

#include <Eigen/Eigenvalues>

#include "uqf/errors.h"

namespace uqf {

Wfa::Wfa(Alphabet alphabet, Eigen::VectorXd alpha,
         std::vector<Eigen::MatrixXd> transitions, Eigen::VectorXd omega)
    : alphabet_(alphabet),
      alpha_(std::move(alpha)),
      transitions_(std::move(transitions)),
      omega_(std::move(omega)) {
  const Eigen::Index n = alpha_.size();
  if (n == 0) throw InvalidModelError("wfa: zero states");
  if (omega_.size() != n) throw InvalidModelError("wfa: omega size mismatch");
  if (static_cast<int>(transitions_.size()) != alphabet_.size()) {
    throw InvalidModelError("wfa: expected " +
                            std::to_string(alphabet_.size()) +
                            " transition matrices, got " +
                            std::to_string(transitions_.size()));
  }
  if (!alpha_.allFinite() || !omega_.allFinite()) {
    throw InvalidModelError("wfa: non-finite alpha or omega");
  }
  for (std::size_t i = 0; i < transitions_.size(); ++i) {
    const auto& m = transitions_[i];
    if (m.rows() != n || m.cols() != n) {
      throw InvalidModelError("wfa: transition " + std::to_string(i) +
                              " is not " + std::to_string(n) + "x" +
                              std::to_string(n));
    }
    if (!m.allFinite()) {
      throw InvalidModelError("wfa: transition " + std::to_string(i) +
                              " has non-finite entries");
    }
  }
}

const Eigen::MatrixXd& Wfa::transition(Symbol s) const {
  if (!alphabet_.contains(s)) {
    throw SymbolOutOfRangeError("symbol " + to_string(Word{s}) +
                                " outside alphabet");
  }
  return transitions_[static_cast<std::size_t>(alphabet_.id(s))];
}

Wfa Wfa::with_omega(Eigen::VectorXd omega) const {
  return Wfa(alphabet_, alpha_, transitions_, std::move(omega));
}

ForwardState ForwardState::initial(const Wfa& wfa) {
  return {wfa.alpha(), 0};
}

ForwardState step(const ForwardState& state, const Wfa& wfa, Symbol symbol) {
  const Eigen::MatrixXd& m = wfa.transition(symbol);
  return {(state.vector.transpose() * m).transpose(), state.history_len + 1};
}

double evaluate(const Wfa& wfa, std::span<const Symbol> word) {
  ForwardState state = ForwardState::initial(wfa);
  for (const Symbol& s : word) state = step(state, wfa, s);
  return state.vector.dot(wfa.omega());
}

Eigen::MatrixXd symbol_sum(const Wfa& wfa) {
  const int n = wfa.num_states();
  Eigen::MatrixXd sum = Eigen::MatrixXd::Zero(n, n);
  for (const auto& m : wfa.transitions()) sum += m;
  return sum;
}

double spectral_radius(const Eigen::MatrixXd& m) {
  if (m.rows() != m.cols()) {
    throw std::invalid_argument("spectral_radius: matrix is not square");
  }
  if (m.size() == 0) return 0.0;
  Eigen::EigenSolver<Eigen::MatrixXd> solver(m, /*computeEigenvectors=*/false);
  if (solver.info() != Eigen::Success) {
    throw std::runtime_error("spectral_radius: eigensolver did not converge");
  }
  return solver.eigenvalues().cwiseAbs().maxCoeff();
}

Wfa to_uqf(const Wfa& b, double gamma) {
  const int n = b.num_states();
  const Eigen::MatrixXd scaled = gamma * symbol_sum(b);
  const double rho = spectral_radius(scaled);
  if (!(rho < 1.0 - kSpectralRadiusMargin)) {
    throw SpectralRadiusTooLargeError(rho, gamma);
  }
  const Eigen::MatrixXd system = Eigen::MatrixXd::Identity(n, n) - scaled;
  Eigen::PartialPivLU<Eigen::MatrixXd> lu(system);
  Eigen::VectorXd omega = lu.solve(b.omega());
  const double residual = (system * omega - b.omega()).norm();
  if (!omega.allFinite() || residual > 1e-10 * std::max(1.0, b.omega().norm())) {
    throw SingularSystemError("to_uqf: linear solve residual " +
                              std::to_string(residual));
  }
  return b.with_omega(std::move(omega));
}

Eigen::VectorXd action_scores(
    const Wfa& uqf, const ForwardState& state,
    const std::function<double(int)>& sampling_prob) {
  const Alphabet& alphabet = uqf.alphabet();
  Eigen::VectorXd scores(alphabet.num_actions);
  for (int a = 0; a < alphabet.num_actions; ++a) {
    const double p = sampling_prob(a);
    if (!(p >= kMinSamplingProbability)) {
      throw ZeroSamplingProbabilityError(
          "sampling probability of action " + std::to_string(a) + " is " +
          std::to_string(p));
    }
    double total = 0.0;
    for (int o = 0; o < alphabet.num_obs; ++o) {
      total += state.vector.dot(uqf.transition({a, o}) * uqf.omega());
    }
    scores[a] = total / p;
  }
  return scores;
}

}  // namespace uqf
