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


#ifndef UQF_WFA_H_
#define UQF_WFA_H_

#include <functional>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "uqf/symbol.h"

namespace uqf {

// Weighted finite automaton <alpha, {A_sigma}, omega> over A x O computing
// f(x) = alpha^T A_{x1} ... A_{xn} omega.  Immutable after construction.
class Wfa {
 public:
  // Throws InvalidModelError on a shape mismatch or non-finite entry.
  Wfa(Alphabet alphabet, Eigen::VectorXd alpha,
      std::vector<Eigen::MatrixXd> transitions, Eigen::VectorXd omega);

  int num_states() const { return static_cast<int>(alpha_.size()); }
  const Alphabet& alphabet() const { return alphabet_; }
  const Eigen::VectorXd& alpha() const { return alpha_; }
  const Eigen::VectorXd& omega() const { return omega_; }
  // Throws SymbolOutOfRangeError.
  const Eigen::MatrixXd& transition(Symbol s) const;
  const std::vector<Eigen::MatrixXd>& transitions() const {
    return transitions_;
  }

  // Same automaton with a different terminal vector.
  Wfa with_omega(Eigen::VectorXd omega) const;

 private:
  Alphabet alphabet_;
  Eigen::VectorXd alpha_;
  std::vector<Eigen::MatrixXd> transitions_;  // indexed by symbol id
  Eigen::VectorXd omega_;
};

// Row vector alpha^T A_h carried along a history.
struct ForwardState {
  Eigen::VectorXd vector;
  int history_len = 0;

  static ForwardState initial(const Wfa& wfa);
};

double evaluate(const Wfa& wfa, std::span<const Symbol> word);

ForwardState step(const ForwardState& state, const Wfa& wfa, Symbol symbol);

// Sum of all transition matrices.
Eigen::MatrixXd symbol_sum(const Wfa& wfa);

// Largest eigenvalue modulus, computed from a full eigendecomposition.
// Throws std::invalid_argument for non-square input.
double spectral_radius(const Eigen::MatrixXd& m);

inline constexpr double kSpectralRadiusMargin = 1e-9;

// Converts a WFA computing g into one computing sum_z gamma^|z| g(hz): the
// terminal vector becomes (I - gamma * sum_sigma B_sigma)^{-1} tau, obtained
// by an LU solve.  Throws SpectralRadiusTooLargeError when
// rho(gamma * sum B) >= 1 - kSpectralRadiusMargin, SingularSystemError when
// the solve fails its residual check.
Wfa to_uqf(const Wfa& b, double gamma);

inline constexpr double kMinSamplingProbability = 1e-12;

// score[a] = (sum_o state^T A_{(a,o)} omega) / sampling_prob(a).
// Throws ZeroSamplingProbabilityError if any sampling_prob(a) < 1e-12.
Eigen::VectorXd action_scores(
    const Wfa& uqf, const ForwardState& state,
    const std::function<double(int)>& sampling_prob);

}  // namespace uqf

#endif  // UQF_WFA_H_
