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


#ifndef UQF_ORACLES_H_
#define UQF_ORACLES_H_

// Brute-force reference computations.  Nothing here touches the WFA code
// path: quantities are obtained by enumerating hidden-state sequences.

#include <cstdint>
#include <span>

#include <Eigen/Dense>

#include "uqf/pomdp.h"
#include "uqf/symbol.h"

namespace uqf {

// Upper bound on enumerated hidden-state paths, k^(|history|+1).
inline constexpr double kEnumerationBudget = 1e7;

// [P(S_{n+1} = s, history)]_s by summing over all k^(n+1) state paths.
// Throws EnumerationLimitError beyond the budget.
Eigen::VectorXd oracle_joint(const Pomdp& model, const StatePolicy& policy,
                             std::span<const Symbol> history);

// P(history) under the state-level policy.
double oracle_probability(const Pomdp& model, const StatePolicy& policy,
                          std::span<const Symbol> history);

// g(h) = sum over state paths of P(states, h) * sum_a pi[s_last,a] R[s_last,a].
double oracle_g(const Pomdp& model, const StatePolicy& policy,
                std::span<const Symbol> history);

// Truncated series sum_{|z| <= horizon} gamma^|z| g(hz).
//
// The suffix sum is taken state-wise: observations of z marginalize out, so
// sum_{|z|=j} g(hz) = joint(h)^T P_pi^j q with P_pi the policy-averaged
// transition matrix.  The joint comes from path enumeration.  The omitted
// tail satisfies |tail| <= gamma^(horizon+1) * R_max / (1 - gamma) times
// P(h).
double oracle_v_tilde(const Pomdp& model, const StatePolicy& policy,
                      std::span<const Symbol> history, double gamma,
                      int horizon);

// Same series by literally enumerating every suffix z and calling oracle_g.
// Guarded by |Sigma|^horizon * k^(|h|+horizon+1) <= budget.
double oracle_v_tilde_exhaustive(const Pomdp& model, const StatePolicy& policy,
                                 std::span<const Symbol> history, double gamma,
                                 int horizon);

// Pi(a | h) = sum_s P(s | h) pi[s, a].  Zero when P(h) = 0.
double oracle_sampling_probability(const Pomdp& model,
                                   const StatePolicy& policy,
                                   std::span<const Symbol> history, int action);

// Unnormalized action value sum_o V~(h a o) / Pi(a | h).
// Throws ZeroSamplingProbabilityError if Pi(a | h) < 1e-12.
double oracle_q(const Pomdp& model, const StatePolicy& policy,
                std::span<const Symbol> history, int action, double gamma,
                int horizon);

}  // namespace uqf

#endif  // UQF_ORACLES_H_
