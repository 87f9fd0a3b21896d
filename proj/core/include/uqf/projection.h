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


#ifndef UQF_PROJECTION_H_
#define UQF_PROJECTION_H_

#include <cstdint>
#include <memory>
#include <unordered_map>
#include <vector>

#include <Eigen/Dense>

#include "uqf/spectral.h"
#include "uqf/symbol.h"
#include "uqf/wfa.h"

namespace uqf {

// Row map phi: word -> R^d for a random projection of a Hankel index set.
//
// Gaussian projections never materialize the full matrix.  The row of a word
// is generated on demand from
//   row_id = sequence_hash(word)
//   stream = mix64(seed ^ row_id)
// by Box-Muller on consecutive SplitMix64 outputs of `stream`, scaled by
// 1/sqrt(d).  sequence_hash folds each symbol as
//   h = mix64(h ^ ((action + 1) << 32 | (observation + 1)))
// from h = 0x6a09e667f3bcc909 and finishes with mix64(h ^ length), so rows
// are identical across runs and platforms.
class JlProjection {
 public:
  static JlProjection gaussian(int d, std::uint64_t seed);
  // Explicit one-hot rows: words[i] -> e_i in R^{words.size()}.
  static JlProjection explicit_rows(const std::vector<Word>& words);

  int dim() const { return dim_; }
  std::uint64_t seed() const { return seed_; }
  bool is_gaussian() const { return explicit_index_ == nullptr; }

  std::uint64_t row_id(const Word& w) const;
  // Throws std::out_of_range for a word missing from an explicit projection.
  Eigen::VectorXd row(const Word& w) const;
  // Stacks row(w) for each word: [words.size() x d].
  Eigen::MatrixXd materialize(const std::vector<Word>& words) const;

  static std::uint64_t sequence_hash(const Word& w);

 private:
  JlProjection(int dim, std::uint64_t seed,
               std::shared_ptr<const std::unordered_map<Word, int, WordHash>> index)
      : dim_(dim), seed_(seed), explicit_index_(std::move(index)) {}

  int dim_;
  std::uint64_t seed_;
  std::shared_ptr<const std::unordered_map<Word, int, WordHash>> explicit_index_;
};

// Gaussian projection with N(0, 1/d) entries.  `universe_hint` is the
// expected number of distinct rows and only sizes internal caches.
JlProjection make_projection(int universe_hint, int d, std::uint64_t seed);

// Phi_U^T H Phi_V and friends, accumulated in one pass over the examples.
struct CompressedSketch {
  Alphabet alphabet;
  Eigen::VectorXd c_u;                  // sum y phi_U(prefix), d_U
  Eigen::MatrixXd c_uv;                 // d_U x d_V
  std::vector<Eigen::MatrixXd> c_sigma;  // d_U x d_V, by symbol id
};

// Every split of an example's prefix into (u, v) or (u, sigma, v) with u in
// U and v in V adds y * phi_U(u) phi_V(v)^T to C_UV or C_sigma; a prefix that
// is itself in U adds y * phi_U(prefix) to c_U.  Each example is weighted by
// 1 / count_by_length[|prefix|], the estimate_hankel normalization.
CompressedSketch compressed_estimate(const Dataset& data, const Basis& basis,
                                     const Alphabet& alphabet,
                                     const JlProjection& proj_u,
                                     const JlProjection& proj_v);

// From C_UV ~ U D V^T:
//   alpha = e^T U D with Phi_U e = e_lambda (least squares over the
//           materialized prefix rows),
//   omega = D^-1 U^T c_U,
//   B_sigma = D^-1 U^T C_sigma V.
// Throws RankDeficientError as recover_wfa does.
Wfa recover_wfa_compressed(const CompressedSketch& sketch, const Basis& basis,
                           const JlProjection& proj_u, int k);

// The e-vector used by recover_wfa_compressed.
Eigen::VectorXd lambda_selector(const Basis& basis, const JlProjection& proj_u);

}  // namespace uqf

#endif  // UQF_PROJECTION_H_
