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


#ifndef UQF_SPECTRAL_H_
#define UQF_SPECTRAL_H_

#include <cstdint>
#include <limits>
#include <map>
#include <optional>
#include <span>
#include <unordered_map>
#include <vector>

#include <Eigen/Dense>

#include "uqf/pomdp.h"
#include "uqf/symbol.h"
#include "uqf/wfa.h"

namespace uqf {

struct LabeledExample {
  Word prefix;
  double label = 0.0;  // reward of the step right after `prefix`
};

struct Dataset {
  std::vector<LabeledExample> examples;
  std::map<int, long> count_by_length;

  void add(LabeledExample example);
};

// One example per prefix length t = 0 .. L-1 of every episode, labelled with
// the reward of step t+1.  Prefixes longer than `max_prefix_len` are neither
// stored nor counted.
Dataset extract_examples(
    std::span<const Episode> episodes,
    int max_prefix_len = std::numeric_limits<int>::max());

// Hankel basis.  Both lists start with the empty word.
class Basis {
 public:
  Basis(std::vector<Word> prefixes, std::vector<Word> suffixes);

  const std::vector<Word>& prefixes() const { return prefixes_; }
  const std::vector<Word>& suffixes() const { return suffixes_; }
  std::optional<int> prefix_index(const Word& w) const;
  std::optional<int> suffix_index(const Word& w) const;
  int max_prefix_len() const { return max_prefix_len_; }
  int max_suffix_len() const { return max_suffix_len_; }

 private:
  std::vector<Word> prefixes_;
  std::vector<Word> suffixes_;
  std::unordered_map<Word, int, WordHash> prefix_index_;
  std::unordered_map<Word, int, WordHash> suffix_index_;
  int max_prefix_len_ = 0;
  int max_suffix_len_ = 0;
};

// Every word up to the given lengths on both sides.
Basis complete_basis(const Alphabet& alphabet, int max_len);

// lambda first, then the most frequent prefixes (resp. suffixes) of example
// strings with length in [1, max_len]; ties go to the lexicographically
// smaller word.
Basis select_basis(const Dataset& data, int max_prefixes, int max_suffixes,
                   int max_len);

struct HankelEstimate {
  Alphabet alphabet;
  Eigen::MatrixXd h_lambda;            // g(u_i v_j)
  std::vector<Eigen::MatrixXd> h_sigma;  // g(u_i sigma v_j), by symbol id
};

// Cell value: sum of labels of examples whose prefix equals the cell's
// string, divided by count_by_length of that string's length.
HankelEstimate estimate_hankel(const Dataset& data, const Basis& basis,
                               const Alphabet& alphabet);

inline constexpr double kRelativeSingularThreshold = 1e-12;

struct TruncatedSvd {
  Eigen::MatrixXd u;  // rows x k
  Eigen::VectorXd d;  // k, nonincreasing
  Eigen::MatrixXd v;  // cols x k
  Eigen::VectorXd spectrum;  // every singular value of the input
  // Number of the k retained values above kRelativeSingularThreshold * d[0].
  int effective_rank = 0;
};

// Throws std::invalid_argument if k > min(rows, cols) or k < 1.
TruncatedSvd truncated_svd(const Eigen::MatrixXd& m, int k);

// Spectral recovery from H_lambda ~ U D V^T:
//   alpha = row_lambda(U D), omega = row_lambda(V), B_sigma = D^-1 U^T H_sigma V.
// Throws RankDeficientError if fewer than k singular values survive the
// relative threshold.
Wfa recover_wfa(const HankelEstimate& hankel, int k);

struct BasisConfig {
  int max_prefixes = 100;
  int max_suffixes = 100;
  int max_len = 3;
};

struct CompressionConfig {
  bool enabled = false;
  int d_u = 32;
  int d_v = 32;
  std::uint64_t seed = 0;
};

struct LearnConfig {
  BasisConfig basis;
  int rank = 8;
  double gamma = 0.9;
  CompressionConfig compressed;
};

struct LearnReport {
  std::vector<double> singular_values;
  double spectral_radius = 0.0;  // rho(gamma * sum B_sigma)
  int num_prefixes = 0;
  int num_suffixes = 0;
  int rank_used = 0;
  long num_examples = 0;
  bool compressed = false;
};

struct LearnResult {
  Wfa reward_wfa;  // computes g
  Wfa uqf;         // computes V~
  LearnReport report;
};

// extract_examples -> select_basis -> estimate (plain or sketched) ->
// recover -> to_uqf.  Stage errors propagate; a RankDeficientError already
// carries the singular values.
LearnResult learn_uqf(std::span<const Episode> episodes,
                      const Alphabet& alphabet, const LearnConfig& config);

}  // namespace uqf

#endif  // UQF_SPECTRAL_H_
