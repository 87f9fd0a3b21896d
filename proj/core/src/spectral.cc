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


#include "uqf/spectral.h"

#include <algorithm>
#include <stdexcept>
#include <string>

#include <Eigen/SVD>

#include "uqf/errors.h"
#include "uqf/projection.h"

namespace uqf {

void Dataset::add(LabeledExample example) {
  ++count_by_length[static_cast<int>(example.prefix.size())];
  examples.push_back(std::move(example));
}

Dataset extract_examples(std::span<const Episode> episodes,
                         int max_prefix_len) {
  Dataset data;
  for (const Episode& ep : episodes) {
    Word prefix;
    const int limit =
        std::min(static_cast<int>(ep.steps.size()) - 1, max_prefix_len);
    for (int t = 0; t <= limit; ++t) {
      data.add({prefix, ep.steps[static_cast<std::size_t>(t)].reward});
      prefix.push_back(ep.steps[static_cast<std::size_t>(t)].symbol);
    }
  }
  return data;
}

namespace {

std::unordered_map<Word, int, WordHash> build_index(
    const std::vector<Word>& words, const char* side) {
  std::unordered_map<Word, int, WordHash> index;
  for (std::size_t i = 0; i < words.size(); ++i) {
    if (!index.emplace(words[i], static_cast<int>(i)).second) {
      throw std::invalid_argument(std::string("basis: duplicate ") + side +
                                  " " + to_string(words[i]));
    }
  }
  return index;
}

int max_len_of(const std::vector<Word>& words) {
  std::size_t m = 0;
  for (const Word& w : words) m = std::max(m, w.size());
  return static_cast<int>(m);
}

std::vector<Word> most_frequent(
    const std::unordered_map<Word, long, WordHash>& counts, int limit) {
  std::vector<std::pair<Word, long>> ranked(counts.begin(), counts.end());
  std::sort(ranked.begin(), ranked.end(), [](const auto& x, const auto& y) {
    if (x.second != y.second) return x.second > y.second;
    return x.first < y.first;
  });
  std::vector<Word> out{Word{}};
  for (const auto& [w, c] : ranked) {
    if (static_cast<int>(out.size()) >= limit) break;
    out.push_back(w);
  }
  return out;
}

}  // namespace

Basis::Basis(std::vector<Word> prefixes, std::vector<Word> suffixes)
    : prefixes_(std::move(prefixes)), suffixes_(std::move(suffixes)) {
  if (prefixes_.empty() || !prefixes_.front().empty() || suffixes_.empty() ||
      !suffixes_.front().empty()) {
    throw std::invalid_argument("basis: the empty word must come first");
  }
  prefix_index_ = build_index(prefixes_, "prefix");
  suffix_index_ = build_index(suffixes_, "suffix");
  max_prefix_len_ = max_len_of(prefixes_);
  max_suffix_len_ = max_len_of(suffixes_);
}

std::optional<int> Basis::prefix_index(const Word& w) const {
  if (static_cast<int>(w.size()) > max_prefix_len_) return std::nullopt;
  auto it = prefix_index_.find(w);
  if (it == prefix_index_.end()) return std::nullopt;
  return it->second;
}

std::optional<int> Basis::suffix_index(const Word& w) const {
  if (static_cast<int>(w.size()) > max_suffix_len_) return std::nullopt;
  auto it = suffix_index_.find(w);
  if (it == suffix_index_.end()) return std::nullopt;
  return it->second;
}

Basis complete_basis(const Alphabet& alphabet, int max_len) {
  return Basis(enumerate_words(alphabet, max_len),
               enumerate_words(alphabet, max_len));
}

Basis select_basis(const Dataset& data, int max_prefixes, int max_suffixes,
                   int max_len) {
  if (max_prefixes < 1 || max_suffixes < 1 || max_len < 0) {
    throw std::invalid_argument("select_basis: limits must be >= 1");
  }
  std::unordered_map<Word, long, WordHash> prefix_counts;
  std::unordered_map<Word, long, WordHash> suffix_counts;
  for (const LabeledExample& ex : data.examples) {
    const Word& p = ex.prefix;
    const int n = static_cast<int>(p.size());
    for (int len = 1; len <= std::min(n, max_len); ++len) {
      ++prefix_counts[Word(p.begin(), p.begin() + len)];
      ++suffix_counts[Word(p.end() - len, p.end())];
    }
  }
  return Basis(most_frequent(prefix_counts, max_prefixes),
               most_frequent(suffix_counts, max_suffixes));
}

HankelEstimate estimate_hankel(const Dataset& data, const Basis& basis,
                               const Alphabet& alphabet) {
  const auto rows = static_cast<Eigen::Index>(basis.prefixes().size());
  const auto cols = static_cast<Eigen::Index>(basis.suffixes().size());
  HankelEstimate h{alphabet, Eigen::MatrixXd::Zero(rows, cols), {}};
  h.h_sigma.assign(static_cast<std::size_t>(alphabet.size()),
                   Eigen::MatrixXd::Zero(rows, cols));

  const int longest = basis.max_prefix_len() + basis.max_suffix_len() + 1;
  Word u;
  Word v;
  for (const LabeledExample& ex : data.examples) {
    const Word& p = ex.prefix;
    const int n = static_cast<int>(p.size());
    if (n > longest) continue;
    for (int i = 0; i <= n; ++i) {
      u.assign(p.begin(), p.begin() + i);
      const auto ui = basis.prefix_index(u);
      if (!ui) continue;
      v.assign(p.begin() + i, p.end());
      if (const auto vj = basis.suffix_index(v)) {
        h.h_lambda(*ui, *vj) += ex.label;
      }
      if (i < n) {
        const Symbol sigma = p[static_cast<std::size_t>(i)];
        if (!alphabet.contains(sigma)) {
          throw SymbolOutOfRangeError("estimate_hankel: symbol outside alphabet");
        }
        v.assign(p.begin() + i + 1, p.end());
        if (const auto vj = basis.suffix_index(v)) {
          h.h_sigma[static_cast<std::size_t>(alphabet.id(sigma))](*ui, *vj) +=
              ex.label;
        }
      }
    }
  }

  // Per-length normalization of the raw label sums.
  auto normalizer = [&](std::size_t len) {
    auto it = data.count_by_length.find(static_cast<int>(len));
    return it == data.count_by_length.end() || it->second == 0
               ? 0.0
               : static_cast<double>(it->second);
  };
  for (Eigen::Index i = 0; i < rows; ++i) {
    const std::size_t lu = basis.prefixes()[static_cast<std::size_t>(i)].size();
    for (Eigen::Index j = 0; j < cols; ++j) {
      const std::size_t lv = basis.suffixes()[static_cast<std::size_t>(j)].size();
      const double c0 = normalizer(lu + lv);
      h.h_lambda(i, j) = c0 > 0.0 ? h.h_lambda(i, j) / c0 : 0.0;
      const double c1 = normalizer(lu + lv + 1);
      for (auto& m : h.h_sigma) m(i, j) = c1 > 0.0 ? m(i, j) / c1 : 0.0;
    }
  }
  return h;
}

TruncatedSvd truncated_svd(const Eigen::MatrixXd& m, int k) {
  const Eigen::Index limit = std::min(m.rows(), m.cols());
  if (k < 1 || k > limit) {
    throw std::invalid_argument("truncated_svd: rank " + std::to_string(k) +
                                " not in [1, " + std::to_string(limit) + "]");
  }
  Eigen::BDCSVD<Eigen::MatrixXd> svd(m, Eigen::ComputeThinU | Eigen::ComputeThinV);
  TruncatedSvd out;
  out.spectrum = svd.singularValues();
  out.u = svd.matrixU().leftCols(k);
  out.d = svd.singularValues().head(k);
  out.v = svd.matrixV().leftCols(k);
  const double cutoff = kRelativeSingularThreshold * out.spectrum[0];
  out.effective_rank = 0;
  if (out.spectrum[0] > 0.0) {
    for (int i = 0; i < k; ++i) {
      if (out.d[i] > cutoff) ++out.effective_rank;
    }
  }
  return out;
}

namespace {

std::vector<double> to_std(const Eigen::VectorXd& v) {
  return {v.data(), v.data() + v.size()};
}

}  // namespace

Wfa recover_wfa(const HankelEstimate& hankel, int k) {
  const Eigen::Index limit =
      std::min(hankel.h_lambda.rows(), hankel.h_lambda.cols());
  if (k < 1 || k > limit) {
    throw RankDeficientError(k, static_cast<int>(limit), {});
  }
  const TruncatedSvd svd = truncated_svd(hankel.h_lambda, k);
  if (svd.effective_rank < k) {
    throw RankDeficientError(k, svd.effective_rank, to_std(svd.spectrum));
  }
  const Eigen::VectorXd d_inv = svd.d.cwiseInverse();
  // (U D)^+ = D^-1 U^T since U has orthonormal columns.
  const Eigen::MatrixXd left = d_inv.asDiagonal() * svd.u.transpose();
  std::vector<Eigen::MatrixXd> transitions;
  transitions.reserve(hankel.h_sigma.size());
  for (const auto& h_sigma : hankel.h_sigma) {
    transitions.push_back(left * h_sigma * svd.v);
  }
  Eigen::VectorXd alpha = (svd.u.row(0).transpose().array() * svd.d.array()).matrix();
  Eigen::VectorXd omega = svd.v.row(0).transpose();
  return Wfa(hankel.alphabet, std::move(alpha), std::move(transitions),
             std::move(omega));
}

LearnResult learn_uqf(std::span<const Episode> episodes,
                      const Alphabet& alphabet, const LearnConfig& config) {
  const BasisConfig& bc = config.basis;
  const Dataset data = extract_examples(episodes, 2 * bc.max_len + 1);
  const Basis basis =
      select_basis(data, bc.max_prefixes, bc.max_suffixes, bc.max_len);

  LearnReport report;
  report.num_prefixes = static_cast<int>(basis.prefixes().size());
  report.num_suffixes = static_cast<int>(basis.suffixes().size());
  report.num_examples = static_cast<long>(data.examples.size());
  report.compressed = config.compressed.enabled;
  report.rank_used = config.rank;

  std::optional<Wfa> b;
  if (config.compressed.enabled) {
    const JlProjection proj_u =
        make_projection(report.num_prefixes, config.compressed.d_u,
                        derive_seed(config.compressed.seed, 0));
    const JlProjection proj_v =
        make_projection(report.num_suffixes, config.compressed.d_v,
                        derive_seed(config.compressed.seed, 1));
    const CompressedSketch sketch =
        compressed_estimate(data, basis, alphabet, proj_u, proj_v);
    report.singular_values =
        to_std(Eigen::BDCSVD<Eigen::MatrixXd>(sketch.c_uv).singularValues());
    b = recover_wfa_compressed(sketch, basis, proj_u, config.rank);
  } else {
    const HankelEstimate hankel = estimate_hankel(data, basis, alphabet);
    report.singular_values =
        to_std(Eigen::BDCSVD<Eigen::MatrixXd>(hankel.h_lambda).singularValues());
    b = recover_wfa(hankel, config.rank);
  }
  report.spectral_radius = spectral_radius(config.gamma * symbol_sum(*b));
  Wfa uqf = to_uqf(*b, config.gamma);
  return {std::move(*b), std::move(uqf), std::move(report)};
}

}  // namespace uqf
