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


#include "uqf/projection.h"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

#include <Eigen/QR>
#include <Eigen/SVD>

#include "uqf/errors.h"

namespace uqf {
namespace {

// SplitMix64 stream; uniform doubles in (0, 1].
class SplitMix {
 public:
  explicit SplitMix(std::uint64_t state) : state_(state) {}
  std::uint64_t next() {
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }
  double open_unit() {
    return (static_cast<double>(next() >> 11) + 1.0) * 0x1.0p-53;
  }

 private:
  std::uint64_t state_;
};

}  // namespace

JlProjection JlProjection::gaussian(int d, std::uint64_t seed) {
  if (d < 1) throw std::invalid_argument("projection dimension must be >= 1");
  return JlProjection(d, seed, nullptr);
}

JlProjection JlProjection::explicit_rows(const std::vector<Word>& words) {
  auto index = std::make_shared<std::unordered_map<Word, int, WordHash>>();
  for (std::size_t i = 0; i < words.size(); ++i) {
    if (!index->emplace(words[i], static_cast<int>(i)).second) {
      throw std::invalid_argument("explicit projection: duplicate word " +
                                  to_string(words[i]));
    }
  }
  return JlProjection(static_cast<int>(words.size()), 0, std::move(index));
}

std::uint64_t JlProjection::sequence_hash(const Word& w) {
  std::uint64_t h = 0x6a09e667f3bcc909ULL;
  for (const Symbol& s : w) {
    h = mix64(h ^ (static_cast<std::uint64_t>(s.action + 1) << 32 |
                   static_cast<std::uint64_t>(s.observation + 1)));
  }
  return mix64(h ^ static_cast<std::uint64_t>(w.size()));
}

std::uint64_t JlProjection::row_id(const Word& w) const {
  if (explicit_index_) {
    auto it = explicit_index_->find(w);
    if (it == explicit_index_->end()) {
      throw std::out_of_range("projection has no row for " + to_string(w));
    }
    return static_cast<std::uint64_t>(it->second);
  }
  return sequence_hash(w);
}

Eigen::VectorXd JlProjection::row(const Word& w) const {
  if (explicit_index_) {
    Eigen::VectorXd r = Eigen::VectorXd::Zero(dim_);
    r[static_cast<Eigen::Index>(row_id(w))] = 1.0;
    return r;
  }
  SplitMix gen(mix64(seed_ ^ row_id(w)));
  const double scale = 1.0 / std::sqrt(static_cast<double>(dim_));
  Eigen::VectorXd r(dim_);
  for (int i = 0; i < dim_; i += 2) {
    const double radius = std::sqrt(-2.0 * std::log(gen.open_unit()));
    const double angle = 2.0 * std::numbers::pi * gen.open_unit();
    r[i] = scale * radius * std::cos(angle);
    if (i + 1 < dim_) r[i + 1] = scale * radius * std::sin(angle);
  }
  return r;
}

Eigen::MatrixXd JlProjection::materialize(const std::vector<Word>& words) const {
  Eigen::MatrixXd m(static_cast<Eigen::Index>(words.size()), dim_);
  for (std::size_t i = 0; i < words.size(); ++i) {
    m.row(static_cast<Eigen::Index>(i)) = row(words[i]).transpose();
  }
  return m;
}

JlProjection make_projection(int /*universe_hint*/, int d, std::uint64_t seed) {
  return JlProjection::gaussian(d, seed);
}

CompressedSketch compressed_estimate(const Dataset& data, const Basis& basis,
                                     const Alphabet& alphabet,
                                     const JlProjection& proj_u,
                                     const JlProjection& proj_v) {
  const int du = proj_u.dim();
  const int dv = proj_v.dim();
  CompressedSketch sketch{alphabet, Eigen::VectorXd::Zero(du),
                          Eigen::MatrixXd::Zero(du, dv), {}};
  sketch.c_sigma.assign(static_cast<std::size_t>(alphabet.size()),
                        Eigen::MatrixXd::Zero(du, dv));

  // Only basis words can contribute, so their rows are all that is needed.
  const Eigen::MatrixXd phi_u = proj_u.materialize(basis.prefixes());
  const Eigen::MatrixXd phi_v = proj_v.materialize(basis.suffixes());

  const int longest = basis.max_prefix_len() + basis.max_suffix_len() + 1;
  Word u;
  Word v;
  for (const LabeledExample& ex : data.examples) {
    const Word& p = ex.prefix;
    const int n = static_cast<int>(p.size());
    if (n > longest) continue;
    const auto count = data.count_by_length.find(n);
    if (count == data.count_by_length.end() || count->second == 0) continue;
    const double y = ex.label / static_cast<double>(count->second);
    if (y == 0.0) continue;

    for (int i = 0; i <= n; ++i) {
      u.assign(p.begin(), p.begin() + i);
      const auto ui = basis.prefix_index(u);
      if (!ui) continue;
      if (i == n) sketch.c_u.noalias() += y * phi_u.row(*ui).transpose();
      v.assign(p.begin() + i, p.end());
      if (const auto vj = basis.suffix_index(v)) {
        sketch.c_uv.noalias() += y * phi_u.row(*ui).transpose() * phi_v.row(*vj);
      }
      if (i < n) {
        const Symbol sigma = p[static_cast<std::size_t>(i)];
        if (!alphabet.contains(sigma)) {
          throw SymbolOutOfRangeError("compressed_estimate: symbol outside alphabet");
        }
        v.assign(p.begin() + i + 1, p.end());
        if (const auto vj = basis.suffix_index(v)) {
          sketch.c_sigma[static_cast<std::size_t>(alphabet.id(sigma))].noalias() +=
              y * phi_u.row(*ui).transpose() * phi_v.row(*vj);
        }
      }
    }
  }
  return sketch;
}

Eigen::VectorXd lambda_selector(const Basis& basis, const JlProjection& proj_u) {
  const Eigen::MatrixXd phi_u = proj_u.materialize(basis.prefixes());
  Eigen::VectorXd e_lambda = Eigen::VectorXd::Zero(phi_u.rows());
  e_lambda[0] = 1.0;
  return phi_u.completeOrthogonalDecomposition().solve(e_lambda);
}

Wfa recover_wfa_compressed(const CompressedSketch& sketch, const Basis& basis,
                           const JlProjection& proj_u, int k) {
  const Eigen::Index limit = std::min(sketch.c_uv.rows(), sketch.c_uv.cols());
  if (k < 1 || k > limit) throw RankDeficientError(k, static_cast<int>(limit), {});
  const TruncatedSvd svd = truncated_svd(sketch.c_uv, k);
  if (svd.effective_rank < k) {
    throw RankDeficientError(
        k, svd.effective_rank,
        {svd.spectrum.data(), svd.spectrum.data() + svd.spectrum.size()});
  }
  const Eigen::MatrixXd left = svd.d.cwiseInverse().asDiagonal() * svd.u.transpose();
  std::vector<Eigen::MatrixXd> transitions;
  transitions.reserve(sketch.c_sigma.size());
  for (const auto& c : sketch.c_sigma) transitions.push_back(left * c * svd.v);

  const Eigen::VectorXd e = lambda_selector(basis, proj_u);
  Eigen::VectorXd alpha =
      ((e.transpose() * svd.u).transpose().array() * svd.d.array()).matrix();
  Eigen::VectorXd omega = left * sketch.c_u;
  return Wfa(sketch.alphabet, std::move(alpha), std::move(transitions),
             std::move(omega));
}

}  // namespace uqf
