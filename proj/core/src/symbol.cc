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


#include "uqf/symbol.h"

namespace uqf {

std::vector<Symbol> Alphabet::symbols() const {
  std::vector<Symbol> out;
  out.reserve(static_cast<std::size_t>(size()));
  for (int id = 0; id < size(); ++id) out.push_back(symbol(id));
  return out;
}

std::size_t WordHash::operator()(const Word& w) const noexcept {
  std::uint64_t h = 0x9e3779b97f4a7c15ULL ^ w.size();
  for (const Symbol& s : w) {
    h = mix64(h ^ (static_cast<std::uint64_t>(s.action) << 32 |
                   static_cast<std::uint32_t>(s.observation)));
  }
  return static_cast<std::size_t>(h);
}

std::vector<Word> words_of_length(const Alphabet& alphabet, int len) {
  std::vector<Word> out{Word{}};
  const std::vector<Symbol> syms = alphabet.symbols();
  for (int l = 0; l < len; ++l) {
    std::vector<Word> next;
    next.reserve(out.size() * syms.size());
    for (const Word& w : out) {
      for (const Symbol& s : syms) {
        Word e = w;
        e.push_back(s);
        next.push_back(std::move(e));
      }
    }
    out = std::move(next);
  }
  return out;
}

std::vector<Word> enumerate_words(const Alphabet& alphabet, int max_len) {
  std::vector<Word> out;
  for (int l = 0; l <= max_len; ++l) {
    std::vector<Word> layer = words_of_length(alphabet, l);
    out.insert(out.end(), std::make_move_iterator(layer.begin()),
               std::make_move_iterator(layer.end()));
  }
  return out;
}

Word concat(const Word& a, const Word& b) {
  Word out;
  out.reserve(a.size() + b.size());
  out.insert(out.end(), a.begin(), a.end());
  out.insert(out.end(), b.begin(), b.end());
  return out;
}

Word concat(const Word& a, Symbol s, const Word& b) {
  Word out;
  out.reserve(a.size() + 1 + b.size());
  out.insert(out.end(), a.begin(), a.end());
  out.push_back(s);
  out.insert(out.end(), b.begin(), b.end());
  return out;
}

std::string to_string(const Word& w) {
  if (w.empty()) return "λ";
  std::string out;
  for (const Symbol& s : w) {
    out += "(" + std::to_string(s.action) + "," +
           std::to_string(s.observation) + ")";
  }
  return out;
}

std::uint64_t mix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream) {
  return mix64(mix64(seed) ^ (stream * 0xd1b54a32d192ed03ULL + 1));
}

}  // namespace uqf
