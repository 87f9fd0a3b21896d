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


#ifndef UQF_SYMBOL_H_
#define UQF_SYMBOL_H_

#include <compare>
#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

namespace uqf {

// One action-observation pair.  Ordering is lexicographic on
// (action, observation), which coincides with ordering by symbol id.
struct Symbol {
  int action = 0;
  int observation = 0;

  friend auto operator<=>(const Symbol&, const Symbol&) = default;
};

using Word = std::vector<Symbol>;

// The alphabet A x O.  Symbol ids are action * num_obs + observation.
struct Alphabet {
  int num_actions = 1;
  int num_obs = 1;

  int size() const { return num_actions * num_obs; }
  int id(Symbol s) const { return s.action * num_obs + s.observation; }
  Symbol symbol(int id) const { return {id / num_obs, id % num_obs}; }
  bool contains(Symbol s) const {
    return s.action >= 0 && s.action < num_actions && s.observation >= 0 &&
           s.observation < num_obs;
  }
  std::vector<Symbol> symbols() const;

  friend bool operator==(const Alphabet&, const Alphabet&) = default;
};

struct WordHash {
  std::size_t operator()(const Word& w) const noexcept;
};

// Every word over `alphabet` of length <= max_len, shortest first and
// lexicographic within a length.
std::vector<Word> enumerate_words(const Alphabet& alphabet, int max_len);

// All words of exactly `len` symbols, lexicographic.
std::vector<Word> words_of_length(const Alphabet& alphabet, int len);

Word concat(const Word& a, const Word& b);
Word concat(const Word& a, Symbol s, const Word& b);

// "(a,o)(a,o)..." or "λ" for the empty word.
std::string to_string(const Word& w);

// SplitMix64 finalizer.  Used for seed derivation and sequence hashing.
std::uint64_t mix64(std::uint64_t x);

// Seed for the i-th independent stream derived from a master seed.
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream);

}  // namespace uqf

#endif  // UQF_SYMBOL_H_
