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


#include <gtest/gtest.h>

#include "uqf/symbol.h"

namespace uqf {
namespace {

TEST(Alphabet, IdRoundTrip) {
  const Alphabet ab{3, 4};
  EXPECT_EQ(ab.size(), 12);
  for (int id = 0; id < ab.size(); ++id) EXPECT_EQ(ab.id(ab.symbol(id)), id);
  EXPECT_EQ(ab.id({2, 1}), 9);
  EXPECT_FALSE(ab.contains({3, 0}));
  EXPECT_FALSE(ab.contains({0, -1}));
}

TEST(EnumerateWords, LengthLexOrder) {
  const auto words = enumerate_words({2, 1}, 2);
  ASSERT_EQ(words.size(), 7u);
  EXPECT_TRUE(words[0].empty());
  EXPECT_EQ(words[1], (Word{{0, 0}}));
  EXPECT_EQ(words[2], (Word{{1, 0}}));
  EXPECT_EQ(words[3], (Word{{0, 0}, {0, 0}}));
  EXPECT_EQ(words[6], (Word{{1, 0}, {1, 0}}));
  EXPECT_EQ(words_of_length({2, 2}, 3).size(), 64u);
}

TEST(Words, ConcatAndPrint) {
  const Word a{{0, 1}};
  const Word b{{1, 0}};
  EXPECT_EQ(concat(a, b), (Word{{0, 1}, {1, 0}}));
  EXPECT_EQ(concat(a, Symbol{1, 1}, b), (Word{{0, 1}, {1, 1}, {1, 0}}));
  EXPECT_EQ(to_string(Word{}), "λ");
  EXPECT_NE(to_string(a), to_string(b));
}

TEST(Seeds, DeriveIsStableAndSpreads) {
  EXPECT_EQ(derive_seed(1, 2), derive_seed(1, 2));
  EXPECT_NE(derive_seed(1, 2), derive_seed(2, 1));
  EXPECT_NE(derive_seed(0, 0), derive_seed(0, 1));
  EXPECT_NE(mix64(0), mix64(1));
}

}  // namespace
}  // namespace uqf
