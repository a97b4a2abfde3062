// Copyright 2026 The RAZOR Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "razor/tokenizer.h"

#include <string>
#include <vector>

#include <gtest/gtest.h>

namespace razor {
namespace {

using Tokens = std::vector<std::string>;

TEST(TokenizerTest, SplitsOnWhitespaceAndLowercases) {
  EXPECT_EQ(Tokenize("The Cat  sat\ton\nthe MAT"),
            (Tokens{"the", "cat", "sat", "on", "the", "mat"}));
}

TEST(TokenizerTest, StripsEdgePunctuationOnly) {
  EXPECT_EQ(Tokenize("\"Hello,\" she said... (don't) e-mail!"),
            (Tokens{"hello", "she", "said", "don't", "e-mail"}));
}

TEST(TokenizerTest, PunctuationOnlyPiecesVanish) {
  EXPECT_EQ(Tokenize("a -- b ..."), (Tokens{"a", "b"}));
  EXPECT_TRUE(Tokenize("  !!! ,, ").empty());
  EXPECT_TRUE(Tokenize("").empty());
}

TEST(TokenizerTest, ConfigTogglesNormalization) {
  TokenizerConfig raw;
  raw.lowercase = false;
  raw.strip_punctuation = false;
  EXPECT_EQ(Tokenize("Not, now.", raw), (Tokens{"Not,", "now."}));
}

TEST(TokenizerTest, UnicodeLowercaseAndSpaces) {
  EXPECT_EQ(Tokenize("ÉCOLE Straße ΑΘΗΝΑ Москва"),
            (Tokens{"école", "straße", "αθηνα", "москва"}));
  EXPECT_EQ(Tokenize("«bonjour» ¿qué?"), (Tokens{"bonjour", "qué"}));
}

TEST(TokenizerTest, InvalidUtf8PassesThrough) {
  const std::string bad = std::string("ab") + '\xff' + "C";
  EXPECT_EQ(Tokenize(bad), (Tokens{std::string("ab") + '\xff' + "c"}));
  const std::string truncated = std::string("x") + '\xc3';
  EXPECT_EQ(Tokenize(truncated), (Tokens{truncated}));
}

TEST(TokenizerTest, Idempotent) {
  const std::string text = "It's NOT the \"same\" river, twice.";
  std::string joined;
  for (const auto& t : Tokenize(text)) joined += t + " ";
  EXPECT_EQ(Tokenize(joined), Tokenize(text));
}

}  // namespace
}  // namespace razor
