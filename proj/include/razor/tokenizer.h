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

#ifndef RAZOR_TOKENIZER_H_
#define RAZOR_TOKENIZER_H_

#include <string>
#include <string_view>
#include <vector>

namespace razor {

struct TokenizerConfig {
  bool lowercase = true;
  bool strip_punctuation = true;

  bool operator==(const TokenizerConfig&) const = default;
};

// Word-level tokenizer: lowercase, split on whitespace, strip punctuation
// from both ends of every piece, drop pieces that become empty. Operates
// on UTF-8; invalid byte sequences are passed through unchanged.
std::vector<std::string> Tokenize(std::string_view text,
                                  const TokenizerConfig& config = {});

// Unicode-aware lowercase for the scripts we map (Latin, Greek, Cyrillic,
// Armenian). Other code points are returned untouched.
std::string Utf8Lowercase(std::string_view text);

}  // namespace razor

#endif  // RAZOR_TOKENIZER_H_
