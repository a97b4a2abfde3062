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

#ifndef RAZOR_BLEU_H_
#define RAZOR_BLEU_H_

#include <cstddef>
#include <string>
#include <vector>

namespace razor {

struct BleuOptions {
  size_t max_n = 4;
  // Replaces zero match counts with 0.1 (a "floor" smoothing), useful for
  // corpora of very short sentences.
  bool smoothing = false;
};

// Corpus-level BLEU on a 0-100 scale with a single reference per
// candidate: clipped n-gram matches and candidate n-gram totals are summed
// over the corpus, combined with a uniform-weight geometric mean and a
// brevity penalty. Orders for which the corpus has no candidate n-grams at
// all are left out of the mean. Texts are split on whitespace. Throws
// kEmptyCorpus for empty input and kSchemaMismatch for unequal lengths.
double CorpusBleu(const std::vector<std::string>& candidates,
                  const std::vector<std::string>& references,
                  const BleuOptions& options = {});

double CorpusBleu(const std::vector<std::vector<std::string>>& candidates,
                  const std::vector<std::vector<std::string>>& references,
                  const BleuOptions& options = {});

}  // namespace razor

#endif  // RAZOR_BLEU_H_
