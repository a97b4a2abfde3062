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

#include "razor/bleu.h"

#include <algorithm>
#include <cmath>
#include <map>
#include <sstream>

#include "razor/error.h"

namespace razor {
namespace {

std::vector<std::string> SplitWhitespace(const std::string& text) {
  std::istringstream in(text);
  std::vector<std::string> words;
  std::string word;
  while (in >> word) words.push_back(word);
  return words;
}

using NgramCounts = std::map<std::vector<std::string>, size_t>;

NgramCounts CountNgrams(const std::vector<std::string>& words, size_t n) {
  NgramCounts counts;
  if (words.size() < n) return counts;
  for (size_t i = 0; i + n <= words.size(); ++i) {
    ++counts[std::vector<std::string>(words.begin() + i, words.begin() + i + n)];
  }
  return counts;
}

}  // namespace

double CorpusBleu(const std::vector<std::vector<std::string>>& candidates,
                  const std::vector<std::vector<std::string>>& references,
                  const BleuOptions& options) {
  if (candidates.empty() || references.empty()) {
    throw Error(ErrorCode::kEmptyCorpus, "BLEU needs non-empty corpora");
  }
  if (candidates.size() != references.size()) {
    throw Error(ErrorCode::kSchemaMismatch,
                "BLEU corpora differ in length: " + std::to_string(candidates.size()) +
                    " vs " + std::to_string(references.size()));
  }
  if (options.max_n == 0) {
    throw Error(ErrorCode::kInvalidConfig, "BLEU max_n must be positive");
  }
  std::vector<double> matches(options.max_n, 0.0);
  std::vector<double> totals(options.max_n, 0.0);
  double candidate_length = 0.0;
  double reference_length = 0.0;
  for (size_t s = 0; s < candidates.size(); ++s) {
    candidate_length += static_cast<double>(candidates[s].size());
    reference_length += static_cast<double>(references[s].size());
    for (size_t n = 1; n <= options.max_n; ++n) {
      const auto cand = CountNgrams(candidates[s], n);
      const auto ref = CountNgrams(references[s], n);
      for (const auto& [gram, count] : cand) {
        totals[n - 1] += static_cast<double>(count);
        auto it = ref.find(gram);
        if (it != ref.end()) matches[n - 1] += static_cast<double>(std::min(count, it->second));
      }
    }
  }
  if (candidate_length == 0.0) return reference_length == 0.0 ? 100.0 : 0.0;

  double log_sum = 0.0;
  size_t orders = 0;
  for (size_t n = 0; n < options.max_n; ++n) {
    if (totals[n] == 0.0) continue;
    double m = matches[n];
    if (m == 0.0) {
      if (!options.smoothing) return 0.0;
      m = 0.1;
    }
    log_sum += std::log(m / totals[n]);
    ++orders;
  }
  const double brevity =
      candidate_length > reference_length
          ? 1.0
          : std::exp(1.0 - reference_length / candidate_length);
  return 100.0 * brevity * std::exp(log_sum / static_cast<double>(orders));
}

double CorpusBleu(const std::vector<std::string>& candidates,
                  const std::vector<std::string>& references,
                  const BleuOptions& options) {
  std::vector<std::vector<std::string>> cand;
  std::vector<std::vector<std::string>> ref;
  for (const auto& c : candidates) cand.push_back(SplitWhitespace(c));
  for (const auto& r : references) ref.push_back(SplitWhitespace(r));
  return CorpusBleu(cand, ref, options);
}

}  // namespace razor
