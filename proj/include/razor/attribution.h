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

#ifndef RAZOR_ATTRIBUTION_H_
#define RAZOR_ATTRIBUTION_H_

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "razor/corpus.h"

namespace razor {

using TokenSubset = std::vector<size_t>;

// Externally produced evidence for one document: per-token attribution
// vectors (attention, SHAP, ...) plus classifier predictions on the full
// document and on named token subsets.
struct AttributionRecord {
  std::string doc_id;
  std::vector<std::vector<double>> token_attributions;
  LabelId predicted_full = 0;
  LabelId true_label = 0;
  // Keyed by the sorted, duplicate-free position list.
  std::map<TokenSubset, LabelId> predicted_subset;

  size_t token_count() const { return token_attributions.size(); }
  size_t dimension() const {
    return token_attributions.empty() ? 0 : token_attributions.front().size();
  }

  // Throws kDimensionMismatch if vectors disagree in size or are empty,
  // kOutOfRange if a subset names a missing position.
  void Validate() const;
};

// Sorts positions and rejects duplicates or out-of-range entries.
TokenSubset NormalizeSubset(TokenSubset subset, size_t token_count);

// ||sum_{j in subset} h_j||_2. Zero for the empty subset.
double AttributionMass(const TokenSubset& subset, const AttributionRecord& record);

// Attribution-dominance inequality: mass(subset)/|subset| >=
// mass(complement)/|complement|. Throws kEmptyComplement when the subset
// covers every position and kOutOfRange for an empty subset.
bool Lemma1Holds(const TokenSubset& subset, const AttributionRecord& record);

enum class ShortcutCondition {
  kNone,
  // The subset alone does not reproduce the full-document prediction.
  kPredictionChanged,
  // The full-document prediction agrees with the ground truth.
  kPredictionCorrect,
  // The subset is larger than its complement.
  kSubsetTooLarge,
};

std::string_view ShortcutConditionName(ShortcutCondition condition);

struct ShortcutVerdict {
  bool is_shortcut = false;
  ShortcutCondition failed = ShortcutCondition::kNone;
  std::string reason;
};

// Checks the three shortcut conditions in order and reports the first
// that fails. Throws kMissingPrediction if the record has no prediction
// for this subset.
ShortcutVerdict IsShortcut(const TokenSubset& subset,
                           const AttributionRecord& record);

AttributionRecord ParseAttributionRecord(std::string_view json_line);
std::vector<AttributionRecord> LoadAttributionRecords(
    const std::filesystem::path& path);
std::string SerializeAttributionRecord(const AttributionRecord& record);

}  // namespace razor

#endif  // RAZOR_ATTRIBUTION_H_
