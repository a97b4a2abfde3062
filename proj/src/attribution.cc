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

#include "razor/attribution.h"

#include <algorithm>
#include <cmath>
#include <fstream>

#include "json.hpp"
#include "razor/error.h"

namespace razor {

using Json = nlohmann::ordered_json;

TokenSubset NormalizeSubset(TokenSubset subset, size_t token_count) {
  std::sort(subset.begin(), subset.end());
  if (std::adjacent_find(subset.begin(), subset.end()) != subset.end()) {
    throw Error(ErrorCode::kOutOfRange, "subset repeats a token position");
  }
  if (!subset.empty() && subset.back() >= token_count) {
    throw Error(ErrorCode::kOutOfRange,
                "token position " + std::to_string(subset.back()) +
                    " out of range for a document of " +
                    std::to_string(token_count) + " tokens");
  }
  return subset;
}

void AttributionRecord::Validate() const {
  const size_t dim = dimension();
  if (dim == 0 && !token_attributions.empty()) {
    throw Error(ErrorCode::kDimensionMismatch,
                "record \"" + doc_id + "\" has empty attribution vectors");
  }
  for (size_t j = 0; j < token_attributions.size(); ++j) {
    if (token_attributions[j].size() != dim) {
      throw Error(ErrorCode::kDimensionMismatch,
                  "record \"" + doc_id + "\": token " + std::to_string(j) +
                      " has dimension " +
                      std::to_string(token_attributions[j].size()) +
                      ", expected " + std::to_string(dim));
    }
  }
  for (const auto& [subset, prediction] : predicted_subset) {
    NormalizeSubset(subset, token_count());
  }
}

double AttributionMass(const TokenSubset& subset, const AttributionRecord& record) {
  const auto positions = NormalizeSubset(subset, record.token_count());
  if (positions.empty()) return 0.0;
  std::vector<double> sum(record.dimension(), 0.0);
  for (size_t j : positions) {
    const auto& h = record.token_attributions[j];
    for (size_t i = 0; i < sum.size(); ++i) sum[i] += h[i];
  }
  double squared = 0.0;
  for (double v : sum) squared += v * v;
  return std::sqrt(squared);
}

bool Lemma1Holds(const TokenSubset& subset, const AttributionRecord& record) {
  const auto positions = NormalizeSubset(subset, record.token_count());
  if (positions.empty()) {
    throw Error(ErrorCode::kOutOfRange, "subset must be non-empty");
  }
  TokenSubset complement;
  for (size_t j = 0, k = 0; j < record.token_count(); ++j) {
    if (k < positions.size() && positions[k] == j) {
      ++k;
    } else {
      complement.push_back(j);
    }
  }
  if (complement.empty()) {
    throw Error(ErrorCode::kEmptyComplement,
                "subset covers every token of \"" + record.doc_id + "\"");
  }
  const double subset_side =
      AttributionMass(positions, record) / static_cast<double>(positions.size());
  const double complement_side =
      AttributionMass(complement, record) / static_cast<double>(complement.size());
  return subset_side >= complement_side;
}

std::string_view ShortcutConditionName(ShortcutCondition condition) {
  switch (condition) {
    case ShortcutCondition::kNone: return "none";
    case ShortcutCondition::kPredictionChanged: return "prediction_changed";
    case ShortcutCondition::kPredictionCorrect: return "prediction_correct";
    case ShortcutCondition::kSubsetTooLarge: return "subset_too_large";
  }
  return "none";
}

ShortcutVerdict IsShortcut(const TokenSubset& subset,
                           const AttributionRecord& record) {
  const auto positions = NormalizeSubset(subset, record.token_count());
  auto it = record.predicted_subset.find(positions);
  if (it == record.predicted_subset.end()) {
    throw Error(ErrorCode::kMissingPrediction,
                "record \"" + record.doc_id +
                    "\" has no prediction for the requested subset");
  }
  ShortcutVerdict verdict;
  const size_t complement = record.token_count() - positions.size();
  if (it->second != record.predicted_full) {
    verdict.failed = ShortcutCondition::kPredictionChanged;
    verdict.reason = "subset prediction " + std::to_string(it->second) +
                     " differs from full prediction " +
                     std::to_string(record.predicted_full);
  } else if (record.predicted_full == record.true_label) {
    verdict.failed = ShortcutCondition::kPredictionCorrect;
    verdict.reason = "full prediction matches the true label " +
                     std::to_string(record.true_label);
  } else if (positions.size() > complement) {
    verdict.failed = ShortcutCondition::kSubsetTooLarge;
    verdict.reason = "subset has " + std::to_string(positions.size()) +
                     " tokens, complement only " + std::to_string(complement);
  } else {
    verdict.is_shortcut = true;
  }
  return verdict;
}

AttributionRecord ParseAttributionRecord(std::string_view json_line) {
  Json object;
  try {
    object = Json::parse(json_line);
  } catch (const Json::parse_error& e) {
    throw Error(ErrorCode::kMalformedInput, std::string("malformed JSON: ") + e.what());
  }
  AttributionRecord record;
  try {
    record.doc_id = object.at("doc_id").get<std::string>();
    record.token_attributions =
        object.at("attributions").get<std::vector<std::vector<double>>>();
    record.predicted_full = object.at("predicted_full").get<LabelId>();
    record.true_label = object.at("true_label").get<LabelId>();
    if (auto subsets = object.find("subsets"); subsets != object.end()) {
      for (const auto& entry : *subsets) {
        auto positions = NormalizeSubset(
            entry.at("positions").get<TokenSubset>(), record.token_count());
        record.predicted_subset[positions] = entry.at("predicted").get<LabelId>();
      }
    }
  } catch (const Json::exception& e) {
    throw Error(ErrorCode::kMalformedInput,
                std::string("malformed attribution record: ") + e.what());
  }
  record.Validate();
  return record;
}

std::vector<AttributionRecord> LoadAttributionRecords(
    const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::kIo, "cannot open " + path.string());
  std::vector<AttributionRecord> records;
  std::string line;
  size_t line_number = 0;
  while (std::getline(in, line)) {
    ++line_number;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    try {
      records.push_back(ParseAttributionRecord(line));
    } catch (const Error& e) {
      throw Error(e.code(), path.string() + ":" + std::to_string(line_number) +
                                ": " + e.what());
    }
  }
  return records;
}

std::string SerializeAttributionRecord(const AttributionRecord& record) {
  Json object;
  object["doc_id"] = record.doc_id;
  object["attributions"] = record.token_attributions;
  object["predicted_full"] = record.predicted_full;
  object["true_label"] = record.true_label;
  Json subsets = Json::array();
  for (const auto& [positions, predicted] : record.predicted_subset) {
    Json entry;
    entry["positions"] = positions;
    entry["predicted"] = predicted;
    subsets.push_back(std::move(entry));
  }
  object["subsets"] = std::move(subsets);
  return object.dump();
}

}  // namespace razor
