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

#ifndef RAZOR_EVALKIT_H_
#define RAZOR_EVALKIT_H_

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "razor/bleu.h"
#include "razor/corpus.h"
#include "razor/mock_backend.h"
#include "razor/trace.h"

namespace razor {

struct TermCounts {
  std::map<LabelId, size_t> per_class;
  size_t total = 0;

  bool operator==(const TermCounts&) const = default;
};

// Whole-token, case-insensitive occurrences of each term in the mutable
// texts, per class (every class present in the dataset gets an entry).
// Throws kInvalidConfig for an empty term list.
std::map<std::string, TermCounts> CountTerms(const Dataset& dataset,
                                             const std::vector<std::string>& terms);

// Largest pairwise difference, across classes, of the fraction of
// documents that contain `token`. 0 when fewer than two classes exist.
double FrequencyGap(const Dataset& dataset, const std::string& token);

// Recipe for a synthetic corpus with one planted spurious token.
struct BiasSpec {
  std::string planted_token = "not";
  LabelId biased_class = 1;
  // Fraction of biased-class documents that carry the token.
  double bias_rate = 0.9;
  // Fraction of other-class documents that carry it.
  double background_rate = 0.1;
  size_t corpus_size = 1000;
  size_t num_classes = 2;
  uint64_t seed = 0;

  void Validate() const;
};

struct SynthCorpus {
  Dataset dataset;
  // Mock-backend rules that delete the planted token; the verifier echoes
  // the original label.
  MockRules rules;
};

// Template sentences drawn from class-neutral word pools, so the planted
// token is the only feature that correlates with the label. Pure function
// of the spec.
SynthCorpus GenerateBiasedCorpus(const BiasSpec& spec);

struct ReportOptions {
  std::vector<std::string> terms;
  // Count terms on a seeded sample of this many rewritten pairs instead of
  // the full datasets.
  std::optional<size_t> sample;
  uint64_t seed = 0;
  BleuOptions bleu;
};

struct TermReport {
  std::string term;
  TermCounts before;
  TermCounts after;
  double gap_before = 0.0;
  double gap_after = 0.0;
};

struct BiasReport {
  std::vector<TermReport> terms;
  size_t documents = 0;
  size_t rewritten_documents = 0;
  size_t sampled_pairs = 0;
  // BLEU of the rewritten texts against their originals (all texts when
  // nothing was rewritten).
  std::optional<double> corpus_bleu;
  // Objective before the first iteration, then after each one.
  std::vector<double> objective_trace;
  LabelSet labels;

  nlohmann::ordered_json ToJson() const;
  std::string ToCsv() const;
};

// Throws kSchemaMismatch when the datasets differ in schema or ids.
BiasReport EmitReport(const Dataset& before, const Dataset& after,
                      const std::vector<IterationTrace>& traces,
                      const ReportOptions& options);

}  // namespace razor

#endif  // RAZOR_EVALKIT_H_
