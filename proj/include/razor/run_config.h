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

#ifndef RAZOR_RUN_CONFIG_H_
#define RAZOR_RUN_CONFIG_H_

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>

#include "json.hpp"
#include "razor/corpus.h"
#include "razor/prompt.h"
#include "razor/rewriter.h"
#include "razor/surface.h"

namespace razor {

// Documents rewritten per iteration: an absolute count, or a fraction of
// the dataset size (JSON integers are counts, JSON reals are fractions).
struct TopK {
  bool is_fraction = true;
  double value = 0.1;

  static TopK Count(size_t n) { return {false, static_cast<double>(n)}; }
  static TopK Fraction(double f) { return {true, f}; }

  // Throws kInvalidConfig unless 0 < k <= dataset_size.
  size_t Resolve(size_t dataset_size) const;
  bool operator==(const TopK&) const = default;
};

struct RunConfig {
  TopK k;
  size_t lambda = kDefaultLambda;
  // Stop once an iteration improves the objective by less than
  // epsilon * max(|objective_before|, 1).
  double epsilon = 1e-4;
  int max_iterations = 10;
  GeneratorConfig generator;
  TokenizerConfig tokenizer;
  uint64_t seed = 0;
  // Worker threads for scoring and concurrent backend requests.
  int jobs = 1;
  std::optional<LabelSet> labels;
  std::optional<PromptTemplate> prompts;

  void Validate() const;
  // Fingerprint of every field that influences the rewritten dataset.
  uint64_t Fingerprint() const;

  static RunConfig FromJson(const nlohmann::json& json);
  static RunConfig Load(const std::filesystem::path& path);
  nlohmann::ordered_json ToJson() const;
};

}  // namespace razor

#endif  // RAZOR_RUN_CONFIG_H_
