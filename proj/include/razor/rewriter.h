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

#ifndef RAZOR_REWRITER_H_
#define RAZOR_REWRITER_H_

#include <atomic>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "razor/backend.h"
#include "razor/corpus.h"
#include "razor/prompt.h"
#include "razor/surface.h"

namespace razor {

struct GeneratorConfig {
  double top_p = 0.9;
  double temperature = 0.7;
  // Applied to verification calls; zero keeps the verdict deterministic.
  double verifier_temperature = 0.0;
  size_t candidates_per_doc = 3;
  size_t max_retries = 2;
  int retry_backoff_ms = 0;
  std::string backend = "mock";
  std::string model = "gpt-3.5-turbo";
  int timeout_seconds = 60;

  void Validate() const;
  bool operator==(const GeneratorConfig&) const = default;
};

struct RewriteCandidate {
  std::string text;
  bool verified = false;
  // Shortcut score under the selection-time corpus; set only for verified,
  // scoreable candidates.
  std::optional<double> score;
};

// Label id named in a verifier reply: exactly one declared label name must
// occur as a whole word (case-insensitive). Anything else is nullopt.
std::optional<LabelId> ParseVerdict(std::string_view response,
                                    const LabelSet& labels);

// Normalizes one raw generator reply: first non-blank line, trimmed, with a
// single pair of enclosing quotes removed.
std::string CleanGeneration(std::string_view raw);

class Rewriter {
 public:
  // The two backends may be the same object; every call is its own session.
  Rewriter(RewriteBackend& generator, RewriteBackend& verifier,
           GeneratorConfig config, PromptTemplate prompts, LabelSet labels,
           TokenizerConfig tokenizer = {});

  // Up to candidates_per_doc distinct texts, none equal to the original and
  // none empty after tokenization. Throws kBackendTransport once a call has
  // failed max_retries + 1 times.
  std::vector<std::string> GenerateCandidates(const LabeledDocument& doc);

  // True iff the verifier names the document's label. A reply that names
  // no label (or several) is retried and finally counted as a rejection.
  bool VerifyLabel(std::string_view candidate, const LabeledDocument& doc);

  // Generation followed by verification of each candidate.
  std::vector<RewriteCandidate> Rewrite(const LabeledDocument& doc);

  CallCounters counters() const;
  const GeneratorConfig& config() const { return config_; }

 private:
  template <typename Call>
  std::string WithRetries(Call&& call);

  RewriteBackend& generator_;
  RewriteBackend& verifier_;
  GeneratorConfig config_;
  PromptTemplate prompts_;
  LabelSet labels_;
  TokenizerConfig tokenizer_;

  std::atomic<uint64_t> generate_calls_{0};
  std::atomic<uint64_t> verify_calls_{0};
  std::atomic<uint64_t> transport_failures_{0};
  std::atomic<uint64_t> parse_failures_{0};
};

// Fills `score` for verified candidates: each is embedded as if it replaced
// `doc` in the corpus described by `stats`, and scored against the other
// classes in `sums`. Candidates with < 2 tokens or a zero embedding stay
// unscored.
void ScoreCandidates(const LabeledDocument& doc,
                     std::vector<RewriteCandidate>& candidates,
                     const CorpusStats& stats, const ClassSums& sums,
                     const PositionalEncoder& encoder,
                     const TokenizerConfig& tokenizer);

struct ReplacementDecision {
  bool replace = false;
  std::string text;
  double score = 0.0;
};

// Lowest-scoring verified candidate, if its score is strictly below
// `original_score`; ties go to the lexicographically smallest text.
ReplacementDecision SelectReplacement(double original_score,
                                      const std::vector<RewriteCandidate>& accepted);

// Convenience form: scores `accepted` against `dataset` and decides.
ReplacementDecision SelectReplacement(const LabeledDocument& doc,
                                      std::vector<RewriteCandidate> accepted,
                                      const Dataset& dataset,
                                      const CorpusStats& stats,
                                      const EmbeddingMap& embeddings,
                                      size_t lambda = kDefaultLambda);

}  // namespace razor

#endif  // RAZOR_REWRITER_H_
