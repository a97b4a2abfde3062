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

#include "razor/rewriter.h"

#include <algorithm>
#include <cctype>
#include <chrono>
#include <set>
#include <thread>

#include "razor/error.h"
#include "razor/logging.h"

namespace razor {
namespace {

bool IsWordChar(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) || c == '_' ||
         (static_cast<unsigned char>(c) & 0x80);
}

bool ContainsWord(const std::string& haystack, const std::string& needle) {
  if (needle.empty()) return false;
  size_t pos = haystack.find(needle);
  while (pos != std::string::npos) {
    const bool left = pos == 0 || !IsWordChar(haystack[pos - 1]);
    const size_t end = pos + needle.size();
    const bool right = end == haystack.size() || !IsWordChar(haystack[end]);
    if (left && right) return true;
    pos = haystack.find(needle, pos + 1);
  }
  return false;
}

std::string_view Trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r\n");
  return s.substr(first, last - first + 1);
}

}  // namespace

void GeneratorConfig::Validate() const {
  if (!(top_p > 0.0 && top_p <= 1.0)) {
    throw Error(ErrorCode::kInvalidConfig, "top_p must be in (0, 1]");
  }
  if (!(temperature >= 0.0) || !(verifier_temperature >= 0.0)) {
    throw Error(ErrorCode::kInvalidConfig, "temperature must be >= 0");
  }
  if (candidates_per_doc == 0) {
    throw Error(ErrorCode::kInvalidConfig, "candidates_per_doc must be positive");
  }
  if (backend != "mock" && backend != "http") {
    throw Error(ErrorCode::kInvalidConfig,
                "backend must be \"mock\" or \"http\", got \"" + backend + "\"");
  }
}

std::optional<LabelId> ParseVerdict(std::string_view response,
                                    const LabelSet& labels) {
  const std::string lowered = Utf8Lowercase(response);
  std::optional<LabelId> found;
  for (const auto& entry : labels.entries()) {
    if (!ContainsWord(lowered, Utf8Lowercase(entry.name))) continue;
    if (found) return std::nullopt;
    found = entry.id;
  }
  return found;
}

std::string CleanGeneration(std::string_view raw) {
  std::string_view text;
  size_t start = 0;
  while (start <= raw.size()) {
    size_t end = raw.find('\n', start);
    if (end == std::string_view::npos) end = raw.size();
    text = Trim(raw.substr(start, end - start));
    if (!text.empty() || end == raw.size()) break;
    start = end + 1;
  }
  if (text.size() >= 2) {
    const char open = text.front();
    const char close = text.back();
    if ((open == '"' && close == '"') || (open == '\'' && close == '\'')) {
      text = Trim(text.substr(1, text.size() - 2));
    }
  }
  return std::string(text);
}

Rewriter::Rewriter(RewriteBackend& generator, RewriteBackend& verifier,
                   GeneratorConfig config, PromptTemplate prompts, LabelSet labels,
                   TokenizerConfig tokenizer)
    : generator_(generator),
      verifier_(verifier),
      config_(std::move(config)),
      prompts_(std::move(prompts)),
      labels_(std::move(labels)),
      tokenizer_(tokenizer) {
  config_.Validate();
}

template <typename Call>
std::string Rewriter::WithRetries(Call&& call) {
  for (size_t attempt = 0;; ++attempt) {
    try {
      return call();
    } catch (const Error& e) {
      if (e.code() != ErrorCode::kBackendTransport) throw;
      ++transport_failures_;
      if (attempt >= config_.max_retries) throw;
      LogWarning(std::string("backend call failed, retrying: ") + e.what());
      if (config_.retry_backoff_ms > 0) {
        std::this_thread::sleep_for(
            std::chrono::milliseconds(config_.retry_backoff_ms << attempt));
      }
    }
  }
}

std::vector<std::string> Rewriter::GenerateCandidates(const LabeledDocument& doc) {
  GenerationRequest request;
  request.doc_id = doc.id();
  request.prompt = BuildPrompt(doc, prompts_, labels_);
  request.text = doc.mutable_text();
  request.context = doc.context_text();
  request.label_name = labels_.Name(doc.label());
  request.temperature = config_.temperature;
  request.top_p = config_.top_p;

  std::vector<std::string> candidates;
  std::set<std::string> seen{doc.mutable_text()};
  for (size_t attempt = 0; attempt < config_.candidates_per_doc; ++attempt) {
    request.attempt = attempt;
    std::string text = CleanGeneration(WithRetries([&] {
      ++generate_calls_;
      return generator_.Generate(request);
    }));
    if (text.empty() || !seen.insert(text).second) continue;
    if (Tokenize(text, tokenizer_).empty()) continue;
    candidates.push_back(std::move(text));
  }
  return candidates;
}

bool Rewriter::VerifyLabel(std::string_view candidate, const LabeledDocument& doc) {
  VerificationRequest request;
  request.doc_id = doc.id();
  request.prompt = BuildVerificationPrompt(doc, candidate, prompts_, labels_);
  request.candidate = std::string(candidate);
  request.context = doc.context_text();
  request.expected_label_name = labels_.Name(doc.label());
  for (const auto& entry : labels_.entries()) request.label_names.push_back(entry.name);
  request.temperature = config_.verifier_temperature;
  request.top_p = config_.top_p;

  for (size_t attempt = 0; attempt <= config_.max_retries; ++attempt) {
    const std::string reply = WithRetries([&] {
      ++verify_calls_;
      return verifier_.Verify(request);
    });
    if (auto verdict = ParseVerdict(reply, labels_)) {
      return *verdict == doc.label();
    }
    ++parse_failures_;
  }
  LogWarning("verifier reply for \"" + doc.id() +
             "\" names no single label; candidate rejected");
  return false;
}

std::vector<RewriteCandidate> Rewriter::Rewrite(const LabeledDocument& doc) {
  std::vector<RewriteCandidate> result;
  for (auto& text : GenerateCandidates(doc)) {
    RewriteCandidate candidate;
    candidate.verified = VerifyLabel(text, doc);
    candidate.text = std::move(text);
    result.push_back(std::move(candidate));
  }
  return result;
}

CallCounters Rewriter::counters() const {
  CallCounters c;
  c.generate_calls = generate_calls_;
  c.verify_calls = verify_calls_;
  c.transport_failures = transport_failures_;
  c.parse_failures = parse_failures_;
  return c;
}

void ScoreCandidates(const LabeledDocument& doc,
                     std::vector<RewriteCandidate>& candidates,
                     const CorpusStats& stats, const ClassSums& sums,
                     const PositionalEncoder& encoder,
                     const TokenizerConfig& tokenizer) {
  for (auto& candidate : candidates) {
    candidate.score.reset();
    if (!candidate.verified) continue;
    const auto tokens = Tokenize(candidate.text, tokenizer);
    if (tokens.size() < 2) continue;
    const ReplacementView view(stats, doc.tokens(), tokens);
    const auto embedding = ComputeSurfaceEmbedding(tokens, view, encoder);
    if (embedding.is_zero()) continue;
    candidate.score = sums.ShortcutScore(doc.label(), embedding.unit);
  }
}

ReplacementDecision SelectReplacement(double original_score,
                                      const std::vector<RewriteCandidate>& accepted) {
  const RewriteCandidate* best = nullptr;
  for (const auto& candidate : accepted) {
    if (!candidate.verified || !candidate.score) continue;
    if (best == nullptr || *candidate.score < *best->score ||
        (*candidate.score == *best->score && candidate.text < best->text)) {
      best = &candidate;
    }
  }
  ReplacementDecision decision;
  if (best != nullptr && *best->score < original_score) {
    decision.replace = true;
    decision.text = best->text;
    decision.score = *best->score;
  }
  return decision;
}

ReplacementDecision SelectReplacement(const LabeledDocument& doc,
                                      std::vector<RewriteCandidate> accepted,
                                      const Dataset& dataset,
                                      const CorpusStats& stats,
                                      const EmbeddingMap& embeddings,
                                      size_t lambda) {
  const double original = ShortcutScore(doc, dataset, embeddings);
  const auto sums = ClassSums::Build(dataset, embeddings, lambda);
  ScoreCandidates(doc, accepted, stats, sums, PositionalEncoder(lambda),
                  dataset.tokenizer());
  return SelectReplacement(original, accepted);
}

}  // namespace razor
