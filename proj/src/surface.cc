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

#include "razor/surface.h"

#include <cmath>
#include <ostream>
#include <set>

#include "json.hpp"
#include "razor/error.h"
#include "razor/parallel.h"

namespace razor {
namespace {

template <typename Stats>
SurfaceEmbedding EmbedTokens(const std::vector<std::string>& tokens,
                             const Stats& stats,
                             const PositionalEncoder& encoder) {
  const size_t length = tokens.size();
  if (length < 2) {
    throw Error(ErrorCode::kDegenerateDocument,
                "document has " + std::to_string(length) +
                    " token(s); the surface embedding needs at least 2");
  }
  std::unordered_map<std::string_view, size_t> counts;
  for (const auto& t : tokens) ++counts[t];

  const double doc_count = static_cast<double>(stats.doc_count());
  std::vector<double> vector(encoder.lambda(), 0.0);
  for (size_t j = 0; j < length; ++j) {
    const size_t df = stats.DocumentFrequency(tokens[j]);
    if (df == 0) {
      throw Error(ErrorCode::kStaleStats,
                  "token \"" + tokens[j] + "\" is missing from corpus stats");
    }
    const double tf = static_cast<double>(counts[tokens[j]]) / length;
    const double score = tf * std::log(doc_count / static_cast<double>(df));
    if (score != 0.0) encoder.Accumulate(j, score, vector);
  }
  const double denominator = static_cast<double>(length - 1);
  for (double& v : vector) v /= denominator;
  return MakeEmbedding(std::move(vector));
}

double Dot(std::span<const double> a, std::span<const double> b) {
  double sum = 0.0;
  for (size_t i = 0; i < a.size(); ++i) sum += a[i] * b[i];
  return sum;
}

std::set<std::string> Unique(const std::vector<std::string>& tokens) {
  return {tokens.begin(), tokens.end()};
}

}  // namespace

CorpusStats CorpusStats::Build(const Dataset& dataset, int generation) {
  CorpusStats stats;
  stats.doc_count_ = dataset.size();
  stats.generation_ = generation;
  for (const auto& doc : dataset.documents()) {
    for (const auto& token : Unique(doc.tokens())) ++stats.doc_frequency_[token];
  }
  return stats;
}

CorpusStats CorpusStats::Build(const std::vector<std::vector<std::string>>& docs,
                               int generation) {
  CorpusStats stats;
  stats.doc_count_ = docs.size();
  stats.generation_ = generation;
  for (const auto& doc : docs) {
    for (const auto& token : Unique(doc)) ++stats.doc_frequency_[token];
  }
  return stats;
}

size_t CorpusStats::DocumentFrequency(std::string_view token) const {
  auto it = doc_frequency_.find(std::string(token));
  return it == doc_frequency_.end() ? 0 : it->second;
}

void CorpusStats::ApplyReplacement(const std::vector<std::string>& old_tokens,
                                   const std::vector<std::string>& new_tokens) {
  const auto removed = Unique(old_tokens);
  const auto added = Unique(new_tokens);
  for (const auto& token : removed) {
    if (added.count(token)) continue;
    auto it = doc_frequency_.find(token);
    if (it == doc_frequency_.end()) {
      throw Error(ErrorCode::kStaleStats,
                  "token \"" + token + "\" is missing from corpus stats");
    }
    if (--it->second == 0) doc_frequency_.erase(it);
  }
  for (const auto& token : added) {
    if (!removed.count(token)) ++doc_frequency_[token];
  }
}

ReplacementView::ReplacementView(const CorpusStats& base,
                                 const std::vector<std::string>& old_tokens,
                                 const std::vector<std::string>& new_tokens)
    : base_(base) {
  const auto old_set = Unique(old_tokens);
  const auto new_set = Unique(new_tokens);
  for (const auto& t : old_set) {
    if (!new_set.count(t)) removed_.insert(t);
  }
  for (const auto& t : new_set) {
    if (!old_set.count(t)) added_.insert(t);
  }
}

size_t ReplacementView::DocumentFrequency(std::string_view token) const {
  std::string key(token);
  size_t df = base_.DocumentFrequency(key);
  if (removed_.count(key) && df > 0) --df;
  if (added_.count(key)) ++df;
  return df;
}

double TfIdfScore(std::string_view token, const LabeledDocument& doc,
                  const CorpusStats& stats) {
  const auto& tokens = doc.tokens();
  size_t count = 0;
  for (const auto& t : tokens) count += (t == token);
  if (count == 0) return 0.0;
  const size_t df = stats.DocumentFrequency(token);
  if (df == 0) {
    throw Error(ErrorCode::kStaleStats,
                "token \"" + std::string(token) + "\" is missing from corpus stats");
  }
  return static_cast<double>(count) / static_cast<double>(tokens.size()) *
         std::log(static_cast<double>(stats.doc_count()) / static_cast<double>(df));
}

PositionalEncoder::PositionalEncoder(size_t lambda) {
  if (lambda == 0 || lambda % 2 != 0) {
    throw Error(ErrorCode::kInvalidConfig,
                "positional encoding dimension must be even and positive, got " +
                    std::to_string(lambda));
  }
  inverse_frequency_.resize(lambda);
  for (size_t k = 0; k < lambda; ++k) {
    inverse_frequency_[k] =
        std::pow(10000.0, 2.0 * static_cast<double>(k) / static_cast<double>(lambda));
  }
}

void PositionalEncoder::Accumulate(size_t pos, double scale,
                                   std::span<double> out) const {
  const double p = static_cast<double>(pos);
  for (size_t k = 0; k < inverse_frequency_.size(); ++k) {
    const double angle = p / inverse_frequency_[k];
    out[k] += scale * ((k % 2 == 0) ? std::sin(angle) : std::cos(angle));
  }
}

std::vector<double> PositionalEncoder::Encode(size_t pos) const {
  std::vector<double> out(lambda(), 0.0);
  Accumulate(pos, 1.0, out);
  return out;
}

std::vector<double> PositionalEncoding(size_t pos, size_t lambda) {
  return PositionalEncoder(lambda).Encode(pos);
}

SurfaceEmbedding MakeEmbedding(std::vector<double> vector) {
  SurfaceEmbedding embedding;
  double norm = 0.0;
  for (double v : vector) norm += v * v;
  norm = std::sqrt(norm);
  if (norm > 0.0) {
    embedding.unit.resize(vector.size());
    for (size_t i = 0; i < vector.size(); ++i) embedding.unit[i] = vector[i] / norm;
  }
  embedding.vector = std::move(vector);
  return embedding;
}

SurfaceEmbedding ComputeSurfaceEmbedding(const LabeledDocument& doc,
                                         const CorpusStats& stats, size_t lambda) {
  return EmbedTokens(doc.tokens(), stats, PositionalEncoder(lambda));
}

SurfaceEmbedding ComputeSurfaceEmbedding(const std::vector<std::string>& tokens,
                                         const CorpusStats& stats,
                                         const PositionalEncoder& encoder) {
  return EmbedTokens(tokens, stats, encoder);
}

SurfaceEmbedding ComputeSurfaceEmbedding(const std::vector<std::string>& tokens,
                                         const ReplacementView& stats,
                                         const PositionalEncoder& encoder) {
  return EmbedTokens(tokens, stats, encoder);
}

EmbeddingMap ComputeEmbeddings(const Dataset& dataset, const CorpusStats& stats,
                               size_t lambda, int jobs) {
  const PositionalEncoder encoder(lambda);
  std::vector<std::optional<SurfaceEmbedding>> slots(dataset.size());
  ParallelFor(dataset.size(), jobs, [&](size_t i) {
    const auto& tokens = dataset[i].tokens();
    if (tokens.size() >= 2) slots[i] = EmbedTokens(tokens, stats, encoder);
  });
  EmbeddingMap embeddings;
  embeddings.reserve(dataset.size());
  for (size_t i = 0; i < slots.size(); ++i) {
    if (slots[i]) embeddings.emplace(dataset[i].id(), std::move(*slots[i]));
  }
  return embeddings;
}

void WriteEmbeddings(const Dataset& dataset, const EmbeddingMap& embeddings,
                     std::ostream& out) {
  for (const auto& doc : dataset.documents()) {
    auto it = embeddings.find(doc.id());
    if (it == embeddings.end()) continue;
    nlohmann::ordered_json row;
    row["id"] = doc.id();
    row["vector"] = it->second.vector;
    out << row.dump() << '\n';
  }
}

std::vector<std::string> OppositeSet(const LabeledDocument& doc,
                                     const Dataset& dataset) {
  std::vector<std::string> ids;
  for (const auto& other : dataset.documents()) {
    if (other.label() != doc.label()) ids.push_back(other.id());
  }
  if (ids.empty()) {
    throw Error(ErrorCode::kNoContrast,
                "no document carries a label different from \"" + doc.id() + "\"");
  }
  return ids;
}

ClassSums::ClassSums(std::vector<LabelId> classes, size_t lambda)
    : classes_(std::move(classes)),
      sums_(classes_.size(), std::vector<double>(lambda, 0.0)),
      counts_(classes_.size(), 0),
      total_(lambda, 0.0),
      lambda_(lambda) {}

ClassSums ClassSums::Build(const Dataset& dataset, const EmbeddingMap& embeddings,
                           size_t lambda) {
  std::set<LabelId> present;
  for (const auto& doc : dataset.documents()) present.insert(doc.label());
  ClassSums sums({present.begin(), present.end()}, lambda);
  for (const auto& doc : dataset.documents()) {
    auto it = embeddings.find(doc.id());
    if (it == embeddings.end() || it->second.is_zero()) continue;
    if (it->second.unit.size() != lambda) {
      throw Error(ErrorCode::kDimensionMismatch,
                  "embedding of \"" + doc.id() + "\" has dimension " +
                      std::to_string(it->second.unit.size()));
    }
    sums.Add(doc.label(), it->second.unit);
  }
  return sums;
}

size_t ClassSums::Slot(LabelId label) const {
  for (size_t i = 0; i < classes_.size(); ++i) {
    if (classes_[i] == label) return i;
  }
  throw Error(ErrorCode::kUnknownLabel,
              "label " + std::to_string(label) + " is not tracked");
}

void ClassSums::Add(LabelId label, std::span<const double> unit) {
  if (unit.empty()) return;
  const size_t s = Slot(label);
  for (size_t i = 0; i < lambda_; ++i) {
    sums_[s][i] += unit[i];
    total_[i] += unit[i];
  }
  ++counts_[s];
}

void ClassSums::Remove(LabelId label, std::span<const double> unit) {
  if (unit.empty()) return;
  const size_t s = Slot(label);
  for (size_t i = 0; i < lambda_; ++i) {
    sums_[s][i] -= unit[i];
    total_[i] -= unit[i];
  }
  --counts_[s];
}

size_t ClassSums::Count(LabelId label) const { return counts_[Slot(label)]; }

size_t ClassSums::OppositeCount(LabelId label) const {
  const size_t s = Slot(label);
  size_t total = 0;
  for (size_t i = 0; i < counts_.size(); ++i) {
    if (i != s) total += counts_[i];
  }
  return total;
}

double ClassSums::OppositeDot(LabelId label, std::span<const double> unit) const {
  const size_t s = Slot(label);
  double sum = 0.0;
  for (size_t c = 0; c < sums_.size(); ++c) {
    if (c != s) sum += Dot(unit, sums_[c]);
  }
  return sum;
}

double ClassSums::ShortcutScore(LabelId label, std::span<const double> unit) const {
  const size_t opposite = OppositeCount(label);
  if (opposite == 0) {
    throw Error(ErrorCode::kNoContrast,
                "no scoreable document with a label other than " +
                    std::to_string(label));
  }
  const double gamma =
      1.0 - OppositeDot(label, unit) / static_cast<double>(opposite);
  return std::clamp(gamma, 0.0, 2.0);
}

bool ClassSums::AllClassesPopulated() const {
  for (size_t c : counts_) {
    if (c == 0) return false;
  }
  return true;
}

double ClassSums::Objective() const {
  for (size_t c = 0; c < classes_.size(); ++c) {
    if (counts_[c] == 0) {
      throw Error(ErrorCode::kObjectiveUndefined,
                  "class " + std::to_string(classes_[c]) +
                      " has no non-zero surface embedding");
    }
  }
  double objective = 0.0;
  for (size_t a = 0; a < sums_.size(); ++a) {
    for (size_t b = a + 1; b < sums_.size(); ++b) {
      objective += Dot(sums_[a], sums_[b]);
    }
  }
  return objective;
}

double ClassSums::ObjectiveDelta(LabelId label, std::span<const double> old_unit,
                                 std::span<const double> new_unit) const {
  double delta = 0.0;
  if (!new_unit.empty()) delta += OppositeDot(label, new_unit);
  if (!old_unit.empty()) delta -= OppositeDot(label, old_unit);
  return delta;
}

double ShortcutScore(const LabeledDocument& doc, const Dataset& dataset,
                     const EmbeddingMap& embeddings) {
  OppositeSet(doc, dataset);  // throws kNoContrast on a single-label dataset
  auto it = embeddings.find(doc.id());
  if (it == embeddings.end()) {
    throw Error(ErrorCode::kDegenerateDocument,
                "document \"" + doc.id() + "\" has no surface embedding");
  }
  if (it->second.is_zero()) {
    throw Error(ErrorCode::kZeroEmbedding,
                "document \"" + doc.id() + "\" has a zero surface embedding");
  }
  const auto sums =
      ClassSums::Build(dataset, embeddings, it->second.unit.size());
  return sums.ShortcutScore(doc.label(), it->second.unit);
}

double ClassAlignmentObjective(const Dataset& dataset,
                               const EmbeddingMap& embeddings) {
  size_t lambda = 0;
  for (const auto& [id, e] : embeddings) {
    if (!e.is_zero()) {
      lambda = e.unit.size();
      break;
    }
  }
  if (lambda == 0) {
    throw Error(ErrorCode::kObjectiveUndefined, "no non-zero surface embedding");
  }
  return ClassSums::Build(dataset, embeddings, lambda).Objective();
}

}  // namespace razor
