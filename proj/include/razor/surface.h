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

#ifndef RAZOR_SURFACE_H_
#define RAZOR_SURFACE_H_

#include <cstddef>
#include <iosfwd>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "razor/corpus.h"

namespace razor {

inline constexpr size_t kDefaultLambda = 64;

// Document frequencies over the mutable texts of one dataset snapshot.
class CorpusStats {
 public:
  static CorpusStats Build(const Dataset& dataset, int generation = 0);
  static CorpusStats Build(const std::vector<std::vector<std::string>>& docs,
                           int generation = 0);

  size_t doc_count() const { return doc_count_; }
  // Number of documents containing `token`; 0 when unseen.
  size_t DocumentFrequency(std::string_view token) const;
  size_t vocabulary_size() const { return doc_frequency_.size(); }
  int generation_stamp() const { return generation_; }

  // Swaps one document's token set for another's in place. The document
  // count is unchanged.
  void ApplyReplacement(const std::vector<std::string>& old_tokens,
                        const std::vector<std::string>& new_tokens);

  bool operator==(const CorpusStats&) const = default;

 private:
  size_t doc_count_ = 0;
  std::unordered_map<std::string, size_t> doc_frequency_;
  int generation_ = 0;
};

// Read-only view of `base` as if one document's tokens had been replaced.
// Used to score rewrite candidates against the current corpus.
class ReplacementView {
 public:
  ReplacementView(const CorpusStats& base,
                  const std::vector<std::string>& old_tokens,
                  const std::vector<std::string>& new_tokens);

  size_t doc_count() const { return base_.doc_count(); }
  size_t DocumentFrequency(std::string_view token) const;

 private:
  const CorpusStats& base_;
  std::unordered_set<std::string> removed_;
  std::unordered_set<std::string> added_;
};

// (n(t,d)/|d|) * ln(|D| / df(t)). Zero when the token does not occur in the
// document. Throws kStaleStats if the token occurs in the document but the
// statistics have never seen it.
double TfIdfScore(std::string_view token, const LabeledDocument& doc,
                  const CorpusStats& stats);

// Sinusoidal encoding: component k is sin(pos / 10000^(2k/lambda)) for even
// k and cos(...) for odd k. Throws kInvalidConfig for odd or zero lambda.
std::vector<double> PositionalEncoding(size_t pos, size_t lambda);

// Caches the per-dimension frequencies for a fixed lambda.
class PositionalEncoder {
 public:
  explicit PositionalEncoder(size_t lambda);

  size_t lambda() const { return inverse_frequency_.size(); }
  // Adds scale * tau(pos) to `out`.
  void Accumulate(size_t pos, double scale, std::span<double> out) const;
  std::vector<double> Encode(size_t pos) const;

 private:
  std::vector<double> inverse_frequency_;
};

struct SurfaceEmbedding {
  std::vector<double> vector;
  // L2-normalized copy of `vector`; empty when the vector is exactly zero.
  std::vector<double> unit;

  bool is_zero() const { return unit.empty(); }
};

// Fills `unit` from `vector`.
SurfaceEmbedding MakeEmbedding(std::vector<double> vector);

// Sum over positions j of S(t_j) * tau(j), divided by (|d| - 1). Throws
// kDegenerateDocument for documents with fewer than two tokens.
SurfaceEmbedding ComputeSurfaceEmbedding(const LabeledDocument& doc,
                                         const CorpusStats& stats,
                                         size_t lambda = kDefaultLambda);
SurfaceEmbedding ComputeSurfaceEmbedding(const std::vector<std::string>& tokens,
                                         const CorpusStats& stats,
                                         const PositionalEncoder& encoder);
SurfaceEmbedding ComputeSurfaceEmbedding(const std::vector<std::string>& tokens,
                                         const ReplacementView& stats,
                                         const PositionalEncoder& encoder);

using EmbeddingMap = std::unordered_map<std::string, SurfaceEmbedding>;

// Embeds every document with at least two tokens; shorter ones are left
// out of the map (and therefore out of all scoring).
EmbeddingMap ComputeEmbeddings(const Dataset& dataset, const CorpusStats& stats,
                               size_t lambda = kDefaultLambda, int jobs = 1);

// One JSON object per line: {"id": ..., "vector": [...]}, dataset order.
void WriteEmbeddings(const Dataset& dataset, const EmbeddingMap& embeddings,
                     std::ostream& out);

// Ids of all documents whose label differs from doc's. Throws kNoContrast
// when there are none.
std::vector<std::string> OppositeSet(const LabeledDocument& doc,
                                     const Dataset& dataset);

// Running per-class sums of unit embeddings. Every cosine-based quantity
// (shortcut score, alignment objective and its change under a replacement)
// reduces to dot products against these sums.
class ClassSums {
 public:
  ClassSums(std::vector<LabelId> classes, size_t lambda);
  static ClassSums Build(const Dataset& dataset, const EmbeddingMap& embeddings,
                         size_t lambda);

  void Add(LabelId label, std::span<const double> unit);
  void Remove(LabelId label, std::span<const double> unit);

  size_t Count(LabelId label) const;
  size_t OppositeCount(LabelId label) const;
  // unit . sum of all other classes' unit vectors.
  double OppositeDot(LabelId label, std::span<const double> unit) const;

  // 1 - unit . (opposite sum) / (opposite count), clamped to [0, 2].
  // Throws kNoContrast when no opposite-class embedding is available.
  double ShortcutScore(LabelId label, std::span<const double> unit) const;

  // Sum over unordered class pairs of S_a . S_b. Throws kObjectiveUndefined
  // if a tracked class has no usable embedding.
  double Objective() const;

  // Exact objective change when one unit vector of `label` is swapped.
  // Either span may be empty (zero embedding).
  double ObjectiveDelta(LabelId label, std::span<const double> old_unit,
                        std::span<const double> new_unit) const;

  bool AllClassesPopulated() const;
  const std::vector<LabelId>& classes() const { return classes_; }

 private:
  size_t Slot(LabelId label) const;

  std::vector<LabelId> classes_;
  std::vector<std::vector<double>> sums_;
  std::vector<size_t> counts_;
  std::vector<double> total_;
  size_t lambda_;
};

// Shortcut score of one document, computed through the class sums.
double ShortcutScore(const LabeledDocument& doc, const Dataset& dataset,
                     const EmbeddingMap& embeddings);

// Summed cross-class cosine similarity; zero embeddings are excluded.
double ClassAlignmentObjective(const Dataset& dataset,
                               const EmbeddingMap& embeddings);

}  // namespace razor

#endif  // RAZOR_SURFACE_H_
