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

#ifndef RAZOR_PIPELINE_H_
#define RAZOR_PIPELINE_H_

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "razor/checkpoint.h"
#include "razor/corpus.h"
#include "razor/rewriter.h"
#include "razor/run_config.h"
#include "razor/surface.h"
#include "razor/trace.h"

namespace razor {

struct ScoredDocument {
  std::string id;
  LabelId label = 0;
  // Empty for documents that cannot be scored.
  std::optional<double> gamma;
  // "ok", "degenerate" (< 2 tokens) or "zero_embedding".
  std::string status;
};

// Every document, scoreable ones first by descending shortcut score (ties
// by ascending id), then the unscoreable ones in dataset order.
std::vector<ScoredDocument> ScoreDocuments(const Dataset& dataset,
                                           const EmbeddingMap& embeddings);

// Ids of the k highest-scoring documents. Fewer than k scoreable documents
// selects all of them and logs a warning.
std::vector<std::string> RankAndSelect(const Dataset& dataset,
                                       const EmbeddingMap& embeddings, size_t k);

struct IterationOutcome {
  Dataset dataset;
  IterationTrace trace;
};

// One round: fresh statistics and embeddings, rank, rewrite the top k,
// and commit improving replacements in rank order. A replacement is
// committed only if it lowers the document's score and does not lower the
// alignment objective, measured both on the selection-time embeddings and
// on statistics updated for the replacement. Backend failure leaves the
// dataset untouched and marks the trace "aborted".
IterationOutcome RunIteration(const Dataset& dataset, const RunConfig& config,
                              Rewriter& rewriter, int iteration,
                              RewriteJournal* journal = nullptr);

struct RunResult {
  Dataset dataset;
  std::vector<IterationTrace> traces;
  // "converged" or "max_iterations".
  std::string stop_reason;
  std::string stop_detail;
};

struct RunOptions {
  // Enables snapshots, the trace file and resume.
  std::optional<std::filesystem::path> checkpoint_dir;
};

// Iterates RunIteration until the objective improves by less than epsilon
// (relative), an iteration replaces nothing, or max_iterations is reached.
// Throws kBackendTransport after recording an aborted iteration; rerunning
// with the same checkpoint directory resumes without repeating finished
// backend requests.
RunResult RunRazor(const Dataset& dataset, const RunConfig& config,
                   Rewriter& rewriter, const RunOptions& options = {});

}  // namespace razor

#endif  // RAZOR_PIPELINE_H_
