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

#ifndef RAZOR_CHECKPOINT_H_
#define RAZOR_CHECKPOINT_H_

#include <filesystem>
#include <map>
#include <mutex>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "razor/corpus.h"
#include "razor/rewriter.h"
#include "razor/run_config.h"
#include "razor/trace.h"

namespace razor {

// Append-only log of finished rewrite requests, keyed by (iteration,
// document id, source text). A resumed run replays entries from here
// instead of calling the backend again.
class RewriteJournal {
 public:
  // In-memory only.
  RewriteJournal() = default;
  // Loads existing entries from `path` and appends new ones to it.
  explicit RewriteJournal(std::filesystem::path path);

  std::optional<std::vector<RewriteCandidate>> Lookup(
      int iteration, const LabeledDocument& doc) const;
  void Record(int iteration, const LabeledDocument& doc,
              const std::vector<RewriteCandidate>& candidates);
  size_t size() const;

 private:
  struct Entry {
    std::string source_text;
    std::vector<RewriteCandidate> candidates;
  };

  std::optional<std::filesystem::path> path_;
  mutable std::mutex mu_;
  std::map<std::pair<int, std::string>, Entry> entries_;
};

// Checkpoint directory layout:
//   run.json              config and input fingerprints
//   snapshot_NNNN.jsonl   dataset after iteration NNNN (0000 = input)
//   trace.json            list of iteration traces
//   journal.jsonl         rewrite results (see RewriteJournal)
class CheckpointStore {
 public:
  explicit CheckpointStore(std::filesystem::path dir);

  bool HasRun() const;
  void Initialize(const RunConfig& config, const Dataset& input);
  // Throws kCheckpointMismatch if the directory belongs to another run.
  void CheckCompatible(const RunConfig& config, const Dataset& input) const;

  void SaveSnapshot(int iteration, const Dataset& dataset) const;
  Dataset LoadSnapshot(int iteration, const Dataset& input) const;
  void SaveTraces(const std::vector<IterationTrace>& traces) const;
  std::vector<IterationTrace> LoadTraces() const;

  RewriteJournal& journal() { return journal_; }
  const std::filesystem::path& dir() const { return dir_; }
  std::filesystem::path SnapshotPath(int iteration) const;

 private:
  std::filesystem::path dir_;
  RewriteJournal journal_;
};

// Stable fingerprint of a dataset's serialized form.
uint64_t DatasetFingerprint(const Dataset& dataset);

}  // namespace razor

#endif  // RAZOR_CHECKPOINT_H_
