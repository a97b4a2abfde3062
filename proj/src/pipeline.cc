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

#include "razor/pipeline.h"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <set>
#include <unordered_set>

#include "razor/error.h"
#include "razor/logging.h"
#include "razor/parallel.h"

namespace razor {
namespace {

std::set<std::string> UniqueTokens(const std::vector<std::string>& tokens) {
  return {tokens.begin(), tokens.end()};
}

// Corpus statistics, unit embeddings and class sums that follow committed
// replacements exactly, refreshing only the documents whose TF-IDF weights
// a replacement can change.
class LiveSurface {
 public:
  LiveSurface(const Dataset& dataset, CorpusStats stats,
              const EmbeddingMap& embeddings, ClassSums sums,
              const PositionalEncoder& encoder)
      : stats_(std::move(stats)), sums_(std::move(sums)), encoder_(encoder) {
    tokens_.reserve(dataset.size());
    for (size_t i = 0; i < dataset.size(); ++i) {
      const auto& doc = dataset[i];
      tokens_.push_back(doc.tokens());
      labels_.push_back(doc.label());
      auto it = embeddings.find(doc.id());
      units_.push_back(it == embeddings.end() ? std::vector<double>{}
                                              : it->second.unit);
      for (const auto& t : UniqueTokens(doc.tokens())) postings_[t].insert(i);
    }
  }

  double Objective() const { return sums_.Objective(); }

  // Applies the replacement if the objective does not decrease and every
  // class keeps a usable embedding; otherwise leaves the state unchanged.
  bool TryReplace(size_t index, const std::vector<std::string>& new_tokens) {
    const std::vector<std::string> old_tokens = tokens_[index];
    const auto old_set = UniqueTokens(old_tokens);
    const auto new_set = UniqueTokens(new_tokens);

    std::set<size_t> affected{index};
    for (const auto& t : old_set) {
      if (new_set.count(t)) continue;
      for (size_t d : postings_[t]) affected.insert(d);
    }
    for (const auto& t : new_set) {
      if (old_set.count(t)) continue;
      if (auto it = postings_.find(t); it != postings_.end()) {
        affected.insert(it->second.begin(), it->second.end());
      }
    }

    const double before = sums_.Objective();
    const ClassSums saved_sums = sums_;
    std::vector<std::pair<size_t, std::vector<double>>> saved_units;
    for (size_t d : affected) saved_units.emplace_back(d, units_[d]);

    Apply(index, old_tokens, new_tokens, old_set, new_set);
    for (size_t d : affected) Refresh(d);

    if (sums_.AllClassesPopulated() && sums_.Objective() >= before) return true;

    Apply(index, new_tokens, old_tokens, new_set, old_set);
    for (auto& [d, unit] : saved_units) units_[d] = std::move(unit);
    sums_ = saved_sums;
    return false;
  }

 private:
  void Apply(size_t index, const std::vector<std::string>& from,
             const std::vector<std::string>& to, const std::set<std::string>& from_set,
             const std::set<std::string>& to_set) {
    stats_.ApplyReplacement(from, to);
    for (const auto& t : from_set) {
      if (to_set.count(t)) continue;
      auto it = postings_.find(t);
      it->second.erase(index);
      if (it->second.empty()) postings_.erase(it);
    }
    for (const auto& t : to_set) {
      if (!from_set.count(t)) postings_[t].insert(index);
    }
    tokens_[index] = to;
  }

  void Refresh(size_t d) {
    sums_.Remove(labels_[d], units_[d]);
    units_[d].clear();
    if (tokens_[d].size() >= 2) {
      units_[d] = ComputeSurfaceEmbedding(tokens_[d], stats_, encoder_).unit;
    }
    sums_.Add(labels_[d], units_[d]);
  }

  std::vector<std::vector<std::string>> tokens_;
  std::vector<LabelId> labels_;
  std::vector<std::vector<double>> units_;
  CorpusStats stats_;
  std::unordered_map<std::string, std::set<size_t>> postings_;
  ClassSums sums_;
  const PositionalEncoder& encoder_;
};

struct StopDecision {
  std::string reason;
  std::string detail;
};

std::optional<StopDecision> ShouldStop(const IterationTrace& trace,
                                       const RunConfig& config) {
  if (trace.replaced_ids.empty()) {
    return StopDecision{"converged", "no replacements"};
  }
  const double improvement = trace.objective_after - trace.objective_before;
  if (improvement < config.epsilon * std::max(std::abs(trace.objective_before), 1.0)) {
    return StopDecision{"converged", "improvement below epsilon"};
  }
  if (trace.iteration >= config.max_iterations) {
    return StopDecision{"max_iterations", "reached max_iterations"};
  }
  return std::nullopt;
}

double FreshObjective(const Dataset& dataset, const RunConfig& config) {
  const auto stats = CorpusStats::Build(dataset);
  const auto embeddings = ComputeEmbeddings(dataset, stats, config.lambda, config.jobs);
  return ClassSums::Build(dataset, embeddings, config.lambda).Objective();
}

}  // namespace

std::vector<ScoredDocument> ScoreDocuments(const Dataset& dataset,
                                           const EmbeddingMap& embeddings) {
  size_t lambda = 0;
  for (const auto& [id, e] : embeddings) lambda = std::max(lambda, e.vector.size());
  std::vector<ScoredDocument> scored;
  std::vector<ScoredDocument> unscoreable;
  if (lambda == 0) {
    for (const auto& doc : dataset.documents()) {
      unscoreable.push_back({doc.id(), doc.label(), std::nullopt,
                             embeddings.count(doc.id()) ? "zero_embedding" : "degenerate"});
    }
    return unscoreable;
  }
  const auto sums = ClassSums::Build(dataset, embeddings, lambda);
  for (const auto& doc : dataset.documents()) {
    auto it = embeddings.find(doc.id());
    if (it == embeddings.end()) {
      unscoreable.push_back({doc.id(), doc.label(), std::nullopt, "degenerate"});
    } else if (it->second.is_zero()) {
      unscoreable.push_back({doc.id(), doc.label(), std::nullopt, "zero_embedding"});
    } else {
      scored.push_back({doc.id(), doc.label(),
                        sums.ShortcutScore(doc.label(), it->second.unit), "ok"});
    }
  }
  std::sort(scored.begin(), scored.end(),
            [](const ScoredDocument& a, const ScoredDocument& b) {
              if (*a.gamma != *b.gamma) return *a.gamma > *b.gamma;
              return a.id < b.id;
            });
  scored.insert(scored.end(), unscoreable.begin(), unscoreable.end());
  return scored;
}

std::vector<std::string> RankAndSelect(const Dataset& dataset,
                                       const EmbeddingMap& embeddings, size_t k) {
  if (k == 0) throw Error(ErrorCode::kInvalidConfig, "k must be positive");
  std::vector<std::string> ids;
  for (const auto& row : ScoreDocuments(dataset, embeddings)) {
    if (!row.gamma) break;
    if (ids.size() == k) break;
    ids.push_back(row.id);
  }
  if (ids.size() < k) {
    LogWarning("only " + std::to_string(ids.size()) + " scoreable documents; k = " +
               std::to_string(k) + " selects all of them");
  }
  return ids;
}

IterationOutcome RunIteration(const Dataset& dataset, const RunConfig& config,
                              Rewriter& rewriter, int iteration,
                              RewriteJournal* journal) {
  const auto started = std::chrono::steady_clock::now();
  const size_t k = config.k.Resolve(dataset.size());
  const PositionalEncoder encoder(config.lambda);

  IterationTrace trace;
  trace.iteration = iteration;

  const CorpusStats stats = CorpusStats::Build(dataset, iteration);
  const EmbeddingMap embeddings =
      ComputeEmbeddings(dataset, stats, config.lambda, config.jobs);
  const ClassSums sums = ClassSums::Build(dataset, embeddings, config.lambda);
  trace.objective_before = sums.Objective();
  for (const auto& [id, e] : embeddings) trace.scoreable_documents += !e.is_zero();

  trace.selected_ids = RankAndSelect(dataset, embeddings, k);
  std::vector<size_t> selected;
  for (const auto& id : trace.selected_ids) selected.push_back(*dataset.IndexOf(id));

  // Rewrite requests run concurrently; results land in per-slot storage.
  const CallCounters calls_before = rewriter.counters();
  std::vector<std::vector<RewriteCandidate>> results(selected.size());
  std::atomic<uint64_t> journal_hits{0};
  try {
    ParallelFor(selected.size(), config.jobs, [&](size_t s) {
      const auto& doc = dataset[selected[s]];
      if (journal != nullptr) {
        if (auto cached = journal->Lookup(iteration, doc)) {
          results[s] = std::move(*cached);
          ++journal_hits;
          return;
        }
      }
      results[s] = rewriter.Rewrite(doc);
      if (journal != nullptr) journal->Record(iteration, doc, results[s]);
    });
  } catch (const Error& e) {
    if (e.code() != ErrorCode::kBackendTransport) throw;
    trace.status = "aborted";
    trace.error = e.what();
    trace.objective_after = trace.objective_before;
    trace.selection_objective_after = trace.objective_before;
    trace.llm_calls = rewriter.counters();
    trace.llm_calls.generate_calls -= calls_before.generate_calls;
    trace.llm_calls.verify_calls -= calls_before.verify_calls;
    trace.llm_calls.transport_failures -= calls_before.transport_failures;
    trace.llm_calls.parse_failures -= calls_before.parse_failures;
    trace.llm_calls.journal_hits = journal_hits;
    trace.wall_time_seconds = std::chrono::duration<double>(
                                  std::chrono::steady_clock::now() - started)
                                  .count();
    return {dataset, trace};
  }

  // Commit in rank order against both the frozen and the live surface.
  ClassSums frozen = sums;
  LiveSurface live(dataset, stats, embeddings, sums, encoder);
  std::vector<LabeledDocument> documents = dataset.documents();
  for (size_t s = 0; s < selected.size(); ++s) {
    const LabeledDocument& doc = dataset[selected[s]];
    const auto& old_unit = embeddings.at(doc.id()).unit;
    const double original = sums.ShortcutScore(doc.label(), old_unit);

    ScoreCandidates(doc, results[s], stats, sums, encoder, dataset.tokenizer());
    const ReplacementDecision decision = SelectReplacement(original, results[s]);
    bool committed = false;
    if (decision.replace) {
      const auto new_tokens = Tokenize(decision.text, dataset.tokenizer());
      const ReplacementView view(stats, doc.tokens(), new_tokens);
      const auto new_unit = ComputeSurfaceEmbedding(new_tokens, view, encoder).unit;
      if (frozen.ObjectiveDelta(doc.label(), old_unit, new_unit) >= 0.0 &&
          live.TryReplace(selected[s], new_tokens)) {
        frozen.Remove(doc.label(), old_unit);
        frozen.Add(doc.label(), new_unit);
        documents[selected[s]] = doc.WithText(decision.text, dataset.tokenizer());
        committed = true;
      }
    }
    (committed ? trace.replaced_ids : trace.kept_ids).push_back(doc.id());
  }

  Dataset next = dataset.WithDocuments(std::move(documents));
  trace.selection_objective_after = frozen.Objective();
  trace.objective_after =
      trace.replaced_ids.empty() ? trace.objective_before : FreshObjective(next, config);

  const CallCounters calls_after = rewriter.counters();
  trace.llm_calls.generate_calls = calls_after.generate_calls - calls_before.generate_calls;
  trace.llm_calls.verify_calls = calls_after.verify_calls - calls_before.verify_calls;
  trace.llm_calls.transport_failures =
      calls_after.transport_failures - calls_before.transport_failures;
  trace.llm_calls.parse_failures = calls_after.parse_failures - calls_before.parse_failures;
  trace.llm_calls.journal_hits = journal_hits;
  trace.wall_time_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
  return {std::move(next), std::move(trace)};
}

RunResult RunRazor(const Dataset& dataset, const RunConfig& config,
                   Rewriter& rewriter, const RunOptions& options) {
  config.Validate();
  config.k.Resolve(dataset.size());

  std::optional<CheckpointStore> store;
  if (options.checkpoint_dir) store.emplace(*options.checkpoint_dir);

  RunResult result{dataset, {}, "", ""};
  int completed = 0;
  if (store && store->HasRun()) {
    store->CheckCompatible(config, dataset);
    result.traces = store->LoadTraces();
    for (const auto& t : result.traces) completed += t.ok();
    if (completed > 0) {
      result.dataset = store->LoadSnapshot(completed, dataset);
      const IterationTrace* last = nullptr;
      for (const auto& t : result.traces) {
        if (t.ok()) last = &t;
      }
      if (auto stop = ShouldStop(*last, config)) {
        result.stop_reason = stop->reason;
        result.stop_detail = stop->detail;
        return result;
      }
    }
    LogInfo("resuming run in " + store->dir().string() + " after " +
            std::to_string(completed) + " completed iteration(s)");
  } else if (store) {
    store->Initialize(config, dataset);
  }

  RewriteJournal* journal = store ? &store->journal() : nullptr;
  for (int iteration = completed + 1; iteration <= config.max_iterations; ++iteration) {
    IterationOutcome outcome =
        RunIteration(result.dataset, config, rewriter, iteration, journal);
    result.traces.push_back(outcome.trace);
    if (!outcome.trace.ok()) {
      if (store) store->SaveTraces(result.traces);
      throw Error(ErrorCode::kBackendTransport,
                  "iteration " + std::to_string(iteration) +
                      " aborted: " + outcome.trace.error);
    }
    result.dataset = std::move(outcome.dataset);
    if (store) {
      store->SaveSnapshot(iteration, result.dataset);
      store->SaveTraces(result.traces);
    }
    const auto& trace = result.traces.back();
    LogInfo("iteration " + std::to_string(iteration) + ": objective " +
            std::to_string(trace.objective_before) + " -> " +
            std::to_string(trace.objective_after) + ", replaced " +
            std::to_string(trace.replaced_ids.size()) + "/" +
            std::to_string(trace.selected_ids.size()));
    if (auto stop = ShouldStop(trace, config)) {
      result.stop_reason = stop->reason;
      result.stop_detail = stop->detail;
      return result;
    }
  }
  result.stop_reason = "max_iterations";
  result.stop_detail = "reached max_iterations";
  return result;
}

}  // namespace razor
