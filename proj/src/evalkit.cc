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

#include "razor/evalkit.h"

#include <algorithm>
#include <cmath>
#include <random>
#include <set>
#include <sstream>

#include "razor/error.h"

namespace razor {
namespace {

std::set<LabelId> PresentLabels(const Dataset& dataset) {
  std::set<LabelId> labels;
  for (const auto& doc : dataset.documents()) labels.insert(doc.label());
  return labels;
}

std::vector<size_t> SampleIndices(size_t population, size_t count, uint64_t seed) {
  std::vector<size_t> order(population);
  for (size_t i = 0; i < population; ++i) order[i] = i;
  std::mt19937_64 rng(seed);
  for (size_t i = population; i > 1; --i) {
    std::swap(order[i - 1], order[rng() % i]);
  }
  order.resize(std::min(count, population));
  std::sort(order.begin(), order.end());
  return order;
}

std::string CsvField(const std::string& value) {
  if (value.find_first_of(",\"\n") == std::string::npos) return value;
  std::string quoted = "\"";
  for (char c : value) {
    if (c == '"') quoted += '"';
    quoted += c;
  }
  return quoted + "\"";
}

}  // namespace

std::map<std::string, TermCounts> CountTerms(const Dataset& dataset,
                                             const std::vector<std::string>& terms) {
  if (terms.empty()) throw Error(ErrorCode::kInvalidConfig, "no terms to count");
  std::map<std::string, std::string> lowered;
  std::map<std::string, TermCounts> counts;
  const auto labels = PresentLabels(dataset);
  for (const auto& term : terms) {
    lowered[term] = Utf8Lowercase(term);
    for (LabelId label : labels) counts[term].per_class[label] = 0;
  }
  for (const auto& doc : dataset.documents()) {
    for (const auto& token : doc.tokens()) {
      const std::string folded = Utf8Lowercase(token);
      for (const auto& [term, low] : lowered) {
        if (folded == low) {
          ++counts[term].per_class[doc.label()];
          ++counts[term].total;
        }
      }
    }
  }
  return counts;
}

double FrequencyGap(const Dataset& dataset, const std::string& token) {
  const std::string target = Utf8Lowercase(token);
  std::map<LabelId, std::pair<size_t, size_t>> presence;  // (with token, docs)
  for (const auto& doc : dataset.documents()) {
    auto& [with, docs] = presence[doc.label()];
    ++docs;
    for (const auto& t : doc.tokens()) {
      if (Utf8Lowercase(t) == target) {
        ++with;
        break;
      }
    }
  }
  std::vector<double> rates;
  for (const auto& [label, p] : presence) {
    rates.push_back(static_cast<double>(p.first) / static_cast<double>(p.second));
  }
  if (rates.size() < 2) return 0.0;
  const auto [lo, hi] = std::minmax_element(rates.begin(), rates.end());
  return *hi - *lo;
}

BiasReport EmitReport(const Dataset& before, const Dataset& after,
                      const std::vector<IterationTrace>& traces,
                      const ReportOptions& options) {
  if (before.schema() != after.schema()) {
    throw Error(ErrorCode::kSchemaMismatch,
                "before is " + std::string(SchemaName(before.schema())) +
                    " but after is " + std::string(SchemaName(after.schema())));
  }
  if (before.size() != after.size()) {
    throw Error(ErrorCode::kSchemaMismatch, "before and after differ in size");
  }
  std::vector<size_t> rewritten;  // indices into before
  std::vector<size_t> after_index(before.size());
  for (size_t i = 0; i < before.size(); ++i) {
    auto j = after.IndexOf(before[i].id());
    if (!j) {
      throw Error(ErrorCode::kSchemaMismatch,
                  "document \"" + before[i].id() + "\" is missing from after");
    }
    after_index[i] = *j;
    if (before[i].mutable_text() != after[*j].mutable_text()) rewritten.push_back(i);
  }

  BiasReport report;
  report.labels = before.labels();
  report.documents = before.size();
  report.rewritten_documents = rewritten.size();

  // Term counts come from the full datasets, or from a sample of rewritten
  // pairs when requested.
  const Dataset* count_before = &before;
  const Dataset* count_after = &after;
  std::optional<Dataset> sampled_before;
  std::optional<Dataset> sampled_after;
  if (options.sample) {
    std::vector<LabeledDocument> b;
    std::vector<LabeledDocument> a;
    for (size_t s : SampleIndices(rewritten.size(), *options.sample, options.seed)) {
      b.push_back(before[rewritten[s]]);
      a.push_back(after[after_index[rewritten[s]]]);
    }
    report.sampled_pairs = b.size();
    sampled_before.emplace(before.WithDocuments(std::move(b)));
    sampled_after.emplace(after.WithDocuments(std::move(a)));
    count_before = &*sampled_before;
    count_after = &*sampled_after;
  }
  if (!options.terms.empty()) {
    const auto counts_before = CountTerms(*count_before, options.terms);
    const auto counts_after = CountTerms(*count_after, options.terms);
    for (const auto& term : options.terms) {
      TermReport entry;
      entry.term = term;
      entry.before = counts_before.at(term);
      entry.after = counts_after.at(term);
      entry.gap_before = FrequencyGap(before, term);
      entry.gap_after = FrequencyGap(after, term);
      report.terms.push_back(std::move(entry));
    }
  }

  std::vector<std::string> candidates;
  std::vector<std::string> references;
  if (rewritten.empty()) {
    for (size_t i = 0; i < before.size(); ++i) {
      candidates.push_back(after[after_index[i]].mutable_text());
      references.push_back(before[i].mutable_text());
    }
  } else {
    for (size_t i : rewritten) {
      candidates.push_back(after[after_index[i]].mutable_text());
      references.push_back(before[i].mutable_text());
    }
  }
  if (!candidates.empty()) report.corpus_bleu = CorpusBleu(candidates, references, options.bleu);

  bool first = true;
  for (const auto& trace : traces) {
    if (!trace.ok()) continue;
    if (first) report.objective_trace.push_back(trace.objective_before);
    report.objective_trace.push_back(trace.objective_after);
    first = false;
  }
  return report;
}

nlohmann::ordered_json BiasReport::ToJson() const {
  nlohmann::ordered_json json;
  json["documents"] = documents;
  json["rewritten_documents"] = rewritten_documents;
  if (sampled_pairs > 0) json["sampled_pairs"] = sampled_pairs;
  nlohmann::ordered_json terms_json = nlohmann::ordered_json::object();
  for (const auto& t : terms) {
    nlohmann::ordered_json entry;
    const auto side = [&](const TermCounts& c) {
      nlohmann::ordered_json s;
      nlohmann::ordered_json per_class = nlohmann::ordered_json::object();
      for (const auto& [label, n] : c.per_class) {
        per_class[labels.Contains(label) ? labels.Name(label) : std::to_string(label)] = n;
      }
      s["per_class"] = std::move(per_class);
      s["total"] = c.total;
      return s;
    };
    entry["before"] = side(t.before);
    entry["after"] = side(t.after);
    entry["total_delta"] =
        static_cast<long long>(t.after.total) - static_cast<long long>(t.before.total);
    entry["frequency_gap_before"] = t.gap_before;
    entry["frequency_gap_after"] = t.gap_after;
    entry["frequency_gap_delta"] = t.gap_after - t.gap_before;
    terms_json[t.term] = std::move(entry);
  }
  json["terms"] = std::move(terms_json);
  json["corpus_bleu"] = corpus_bleu ? nlohmann::ordered_json(*corpus_bleu)
                                    : nlohmann::ordered_json(nullptr);
  json["objective_trace"] = objective_trace;
  return json;
}

std::string BiasReport::ToCsv() const {
  std::ostringstream out;
  out.precision(17);
  out << "metric,term,scope,before,after,delta\n";
  for (const auto& t : terms) {
    for (const auto& [label, n] : t.before.per_class) {
      const size_t a = t.after.per_class.count(label) ? t.after.per_class.at(label) : 0;
      const std::string scope =
          labels.Contains(label) ? labels.Name(label) : std::to_string(label);
      out << "count," << CsvField(t.term) << "," << CsvField(scope) << "," << n << ","
          << a << "," << static_cast<long long>(a) - static_cast<long long>(n) << "\n";
    }
    out << "count," << CsvField(t.term) << ",total," << t.before.total << ","
        << t.after.total << ","
        << static_cast<long long>(t.after.total) - static_cast<long long>(t.before.total)
        << "\n";
    out << "frequency_gap," << CsvField(t.term) << ",all," << t.gap_before << ","
        << t.gap_after << "," << t.gap_after - t.gap_before << "\n";
  }
  if (corpus_bleu) out << "corpus_bleu,,rewritten,100," << *corpus_bleu << ","
                       << *corpus_bleu - 100.0 << "\n";
  for (size_t i = 0; i < objective_trace.size(); ++i) {
    out << "objective,," << i << ",," << objective_trace[i] << ",\n";
  }
  return out.str();
}

}  // namespace razor
