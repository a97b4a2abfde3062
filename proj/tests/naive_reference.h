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

#ifndef RAZOR_TESTS_NAIVE_REFERENCE_H_
#define RAZOR_TESTS_NAIVE_REFERENCE_H_

// Straightforward re-derivations of the surface quantities, written
// without the library's caching or class sums. Used as oracles.

#include <algorithm>
#include <cmath>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "razor/corpus.h"

namespace razor::naive {

inline long double PositionalComponent(size_t pos, size_t lambda, size_t k) {
  const long double angle =
      static_cast<long double>(pos) /
      std::pow(10000.0L, static_cast<long double>(2 * k) / static_cast<long double>(lambda));
  return k % 2 == 0 ? std::sin(angle) : std::cos(angle);
}

inline double TfIdf(const std::string& token, const std::vector<std::string>& doc,
                    const std::vector<std::vector<std::string>>& corpus) {
  const double n = static_cast<double>(std::count(doc.begin(), doc.end(), token));
  if (n == 0.0) return 0.0;
  double df = 0.0;
  for (const auto& d : corpus) {
    if (std::find(d.begin(), d.end(), token) != d.end()) df += 1.0;
  }
  return n / static_cast<double>(doc.size()) *
         std::log(static_cast<double>(corpus.size()) / df);
}

inline std::vector<double> Embedding(const std::vector<std::string>& doc,
                                     const std::vector<std::vector<std::string>>& corpus,
                                     size_t lambda) {
  std::vector<double> g(lambda, 0.0);
  for (size_t j = 0; j < doc.size(); ++j) {
    const double s = TfIdf(doc[j], doc, corpus);
    for (size_t k = 0; k < lambda; ++k) {
      g[k] += s * static_cast<double>(PositionalComponent(j, lambda, k));
    }
  }
  for (double& v : g) v /= static_cast<double>(doc.size() - 1);
  return g;
}

inline double Cosine(const std::vector<double>& a, const std::vector<double>& b) {
  double dot = 0.0, na = 0.0, nb = 0.0;
  for (size_t i = 0; i < a.size(); ++i) {
    dot += a[i] * b[i];
    na += a[i] * a[i];
    nb += b[i] * b[i];
  }
  return dot / std::sqrt(na * nb);
}

inline bool IsZero(const std::vector<double>& v) {
  return std::all_of(v.begin(), v.end(), [](double x) { return x == 0.0; });
}

struct Embedded {
  std::vector<std::vector<double>> vectors;
  std::vector<LabelId> labels;
  std::vector<bool> usable;
};

inline Embedded EmbedAll(const Dataset& dataset, size_t lambda) {
  std::vector<std::vector<std::string>> corpus;
  for (const auto& d : dataset.documents()) corpus.push_back(d.tokens());
  Embedded out;
  for (size_t i = 0; i < corpus.size(); ++i) {
    out.labels.push_back(dataset[i].label());
    if (corpus[i].size() < 2) {
      out.vectors.emplace_back();
      out.usable.push_back(false);
      continue;
    }
    out.vectors.push_back(Embedding(corpus[i], corpus, lambda));
    out.usable.push_back(!IsZero(out.vectors.back()));
  }
  return out;
}

// 1 - mean cosine against every usable opposite-class document, clamped.
inline double ShortcutScore(const Embedded& e, size_t i) {
  double sum = 0.0;
  size_t n = 0;
  for (size_t j = 0; j < e.vectors.size(); ++j) {
    if (e.labels[j] == e.labels[i] || !e.usable[j]) continue;
    sum += Cosine(e.vectors[i], e.vectors[j]);
    ++n;
  }
  return std::clamp(1.0 - sum / static_cast<double>(n), 0.0, 2.0);
}

// Sum of cosines over unordered cross-class pairs.
inline double Objective(const Embedded& e) {
  double total = 0.0;
  for (size_t i = 0; i < e.vectors.size(); ++i) {
    if (!e.usable[i]) continue;
    for (size_t j = i + 1; j < e.vectors.size(); ++j) {
      if (!e.usable[j] || e.labels[i] == e.labels[j]) continue;
      total += Cosine(e.vectors[i], e.vectors[j]);
    }
  }
  return total;
}

}  // namespace razor::naive

#endif  // RAZOR_TESTS_NAIVE_REFERENCE_H_
