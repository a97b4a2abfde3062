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

#include <array>
#include <cstdio>
#include <random>

#include "razor/error.h"
#include "razor/evalkit.h"

namespace razor {
namespace {

struct Template {
  // Slots in braces are filled from the pools below; the planted token is
  // inserted right after word `insert_after` (0-based).
  const char* pattern;
  size_t insert_after;
};

constexpr std::array<Template, 1> kTemplates = {{
    {"the {adj} {noun} did {verb} the {adj} {noun} {time}", 3},
}};

constexpr std::array<const char*, 8> kAdjectives = {
    "old", "quiet", "small", "bright", "heavy", "local", "young", "famous"};
constexpr std::array<const char*, 12> kNouns = {
    "engineer", "river", "company", "teacher", "bridge", "album",
    "village", "doctor", "museum", "player", "film", "garden"};
constexpr std::array<const char*, 10> kVerbs = {
    "visit", "repair", "describe", "support", "build",
    "watch", "finish", "open", "review", "paint"};
constexpr std::array<const char*, 6> kTimes = {
    "today", "yesterday", "tonight", "again", "soon", "later"};
constexpr std::array<const char*, 8> kNames = {
    "alice", "bruno", "chen", "dara", "emil", "farah", "goran", "hana"};
constexpr std::array<const char*, 6> kPlaces = {
    "paris", "lagos", "lima", "oslo", "kyoto", "quebec"};

class Rng {
 public:
  explicit Rng(uint64_t seed) : engine_(seed) {}
  // Portable across standard libraries, unlike the <random> distributions.
  size_t Below(size_t n) { return static_cast<size_t>(engine_() % n); }
  double Unit() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

 private:
  std::mt19937_64 engine_;
};

template <size_t N>
const char* Pick(Rng& rng, const std::array<const char*, N>& pool) {
  return pool[rng.Below(N)];
}

std::string Fill(const Template& t, Rng& rng, const std::string* planted) {
  std::string out;
  std::string_view pattern = t.pattern;
  size_t word = 0;
  size_t i = 0;
  while (i < pattern.size()) {
    if (pattern[i] == ' ') {
      if (planted != nullptr && word == t.insert_after) out += " " + *planted;
      ++word;
      out += ' ';
      ++i;
      continue;
    }
    if (pattern[i] == '{') {
      const size_t close = pattern.find('}', i);
      const std::string_view slot = pattern.substr(i + 1, close - i - 1);
      if (slot == "adj") out += Pick(rng, kAdjectives);
      else if (slot == "noun") out += Pick(rng, kNouns);
      else if (slot == "verb") out += Pick(rng, kVerbs);
      else if (slot == "time") out += Pick(rng, kTimes);
      else if (slot == "name") out += Pick(rng, kNames);
      else out += Pick(rng, kPlaces);
      i = close + 1;
      continue;
    }
    out += pattern[i++];
  }
  return out;
}

std::string RegexEscape(const std::string& text) {
  std::string out;
  for (char c : text) {
    if (std::string_view("\\^$.|?*+()[]{}").find(c) != std::string_view::npos) out += '\\';
    out += c;
  }
  return out;
}

}  // namespace

void BiasSpec::Validate() const {
  const auto in_unit = [](double r) { return r >= 0.0 && r <= 1.0; };
  if (!in_unit(bias_rate) || !in_unit(background_rate)) {
    throw Error(ErrorCode::kInvalidConfig, "bias and background rates must lie in [0, 1]");
  }
  if (!(bias_rate > background_rate)) {
    throw Error(ErrorCode::kInvalidConfig, "bias_rate must exceed background_rate");
  }
  if (corpus_size < num_classes || num_classes < 2) {
    throw Error(ErrorCode::kInvalidConfig,
                "need at least 2 classes and one document per class");
  }
  if (biased_class < 0 || static_cast<size_t>(biased_class) >= num_classes) {
    throw Error(ErrorCode::kInvalidConfig, "biased_class must be a valid class id");
  }
  const auto tokens = Tokenize(planted_token);
  if (tokens.size() != 1 || tokens.front() != planted_token) {
    throw Error(ErrorCode::kInvalidConfig,
                "planted_token must be a single lowercase token without punctuation");
  }
}

SynthCorpus GenerateBiasedCorpus(const BiasSpec& spec) {
  spec.Validate();
  Rng rng(spec.seed);
  std::vector<LabelId> ids;
  for (size_t c = 0; c < spec.num_classes; ++c) ids.push_back(static_cast<LabelId>(c));

  std::vector<LabeledDocument> documents;
  documents.reserve(spec.corpus_size);
  for (size_t i = 0; i < spec.corpus_size; ++i) {
    const LabelId label = static_cast<LabelId>(i % spec.num_classes);
    const double rate = label == spec.biased_class ? spec.bias_rate : spec.background_rate;
    const bool carries = rng.Unit() < rate;
    const Template& t = kTemplates[rng.Below(kTemplates.size())];
    char id[32];
    std::snprintf(id, sizeof(id), "synth-%06zu", i + 1);
    documents.push_back(LabeledDocument::Create(
        id, Fill(t, rng, carries ? &spec.planted_token : nullptr), std::nullopt, label));
  }

  SynthCorpus corpus{Dataset::Create(Schema::kSingle, LabelSet::FromIds(ids),
                                     std::move(documents)),
                     MockRules{}};
  corpus.rules.seed = spec.seed;
  corpus.rules.generation.push_back(
      {"\\b" + RegexEscape(spec.planted_token) + "\\b\\s*", {""}, true});
  corpus.rules.verify_policy = VerifyPolicy::kEcho;
  return corpus;
}

}  // namespace razor
