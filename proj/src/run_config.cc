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

#include "razor/run_config.h"

#include <algorithm>
#include <cmath>
#include <fstream>

#include "razor/backend.h"
#include "razor/error.h"

namespace razor {

size_t TopK::Resolve(size_t dataset_size) const {
  size_t k = 0;
  if (is_fraction) {
    if (!(value > 0.0 && value <= 1.0)) {
      throw Error(ErrorCode::kInvalidConfig, "fractional k must be in (0, 1]");
    }
    k = std::max<size_t>(
        1, static_cast<size_t>(std::llround(value * static_cast<double>(dataset_size))));
  } else {
    k = static_cast<size_t>(value);
  }
  if (k == 0 || k > dataset_size) {
    throw Error(ErrorCode::kInvalidConfig,
                "k must satisfy 0 < k <= |D| (" + std::to_string(dataset_size) +
                    "), got " + std::to_string(k));
  }
  return k;
}

void RunConfig::Validate() const {
  if (k.is_fraction ? !(k.value > 0.0 && k.value <= 1.0) : k.value < 1.0) {
    throw Error(ErrorCode::kInvalidConfig, "k must be positive");
  }
  if (lambda == 0 || lambda % 2 != 0) {
    throw Error(ErrorCode::kInvalidConfig, "lambda must be even and positive");
  }
  if (!(epsilon > 0.0)) {
    throw Error(ErrorCode::kInvalidConfig, "epsilon must be > 0");
  }
  if (max_iterations < 1) {
    throw Error(ErrorCode::kInvalidConfig, "max_iterations must be >= 1");
  }
  if (jobs < 1) throw Error(ErrorCode::kInvalidConfig, "jobs must be >= 1");
  generator.Validate();
}

RunConfig RunConfig::FromJson(const nlohmann::json& json) {
  RunConfig config;
  try {
    if (json.contains("k")) {
      const auto& k = json.at("k");
      if (k.is_number_integer()) {
        if (k.get<long long>() < 1) {
          throw Error(ErrorCode::kInvalidConfig, "k must be positive");
        }
        config.k = TopK::Count(k.get<size_t>());
      } else {
        config.k = TopK::Fraction(k.get<double>());
      }
    }
    config.lambda = json.value("lambda", config.lambda);
    config.epsilon = json.value("epsilon", config.epsilon);
    config.max_iterations = json.value("max_iterations", config.max_iterations);
    config.seed = json.value("seed", config.seed);
    config.jobs = json.value("jobs", config.jobs);
    if (json.contains("generator")) {
      const auto& g = json.at("generator");
      auto& out = config.generator;
      out.top_p = g.value("top_p", out.top_p);
      out.temperature = g.value("temperature", out.temperature);
      out.verifier_temperature =
          g.value("verifier_temperature", out.verifier_temperature);
      out.candidates_per_doc = g.value("candidates_per_doc", out.candidates_per_doc);
      out.max_retries = g.value("max_retries", out.max_retries);
      out.retry_backoff_ms = g.value("retry_backoff_ms", out.retry_backoff_ms);
      out.backend = g.value("backend", out.backend);
      out.model = g.value("model", out.model);
      out.timeout_seconds = g.value("timeout_seconds", out.timeout_seconds);
    }
    if (json.contains("tokenizer")) {
      const auto& t = json.at("tokenizer");
      config.tokenizer.lowercase = t.value("lowercase", true);
      config.tokenizer.strip_punctuation = t.value("strip_punctuation", true);
    }
    if (json.contains("labels")) {
      // {"0": "supports", "1": "refutes"}
      std::vector<LabelSet::Entry> entries;
      for (const auto& [key, name] : json.at("labels").items()) {
        size_t used = 0;
        const int id = std::stoi(key, &used);
        if (used != key.size()) {
          throw Error(ErrorCode::kInvalidConfig, "label key \"" + key + "\" is not an integer");
        }
        entries.push_back({id, name.get<std::string>()});
      }
      std::sort(entries.begin(), entries.end(),
                [](const auto& a, const auto& b) { return a.id < b.id; });
      config.labels = LabelSet(std::move(entries), LabelSet::Encoding::kInteger);
    }
    if (json.contains("prompts")) {
      const auto& p = json.at("prompts");
      config.prompts = PromptTemplate{p.at("instruction").get<std::string>(),
                                      p.at("verify_instruction").get<std::string>()};
    }
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::kInvalidConfig, std::string("run config: ") + e.what());
  } catch (const std::logic_error& e) {
    throw Error(ErrorCode::kInvalidConfig, std::string("run config: ") + e.what());
  }
  return config;
}

RunConfig RunConfig::Load(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::kInvalidConfig, "cannot open " + path.string());
  nlohmann::json json;
  try {
    in >> json;
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::kInvalidConfig, path.string() + ": malformed JSON: " + e.what());
  }
  return FromJson(json);
}

nlohmann::ordered_json RunConfig::ToJson() const {
  nlohmann::ordered_json json;
  if (k.is_fraction) {
    json["k"] = k.value;
  } else {
    json["k"] = static_cast<size_t>(k.value);
  }
  json["lambda"] = lambda;
  json["epsilon"] = epsilon;
  json["max_iterations"] = max_iterations;
  json["seed"] = seed;
  json["jobs"] = jobs;
  nlohmann::ordered_json g;
  g["top_p"] = generator.top_p;
  g["temperature"] = generator.temperature;
  g["verifier_temperature"] = generator.verifier_temperature;
  g["candidates_per_doc"] = generator.candidates_per_doc;
  g["max_retries"] = generator.max_retries;
  g["retry_backoff_ms"] = generator.retry_backoff_ms;
  g["backend"] = generator.backend;
  g["model"] = generator.model;
  g["timeout_seconds"] = generator.timeout_seconds;
  json["generator"] = std::move(g);
  json["tokenizer"] = {{"lowercase", tokenizer.lowercase},
                       {"strip_punctuation", tokenizer.strip_punctuation}};
  if (labels) {
    nlohmann::ordered_json names;
    for (const auto& e : labels->entries()) names[std::to_string(e.id)] = e.name;
    json["labels"] = std::move(names);
  }
  if (prompts) {
    json["prompts"] = {{"instruction", prompts->instruction},
                       {"verify_instruction", prompts->verify_instruction}};
  }
  return json;
}

uint64_t RunConfig::Fingerprint() const {
  auto json = ToJson();
  // Parallelism and transport tuning do not change results.
  json.erase("jobs");
  json["generator"].erase("retry_backoff_ms");
  json["generator"].erase("timeout_seconds");
  return StableHash(json.dump());
}

}  // namespace razor
