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

#include "razor/mock_backend.h"

#include <fstream>
#include <random>

#include "razor/error.h"

namespace razor {
namespace {

std::string CollapseSpaces(const std::string& text) {
  std::string out;
  bool space = false;
  for (char c : text) {
    if (c == ' ' || c == '\t') {
      space = !out.empty();
      continue;
    }
    if (space) out += ' ';
    space = false;
    out += c;
  }
  return out;
}

}  // namespace

MockRules MockRules::FromJson(const nlohmann::json& json) {
  MockRules rules;
  try {
    rules.seed = json.value("seed", uint64_t{0});
    for (const auto& entry : json.value("generation", nlohmann::json::array())) {
      MockRule rule;
      rule.pattern = entry.at("pattern").get<std::string>();
      rule.ignore_case = entry.value("ignore_case", true);
      if (entry.contains("alternatives")) {
        rule.alternatives = entry.at("alternatives").get<std::vector<std::string>>();
      } else {
        rule.alternatives = {entry.at("replacement").get<std::string>()};
      }
      if (rule.alternatives.empty()) {
        throw Error(ErrorCode::kInvalidConfig,
                    "mock rule \"" + rule.pattern + "\" has no replacement");
      }
      rules.generation.push_back(std::move(rule));
    }
    if (json.contains("verification")) {
      const auto& v = json.at("verification");
      const std::string policy = v.value("policy", "echo");
      if (policy == "echo") {
        rules.verify_policy = VerifyPolicy::kEcho;
      } else if (policy == "flip") {
        rules.verify_policy = VerifyPolicy::kFlip;
      } else if (policy == "text") {
        rules.verify_policy = VerifyPolicy::kText;
        rules.verify_text = v.at("text").get<std::string>();
      } else {
        throw Error(ErrorCode::kInvalidConfig,
                    "unknown mock verification policy \"" + policy + "\"");
      }
    }
    if (json.contains("fail_after_calls")) {
      rules.fail_after_calls = json.at("fail_after_calls").get<uint64_t>();
    }
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::kInvalidConfig, std::string("mock rules: ") + e.what());
  }
  return rules;
}

MockRules MockRules::Load(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::kInvalidConfig, "cannot open " + path.string());
  nlohmann::json json;
  try {
    in >> json;
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::kInvalidConfig,
                path.string() + ": malformed JSON: " + e.what());
  }
  return FromJson(json);
}

nlohmann::ordered_json MockRules::ToJson() const {
  nlohmann::ordered_json json;
  json["seed"] = seed;
  nlohmann::ordered_json generation = nlohmann::ordered_json::array();
  for (const auto& rule : this->generation) {
    nlohmann::ordered_json entry;
    entry["pattern"] = rule.pattern;
    if (rule.alternatives.size() == 1) {
      entry["replacement"] = rule.alternatives.front();
    } else {
      entry["alternatives"] = rule.alternatives;
    }
    entry["ignore_case"] = rule.ignore_case;
    generation.push_back(std::move(entry));
  }
  json["generation"] = std::move(generation);
  nlohmann::ordered_json verification;
  switch (verify_policy) {
    case VerifyPolicy::kEcho: verification["policy"] = "echo"; break;
    case VerifyPolicy::kFlip: verification["policy"] = "flip"; break;
    case VerifyPolicy::kText:
      verification["policy"] = "text";
      verification["text"] = verify_text;
      break;
  }
  json["verification"] = std::move(verification);
  if (fail_after_calls) json["fail_after_calls"] = *fail_after_calls;
  return json;
}

MockBackend::MockBackend(MockRules rules, uint64_t run_seed)
    : rules_(std::move(rules)),
      seed_(StableHash(std::to_string(run_seed), rules_.seed)) {
  for (const auto& rule : rules_.generation) {
    auto flags = std::regex::ECMAScript;
    if (rule.ignore_case) flags |= std::regex::icase;
    try {
      compiled_.emplace_back(rule.pattern, flags);
    } catch (const std::regex_error& e) {
      throw Error(ErrorCode::kInvalidConfig,
                  "mock rule pattern \"" + rule.pattern + "\": " + e.what());
    }
  }
}

void MockBackend::set_fail_after_calls(std::optional<uint64_t> calls) {
  std::lock_guard<std::mutex> lock(mu_);
  rules_.fail_after_calls = calls;
}

void MockBackend::CountCall(const std::string& doc_id, bool generate) {
  std::lock_guard<std::mutex> lock(mu_);
  const uint64_t made = generate_calls_ + verify_calls_;
  if (rules_.fail_after_calls && made >= *rules_.fail_after_calls) {
    throw Error(ErrorCode::kBackendTransport, "mock backend: simulated timeout");
  }
  (generate ? generate_calls_ : verify_calls_)++;
  ++per_document_[doc_id];
}

std::string MockBackend::Generate(const GenerationRequest& request) {
  CountCall(request.doc_id, true);
  std::string text = request.text;
  for (size_t r = 0; r < compiled_.size(); ++r) {
    if (!std::regex_search(text, compiled_[r])) continue;
    const auto& alternatives = rules_.generation[r].alternatives;
    size_t pick = 0;
    if (alternatives.size() > 1) {
      std::mt19937_64 rng(StableHash(
          request.text + '\x1f' + std::to_string(request.attempt) + '\x1f' +
              std::to_string(r),
          seed_));
      pick = static_cast<size_t>(rng() % alternatives.size());
    }
    text = std::regex_replace(text, compiled_[r], alternatives[pick]);
  }
  return CollapseSpaces(text);
}

std::string MockBackend::Verify(const VerificationRequest& request) {
  CountCall(request.doc_id, false);
  switch (rules_.verify_policy) {
    case VerifyPolicy::kEcho:
      return request.expected_label_name;
    case VerifyPolicy::kFlip:
      for (const auto& name : request.label_names) {
        if (name != request.expected_label_name) return name;
      }
      return request.expected_label_name;
    case VerifyPolicy::kText:
      return rules_.verify_text;
  }
  return {};
}

uint64_t MockBackend::generate_calls() const {
  std::lock_guard<std::mutex> lock(mu_);
  return generate_calls_;
}

uint64_t MockBackend::verify_calls() const {
  std::lock_guard<std::mutex> lock(mu_);
  return verify_calls_;
}

std::map<std::string, uint64_t> MockBackend::calls_per_document() const {
  std::lock_guard<std::mutex> lock(mu_);
  return per_document_;
}

}  // namespace razor
