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

#ifndef RAZOR_MOCK_BACKEND_H_
#define RAZOR_MOCK_BACKEND_H_

#include <cstdint>
#include <filesystem>
#include <map>
#include <mutex>
#include <optional>
#include <regex>
#include <string>
#include <vector>

#include "json.hpp"
#include "razor/backend.h"

namespace razor {

// Rule-driven stand-in for a language model.
//
// Generation applies every rule, in order, to the original text. A rule
// with several alternatives picks one from a hash of (seed, text, attempt,
// rule index), so output never depends on call order or threading.
// Verification answers according to a fixed policy.
//
// Rules file:
//   {"seed": 7,
//    "generation": [{"pattern": "\\bnot\\s+", "replacement": "",
//                    "ignore_case": true},
//                   {"pattern": "\\bgood\\b", "alternatives": ["fine", "nice"]}],
//    "verification": {"policy": "echo" | "flip" | "text", "text": "..."},
//    "fail_after_calls": 12}
struct MockRule {
  std::string pattern;
  std::vector<std::string> alternatives;
  bool ignore_case = true;
};

enum class VerifyPolicy { kEcho, kFlip, kText };

struct MockRules {
  uint64_t seed = 0;
  std::vector<MockRule> generation;
  VerifyPolicy verify_policy = VerifyPolicy::kEcho;
  std::string verify_text;
  // When set, every call after this many successful ones fails with a
  // transport error.
  std::optional<uint64_t> fail_after_calls;

  static MockRules FromJson(const nlohmann::json& json);
  static MockRules Load(const std::filesystem::path& path);
  nlohmann::ordered_json ToJson() const;
};

class MockBackend : public RewriteBackend {
 public:
  explicit MockBackend(MockRules rules, uint64_t run_seed = 0);

  std::string Generate(const GenerationRequest& request) override;
  std::string Verify(const VerificationRequest& request) override;

  void set_fail_after_calls(std::optional<uint64_t> calls);

  uint64_t generate_calls() const;
  uint64_t verify_calls() const;
  // Generate and Verify calls that reached the backend, per document id.
  std::map<std::string, uint64_t> calls_per_document() const;

 private:
  void CountCall(const std::string& doc_id, bool generate);

  MockRules rules_;
  uint64_t seed_;
  std::vector<std::regex> compiled_;

  mutable std::mutex mu_;
  uint64_t generate_calls_ = 0;
  uint64_t verify_calls_ = 0;
  std::map<std::string, uint64_t> per_document_;
};

}  // namespace razor

#endif  // RAZOR_MOCK_BACKEND_H_
