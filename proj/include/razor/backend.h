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

#ifndef RAZOR_BACKEND_H_
#define RAZOR_BACKEND_H_

#include <atomic>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace razor {

struct GenerationRequest {
  std::string doc_id;
  std::string prompt;
  std::string text;
  std::optional<std::string> context;
  std::string label_name;
  // 0-based index of this candidate among the ones requested for the doc.
  size_t attempt = 0;
  double temperature = 0.7;
  double top_p = 0.9;
};

struct VerificationRequest {
  std::string doc_id;
  std::string prompt;
  std::string candidate;
  std::optional<std::string> context;
  // The label the candidate is expected to keep. Only mock backends look at
  // it; the rendered prompt does not need to contain it.
  std::string expected_label_name;
  std::vector<std::string> label_names;
  double temperature = 0.0;
  double top_p = 0.9;
};

// A language-model backend. Each call is a standalone zero-shot exchange,
// so the generator and verifier never share conversation state. Transport
// failures throw Error(kBackendTransport). Implementations must be safe to
// call from several threads.
class RewriteBackend {
 public:
  virtual ~RewriteBackend() = default;

  // One rewritten text (raw model output).
  virtual std::string Generate(const GenerationRequest& request) = 0;
  // Raw verdict text; parsed by the rewriter.
  virtual std::string Verify(const VerificationRequest& request) = 0;
};

struct CallCounters {
  uint64_t generate_calls = 0;
  uint64_t verify_calls = 0;
  uint64_t transport_failures = 0;
  uint64_t parse_failures = 0;
  uint64_t journal_hits = 0;

  CallCounters& operator+=(const CallCounters& other);
  bool operator==(const CallCounters&) const = default;
};

// 64-bit FNV-1a, used wherever a stable (platform independent) hash is
// needed for seeding and fingerprints.
uint64_t StableHash(std::string_view data, uint64_t seed = 0);

}  // namespace razor

#endif  // RAZOR_BACKEND_H_
