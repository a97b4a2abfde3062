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

#ifndef RAZOR_HTTP_BACKEND_H_
#define RAZOR_HTTP_BACKEND_H_

#include <string>

#include "json.hpp"
#include "razor/backend.h"

namespace razor {

struct HttpBackendOptions {
  // e.g. "https://api.openai.com/v1"; "/chat/completions" is appended.
  std::string base_url;
  std::string api_key;
  std::string model = "gpt-3.5-turbo";
  int timeout_seconds = 60;
};

// Reads RAZOR_API_BASE and RAZOR_API_KEY. Throws kInvalidConfig when the
// key is missing. The base URL defaults to the OpenAI endpoint.
HttpBackendOptions HttpBackendOptionsFromEnvironment(const std::string& model);

// Request body for one chat-completion exchange.
nlohmann::ordered_json BuildChatRequest(const std::string& model,
                                        const std::string& prompt,
                                        double temperature, double top_p);
// Content of the first choice's message. Throws kBackendTransport if the
// body does not have that shape.
std::string ParseChatResponse(const std::string& body);

// OpenAI-compatible chat-completion client. Every call sends a single user
// message, so sessions never share history.
class HttpBackend : public RewriteBackend {
 public:
  explicit HttpBackend(HttpBackendOptions options);

  std::string Generate(const GenerationRequest& request) override;
  std::string Verify(const VerificationRequest& request) override;

 private:
  std::string Complete(const std::string& prompt, double temperature,
                       double top_p);

  HttpBackendOptions options_;
  std::string origin_;
  std::string path_;
};

}  // namespace razor

#endif  // RAZOR_HTTP_BACKEND_H_
