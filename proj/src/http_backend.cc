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

#include "razor/http_backend.h"

#include <cstdlib>

#include "httplib.h"
#include "razor/error.h"

namespace razor {
namespace {

constexpr const char* kDefaultBase = "https://api.openai.com/v1";

}  // namespace

HttpBackendOptions HttpBackendOptionsFromEnvironment(const std::string& model) {
  HttpBackendOptions options;
  options.model = model;
  const char* key = std::getenv("RAZOR_API_KEY");
  if (key == nullptr || *key == '\0') {
    throw Error(ErrorCode::kInvalidConfig,
                "RAZOR_API_KEY must be set to use the http backend");
  }
  options.api_key = key;
  const char* base = std::getenv("RAZOR_API_BASE");
  options.base_url = (base != nullptr && *base != '\0') ? base : kDefaultBase;
  return options;
}

nlohmann::ordered_json BuildChatRequest(const std::string& model,
                                        const std::string& prompt,
                                        double temperature, double top_p) {
  nlohmann::ordered_json body;
  body["model"] = model;
  body["messages"] = nlohmann::ordered_json::array(
      {{{"role", "user"}, {"content", prompt}}});
  body["temperature"] = temperature;
  body["top_p"] = top_p;
  return body;
}

std::string ParseChatResponse(const std::string& body) {
  try {
    auto json = nlohmann::json::parse(body);
    return json.at("choices").at(0).at("message").at("content").get<std::string>();
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::kBackendTransport,
                std::string("unexpected chat-completion response: ") + e.what());
  }
}

HttpBackend::HttpBackend(HttpBackendOptions options) : options_(std::move(options)) {
  const std::string& url = options_.base_url;
  const size_t scheme = url.find("://");
  if (scheme == std::string::npos) {
    throw Error(ErrorCode::kInvalidConfig, "RAZOR_API_BASE must include a scheme: " + url);
  }
  const size_t slash = url.find('/', scheme + 3);
  origin_ = url.substr(0, slash);
  path_ = slash == std::string::npos ? "" : url.substr(slash);
  while (!path_.empty() && path_.back() == '/') path_.pop_back();
  path_ += "/chat/completions";
}

std::string HttpBackend::Complete(const std::string& prompt, double temperature,
                                  double top_p) {
  httplib::Client client(origin_);
  client.set_connection_timeout(options_.timeout_seconds, 0);
  client.set_read_timeout(options_.timeout_seconds, 0);
  client.set_write_timeout(options_.timeout_seconds, 0);
  httplib::Headers headers{{"Authorization", "Bearer " + options_.api_key}};
  const auto body = BuildChatRequest(options_.model, prompt, temperature, top_p);
  auto result = client.Post(path_, headers, body.dump(), "application/json");
  if (!result) {
    throw Error(ErrorCode::kBackendTransport,
                "request to " + origin_ + path_ + " failed: " +
                    httplib::to_string(result.error()));
  }
  if (result->status != 200) {
    throw Error(ErrorCode::kBackendTransport,
                "request to " + origin_ + path_ + " returned HTTP " +
                    std::to_string(result->status));
  }
  return ParseChatResponse(result->body);
}

std::string HttpBackend::Generate(const GenerationRequest& request) {
  return Complete(request.prompt, request.temperature, request.top_p);
}

std::string HttpBackend::Verify(const VerificationRequest& request) {
  return Complete(request.prompt, request.temperature, request.top_p);
}

}  // namespace razor
