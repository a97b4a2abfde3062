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

#ifndef RAZOR_TRACE_H_
#define RAZOR_TRACE_H_

#include <string>
#include <vector>

#include "json.hpp"
#include "razor/backend.h"

namespace razor {

// What one pass of score -> select -> rewrite -> replace did.
struct IterationTrace {
  int iteration = 0;
  // "ok", or "aborted" when a backend failure stopped the iteration.
  std::string status = "ok";
  std::string error;
  // Class alignment objective on freshly computed statistics before and
  // after the iteration's replacements.
  double objective_before = 0.0;
  double objective_after = 0.0;
  // Objective after the replacements, measured with the embeddings and
  // statistics used for selection.
  double selection_objective_after = 0.0;
  size_t scoreable_documents = 0;
  std::vector<std::string> selected_ids;
  std::vector<std::string> replaced_ids;
  std::vector<std::string> kept_ids;
  CallCounters llm_calls;
  double wall_time_seconds = 0.0;

  bool ok() const { return status == "ok"; }

  nlohmann::ordered_json ToJson() const;
  static IterationTrace FromJson(const nlohmann::json& json);
};

nlohmann::ordered_json TracesToJson(const std::vector<IterationTrace>& traces);
std::vector<IterationTrace> TracesFromJson(const nlohmann::json& json);

}  // namespace razor

#endif  // RAZOR_TRACE_H_
