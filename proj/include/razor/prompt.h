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

#ifndef RAZOR_PROMPT_H_
#define RAZOR_PROMPT_H_

#include <map>
#include <optional>
#include <string>
#include <string_view>

#include "razor/corpus.h"

namespace razor {

// Instruction templates for the generator and the verifier. Placeholders
// are written {name}. Generation binds {label_name}, {context} and {text};
// verification binds {context}, {candidate}, {label_name} and
// {label_names} (all declared names, comma separated). A line that
// mentions {context} is dropped when the document has no context.
struct PromptTemplate {
  std::string instruction;
  std::string verify_instruction;

  static PromptTemplate DefaultFor(Schema schema);
};

using PromptBindings = std::map<std::string, std::optional<std::string>, std::less<>>;

// Substitutes placeholders. An unknown placeholder, or one bound to
// nullopt outside a droppable context line, throws kUnboundPlaceholder.
std::string RenderTemplate(std::string_view text, const PromptBindings& bindings);

// Generator prompt for one document; includes the original label name.
// Throws kMissingLabelName if the label has no name.
std::string BuildPrompt(const LabeledDocument& doc, const PromptTemplate& prompts,
                        const LabelSet& labels);

std::string BuildVerificationPrompt(const LabeledDocument& doc,
                                    std::string_view candidate,
                                    const PromptTemplate& prompts,
                                    const LabelSet& labels);

}  // namespace razor

#endif  // RAZOR_PROMPT_H_
