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

#include "razor/prompt.h"

#include <cctype>
#include <sstream>

#include "razor/error.h"

namespace razor {
namespace {

bool IsPlaceholderChar(char c) {
  return std::islower(static_cast<unsigned char>(c)) || c == '_';
}

// Returns the placeholder names referenced on one line.
std::vector<std::string> PlaceholdersIn(std::string_view line) {
  std::vector<std::string> names;
  for (size_t i = 0; i < line.size(); ++i) {
    if (line[i] != '{') continue;
    size_t j = i + 1;
    while (j < line.size() && IsPlaceholderChar(line[j])) ++j;
    if (j > i + 1 && j < line.size() && line[j] == '}') {
      names.emplace_back(line.substr(i + 1, j - i - 1));
      i = j;
    }
  }
  return names;
}

std::string JoinNames(const LabelSet& labels) {
  std::string joined;
  for (const auto& entry : labels.entries()) {
    if (!joined.empty()) joined += ", ";
    joined += entry.name;
  }
  return joined;
}

}  // namespace

PromptTemplate PromptTemplate::DefaultFor(Schema schema) {
  switch (schema) {
    case Schema::kClaimEvidence:
      return {
          "You are given a piece of evidence and a claim. The relation between "
          "the evidence and the claim is \"{label_name}\".\n"
          "Rewrite the claim with different wording and sentence structure so "
          "that the relation to the same evidence stays \"{label_name}\". Keep "
          "the facts of the claim, and do not rely on words that merely signal "
          "the relation. Reply with the rewritten claim only.\n\n"
          "Evidence: {context}\n"
          "Claim: {text}",
          "Evidence: {context}\n"
          "Claim: {candidate}\n\n"
          "What is the relation between the evidence and the claim? Answer "
          "with exactly one of: {label_names}."};
    case Schema::kPremiseHypothesis:
      return {
          "You are given a premise and a hypothesis. The relation between the "
          "premise and the hypothesis is \"{label_name}\".\n"
          "Rewrite the hypothesis with different wording and sentence "
          "structure so that its relation to the same premise stays "
          "\"{label_name}\". Do not rely on words that merely signal the "
          "relation. Reply with the rewritten hypothesis only.\n\n"
          "Premise: {context}\n"
          "Hypothesis: {text}",
          "Premise: {context}\n"
          "Hypothesis: {candidate}\n\n"
          "What is the relation between the premise and the hypothesis? "
          "Answer with exactly one of: {label_names}."};
    case Schema::kSingle:
      break;
  }
  return {
      "Rewrite the following text with different wording and sentence "
      "structure. The rewritten text must keep the meaning and the label "
      "\"{label_name}\", and must not rely on words that merely signal the "
      "label. Reply with the rewritten text only.\n\n"
      "Context: {context}\n"
      "Text: {text}",
      "Context: {context}\n"
      "Text: {candidate}\n\n"
      "Which label fits the text? Answer with exactly one of: {label_names}."};
}

std::string RenderTemplate(std::string_view text, const PromptBindings& bindings) {
  std::ostringstream out;
  bool first = true;
  size_t start = 0;
  while (start <= text.size()) {
    size_t end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(start, end - start);

    bool drop = false;
    for (const auto& name : PlaceholdersIn(line)) {
      auto it = bindings.find(name);
      if (it == bindings.end()) {
        throw Error(ErrorCode::kUnboundPlaceholder,
                    "template placeholder {" + name + "} is not bound");
      }
      if (!it->second) {
        if (name != "context") {
          throw Error(ErrorCode::kUnboundPlaceholder,
                      "template placeholder {" + name + "} has no value");
        }
        drop = true;
      }
    }
    if (!drop) {
      std::string rendered;
      for (size_t i = 0; i < line.size(); ++i) {
        if (line[i] == '{') {
          size_t j = i + 1;
          while (j < line.size() && IsPlaceholderChar(line[j])) ++j;
          if (j > i + 1 && j < line.size() && line[j] == '}') {
            rendered += *bindings.find(line.substr(i + 1, j - i - 1))->second;
            i = j;
            continue;
          }
        }
        rendered += line[i];
      }
      if (!first) out << '\n';
      out << rendered;
      first = false;
    }
    if (end == text.size()) break;
    start = end + 1;
  }
  return out.str();
}

std::string BuildPrompt(const LabeledDocument& doc, const PromptTemplate& prompts,
                        const LabelSet& labels) {
  PromptBindings bindings{
      {"label_name", labels.Name(doc.label())},
      {"context", doc.context_text()},
      {"text", doc.mutable_text()},
  };
  std::string prompt = RenderTemplate(prompts.instruction, bindings);
  if (prompt.find_first_not_of(" \t\r\n") == std::string::npos) {
    throw Error(ErrorCode::kUnboundPlaceholder, "generator prompt renders empty");
  }
  return prompt;
}

std::string BuildVerificationPrompt(const LabeledDocument& doc,
                                    std::string_view candidate,
                                    const PromptTemplate& prompts,
                                    const LabelSet& labels) {
  PromptBindings bindings{
      {"label_name", labels.Name(doc.label())},
      {"label_names", JoinNames(labels)},
      {"context", doc.context_text()},
      {"candidate", std::string(candidate)},
  };
  std::string prompt = RenderTemplate(prompts.verify_instruction, bindings);
  if (prompt.find_first_not_of(" \t\r\n") == std::string::npos) {
    throw Error(ErrorCode::kUnboundPlaceholder, "verifier prompt renders empty");
  }
  return prompt;
}

}  // namespace razor
