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

#ifndef RAZOR_CORPUS_H_
#define RAZOR_CORPUS_H_

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "razor/tokenizer.h"

namespace razor {

enum class Schema { kSingle, kClaimEvidence, kPremiseHypothesis };

std::string_view SchemaName(Schema schema);
// Accepts "single", "claim_evidence", "premise_hypothesis".
Schema ParseSchema(std::string_view name);

using LabelId = int;

// Class ids with display names. `encoding` records how labels are written
// in the JSONL files (integer ids or name strings) so that saving mirrors
// the input.
class LabelSet {
 public:
  enum class Encoding { kInteger, kString };

  struct Entry {
    LabelId id;
    std::string name;
    bool operator==(const Entry&) const = default;
  };

  LabelSet() = default;
  LabelSet(std::vector<Entry> entries, Encoding encoding);

  // Names default to the decimal id.
  static LabelSet FromIds(const std::vector<LabelId>& ids);
  // Ids are assigned 0..n-1 in the order given.
  static LabelSet FromNames(const std::vector<std::string>& names);

  bool Contains(LabelId id) const;
  const std::string& Name(LabelId id) const;
  std::optional<LabelId> IdOf(std::string_view name) const;

  const std::vector<Entry>& entries() const { return entries_; }
  Encoding encoding() const { return encoding_; }
  void set_encoding(Encoding encoding) { encoding_ = encoding; }
  size_t size() const { return entries_.size(); }

  bool operator==(const LabelSet&) const = default;

 private:
  std::vector<Entry> entries_;
  Encoding encoding_ = Encoding::kInteger;
};

// One labelled record. Only `mutable_text` is tokenized and ever rewritten;
// `context_text` (evidence or premise) is carried verbatim.
class LabeledDocument {
 public:
  static LabeledDocument Create(std::string id, std::string mutable_text,
                                std::optional<std::string> context_text,
                                LabelId label,
                                const TokenizerConfig& tokenizer = {});

  // Same id, label and context with a new mutable text.
  LabeledDocument WithText(std::string mutable_text,
                           const TokenizerConfig& tokenizer = {}) const;

  const std::string& id() const { return id_; }
  const std::string& mutable_text() const { return mutable_text_; }
  const std::optional<std::string>& context_text() const {
    return context_text_;
  }
  LabelId label() const { return label_; }
  const std::vector<std::string>& tokens() const { return tokens_; }

  bool operator==(const LabeledDocument&) const = default;

 private:
  LabeledDocument() = default;

  std::string id_;
  std::string mutable_text_;
  std::optional<std::string> context_text_;
  LabelId label_ = 0;
  std::vector<std::string> tokens_;
};

class Dataset {
 public:
  // Unchecked; call Validate() or use Create().
  Dataset(Schema schema, LabelSet labels,
          std::vector<LabeledDocument> documents,
          TokenizerConfig tokenizer = {});

  static Dataset Create(Schema schema, LabelSet labels,
                        std::vector<LabeledDocument> documents,
                        TokenizerConfig tokenizer = {});

  // Throws kInvalidDataset / kDuplicateId / kUnknownLabel.
  void Validate() const;

  Schema schema() const { return schema_; }
  const LabelSet& labels() const { return labels_; }
  const TokenizerConfig& tokenizer() const { return tokenizer_; }
  const std::vector<LabeledDocument>& documents() const { return documents_; }
  size_t size() const { return documents_.size(); }
  const LabeledDocument& operator[](size_t i) const { return documents_[i]; }

  std::optional<size_t> IndexOf(std::string_view id) const;
  const LabeledDocument& Find(std::string_view id) const;

  // Copy with the documents swapped out; schema, labels and tokenizer kept.
  Dataset WithDocuments(std::vector<LabeledDocument> documents) const;

  bool operator==(const Dataset& other) const;

 private:
  Schema schema_;
  LabelSet labels_;
  std::vector<LabeledDocument> documents_;
  TokenizerConfig tokenizer_;
  std::unordered_map<std::string, size_t> index_;
};

struct LoadOptions {
  // When absent the label set is inferred from the data and a warning is
  // logged.
  std::optional<LabelSet> labels;
  TokenizerConfig tokenizer;
};

Dataset LoadDataset(const std::filesystem::path& path, Schema schema,
                    const LoadOptions& options = {});
Dataset ParseDataset(std::istream& in, Schema schema,
                     const LoadOptions& options = {},
                     std::string_view source_name = "<stream>");

void SaveDataset(const Dataset& dataset, const std::filesystem::path& path);
void WriteDataset(const Dataset& dataset, std::ostream& out);

}  // namespace razor

#endif  // RAZOR_CORPUS_H_
