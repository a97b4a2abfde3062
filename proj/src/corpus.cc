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

#include "razor/corpus.h"

#include <algorithm>
#include <fstream>
#include <set>
#include <sstream>

#include "json.hpp"
#include "razor/error.h"
#include "razor/logging.h"

namespace razor {
namespace {

using Json = nlohmann::ordered_json;

struct FieldNames {
  const char* mutable_field;
  const char* context_field;  // nullptr for the single-text schema
};

FieldNames FieldsOf(Schema schema) {
  switch (schema) {
    case Schema::kSingle: return {"text", nullptr};
    case Schema::kClaimEvidence: return {"claim", "evidence"};
    case Schema::kPremiseHypothesis: return {"hypothesis", "premise"};
  }
  return {"text", nullptr};
}

std::string Where(std::string_view source, size_t line) {
  std::ostringstream out;
  out << source << ":" << line;
  return out.str();
}

const std::string& RequireString(const Json& object, const char* field,
                                 std::string_view source, size_t line) {
  auto it = object.find(field);
  if (it == object.end()) {
    throw Error(ErrorCode::kMissingField, Where(source, line) +
                                              ": missing required field \"" +
                                              field + "\"");
  }
  if (!it->is_string()) {
    throw Error(ErrorCode::kMalformedInput, Where(source, line) + ": field \"" +
                                                field + "\" must be a string");
  }
  return it->get_ref<const std::string&>();
}

// Raw label as read from a line, before resolution against the label set.
struct RawLabel {
  bool is_integer = false;
  LabelId id = 0;
  std::string name;
};

struct RawRecord {
  size_t line = 0;
  std::string id;
  std::string mutable_text;
  std::optional<std::string> context_text;
  RawLabel label;
};

std::string LabelText(const RawLabel& label) {
  return label.is_integer ? std::to_string(label.id) : label.name;
}

}  // namespace

std::string_view SchemaName(Schema schema) {
  switch (schema) {
    case Schema::kSingle: return "single";
    case Schema::kClaimEvidence: return "claim_evidence";
    case Schema::kPremiseHypothesis: return "premise_hypothesis";
  }
  return "single";
}

Schema ParseSchema(std::string_view name) {
  if (name == "single") return Schema::kSingle;
  if (name == "claim_evidence") return Schema::kClaimEvidence;
  if (name == "premise_hypothesis") return Schema::kPremiseHypothesis;
  throw Error(ErrorCode::kInvalidConfig,
              "unknown schema \"" + std::string(name) +
                  "\" (expected single, claim_evidence or premise_hypothesis)");
}

LabelSet::LabelSet(std::vector<Entry> entries, Encoding encoding)
    : entries_(std::move(entries)), encoding_(encoding) {
  std::set<LabelId> ids;
  std::set<std::string> names;
  for (const Entry& e : entries_) {
    if (!ids.insert(e.id).second || !names.insert(e.name).second) {
      throw Error(ErrorCode::kInvalidConfig,
                  "label set repeats id or name \"" + e.name + "\"");
    }
  }
}

LabelSet LabelSet::FromIds(const std::vector<LabelId>& ids) {
  std::vector<Entry> entries;
  for (LabelId id : ids) entries.push_back({id, std::to_string(id)});
  return LabelSet(std::move(entries), Encoding::kInteger);
}

LabelSet LabelSet::FromNames(const std::vector<std::string>& names) {
  std::vector<Entry> entries;
  for (size_t i = 0; i < names.size(); ++i) {
    entries.push_back({static_cast<LabelId>(i), names[i]});
  }
  return LabelSet(std::move(entries), Encoding::kString);
}

bool LabelSet::Contains(LabelId id) const {
  return std::any_of(entries_.begin(), entries_.end(),
                     [id](const Entry& e) { return e.id == id; });
}

const std::string& LabelSet::Name(LabelId id) const {
  for (const Entry& e : entries_) {
    if (e.id == id) return e.name;
  }
  throw Error(ErrorCode::kMissingLabelName,
              "no name for label " + std::to_string(id));
}

std::optional<LabelId> LabelSet::IdOf(std::string_view name) const {
  for (const Entry& e : entries_) {
    if (e.name == name) return e.id;
  }
  return std::nullopt;
}

LabeledDocument LabeledDocument::Create(std::string id, std::string mutable_text,
                                        std::optional<std::string> context_text,
                                        LabelId label,
                                        const TokenizerConfig& tokenizer) {
  LabeledDocument doc;
  doc.tokens_ = Tokenize(mutable_text, tokenizer);
  if (doc.tokens_.empty()) {
    throw Error(ErrorCode::kEmptyText,
                "document \"" + id + "\" has no tokens after normalization");
  }
  doc.id_ = std::move(id);
  doc.mutable_text_ = std::move(mutable_text);
  doc.context_text_ = std::move(context_text);
  doc.label_ = label;
  return doc;
}

LabeledDocument LabeledDocument::WithText(std::string mutable_text,
                                          const TokenizerConfig& tokenizer) const {
  return Create(id_, std::move(mutable_text), context_text_, label_, tokenizer);
}

Dataset::Dataset(Schema schema, LabelSet labels,
                 std::vector<LabeledDocument> documents,
                 TokenizerConfig tokenizer)
    : schema_(schema),
      labels_(std::move(labels)),
      documents_(std::move(documents)),
      tokenizer_(tokenizer) {
  for (size_t i = 0; i < documents_.size(); ++i) {
    index_.emplace(documents_[i].id(), i);
  }
}

Dataset Dataset::Create(Schema schema, LabelSet labels,
                        std::vector<LabeledDocument> documents,
                        TokenizerConfig tokenizer) {
  Dataset dataset(schema, std::move(labels), std::move(documents), tokenizer);
  dataset.Validate();
  return dataset;
}

void Dataset::Validate() const {
  if (index_.size() != documents_.size()) {
    std::set<std::string> seen;
    for (const auto& doc : documents_) {
      if (!seen.insert(doc.id()).second) {
        throw Error(ErrorCode::kDuplicateId, "duplicate id \"" + doc.id() + "\"");
      }
    }
  }
  std::set<LabelId> present;
  for (const auto& doc : documents_) {
    if (!labels_.Contains(doc.label())) {
      throw Error(ErrorCode::kUnknownLabel,
                  "document \"" + doc.id() + "\" has undeclared label " +
                      std::to_string(doc.label()));
    }
    if (doc.context_text().has_value() != (schema_ != Schema::kSingle)) {
      throw Error(ErrorCode::kInvalidDataset,
                  "document \"" + doc.id() + "\" does not match schema " +
                      std::string(SchemaName(schema_)));
    }
    present.insert(doc.label());
  }
  if (present.size() < 2) {
    throw Error(ErrorCode::kNoContrast,
                "no contrast: dataset needs at least 2 distinct labels, found " +
                    std::to_string(present.size()));
  }
}

std::optional<size_t> Dataset::IndexOf(std::string_view id) const {
  auto it = index_.find(std::string(id));
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

const LabeledDocument& Dataset::Find(std::string_view id) const {
  auto index = IndexOf(id);
  if (!index) {
    throw Error(ErrorCode::kOutOfRange,
                "no document with id \"" + std::string(id) + "\"");
  }
  return documents_[*index];
}

Dataset Dataset::WithDocuments(std::vector<LabeledDocument> documents) const {
  return Dataset(schema_, labels_, std::move(documents), tokenizer_);
}

bool Dataset::operator==(const Dataset& other) const {
  return schema_ == other.schema_ && labels_ == other.labels_ &&
         tokenizer_ == other.tokenizer_ && documents_ == other.documents_;
}

Dataset ParseDataset(std::istream& in, Schema schema, const LoadOptions& options,
                     std::string_view source_name) {
  const FieldNames fields = FieldsOf(schema);
  std::vector<RawRecord> records;
  std::unordered_map<std::string, size_t> first_line;
  std::optional<bool> integer_labels;

  std::string line;
  size_t line_number = 0;
  while (std::getline(in, line)) {
    ++line_number;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    Json object;
    try {
      object = Json::parse(line);
    } catch (const Json::parse_error& e) {
      throw Error(ErrorCode::kMalformedInput,
                  Where(source_name, line_number) + ": malformed JSON: " + e.what());
    }
    if (!object.is_object()) {
      throw Error(ErrorCode::kMalformedInput,
                  Where(source_name, line_number) + ": expected a JSON object");
    }
    RawRecord record;
    record.line = line_number;
    record.id = RequireString(object, "id", source_name, line_number);
    record.mutable_text =
        RequireString(object, fields.mutable_field, source_name, line_number);
    if (fields.context_field != nullptr) {
      record.context_text =
          RequireString(object, fields.context_field, source_name, line_number);
    }
    auto label = object.find("label");
    if (label == object.end()) {
      throw Error(ErrorCode::kMissingField, Where(source_name, line_number) +
                                                ": missing required field \"label\"");
    }
    if (label->is_number_integer()) {
      record.label.is_integer = true;
      record.label.id = label->get<LabelId>();
    } else if (label->is_string()) {
      record.label.name = label->get<std::string>();
    } else {
      throw Error(ErrorCode::kMalformedInput,
                  Where(source_name, line_number) +
                      ": label must be an integer or a string");
    }
    if (integer_labels && *integer_labels != record.label.is_integer) {
      throw Error(ErrorCode::kMalformedInput,
                  Where(source_name, line_number) +
                      ": mixes integer and string labels");
    }
    integer_labels = record.label.is_integer;
    auto [it, inserted] = first_line.emplace(record.id, line_number);
    if (!inserted) {
      throw Error(ErrorCode::kDuplicateId,
                  Where(source_name, line_number) + ": duplicate id \"" +
                      record.id + "\" (first seen on line " +
                      std::to_string(it->second) + ")");
    }
    records.push_back(std::move(record));
  }
  if (in.bad()) {
    throw Error(ErrorCode::kIo, "read failure on " + std::string(source_name));
  }

  const bool by_id = integer_labels.value_or(true);
  LabelSet labels;
  if (options.labels) {
    labels = *options.labels;
  } else {
    if (by_id) {
      std::set<LabelId> ids;
      for (const auto& r : records) ids.insert(r.label.id);
      labels = LabelSet::FromIds({ids.begin(), ids.end()});
    } else {
      std::set<std::string> names;
      for (const auto& r : records) names.insert(r.label.name);
      labels = LabelSet::FromNames({names.begin(), names.end()});
    }
    LogWarning(std::string(source_name) + ": no label set declared; inferred " +
               std::to_string(labels.size()) + " labels from the data");
  }
  labels.set_encoding(by_id ? LabelSet::Encoding::kInteger
                            : LabelSet::Encoding::kString);

  std::vector<LabeledDocument> documents;
  documents.reserve(records.size());
  for (auto& r : records) {
    std::optional<LabelId> id;
    if (r.label.is_integer) {
      if (labels.Contains(r.label.id)) id = r.label.id;
    } else {
      id = labels.IdOf(r.label.name);
    }
    if (!id) {
      throw Error(ErrorCode::kUnknownLabel,
                  Where(source_name, r.line) + ": label \"" + LabelText(r.label) +
                      "\" is not in the declared label set");
    }
    try {
      documents.push_back(LabeledDocument::Create(
          std::move(r.id), std::move(r.mutable_text), std::move(r.context_text),
          *id, options.tokenizer));
    } catch (const Error& e) {
      throw Error(e.code(), Where(source_name, r.line) + ": " + e.what());
    }
  }
  return Dataset::Create(schema, std::move(labels), std::move(documents),
                         options.tokenizer);
}

Dataset LoadDataset(const std::filesystem::path& path, Schema schema,
                    const LoadOptions& options) {
  std::ifstream in(path);
  if (!in) {
    throw Error(ErrorCode::kIo, "cannot open " + path.string());
  }
  return ParseDataset(in, schema, options, path.string());
}

void WriteDataset(const Dataset& dataset, std::ostream& out) {
  dataset.Validate();
  const bool by_id =
      dataset.labels().encoding() == LabelSet::Encoding::kInteger;
  for (const auto& doc : dataset.documents()) {
    Json object;
    object["id"] = doc.id();
    // Key order mirrors the documented input layout of each schema.
    switch (dataset.schema()) {
      case Schema::kSingle:
        object["text"] = doc.mutable_text();
        break;
      case Schema::kClaimEvidence:
        object["claim"] = doc.mutable_text();
        object["evidence"] = *doc.context_text();
        break;
      case Schema::kPremiseHypothesis:
        object["premise"] = *doc.context_text();
        object["hypothesis"] = doc.mutable_text();
        break;
    }
    if (by_id) {
      object["label"] = doc.label();
    } else {
      object["label"] = dataset.labels().Name(doc.label());
    }
    out << object.dump() << '\n';
  }
}

void SaveDataset(const Dataset& dataset, const std::filesystem::path& path) {
  dataset.Validate();
  std::filesystem::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) {
      throw Error(ErrorCode::kIo, "cannot write " + path.string());
    }
    WriteDataset(dataset, out);
    out.flush();
    if (!out) {
      throw Error(ErrorCode::kIo, "write failure on " + path.string());
    }
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) {
    std::filesystem::remove(tmp, ec);
    throw Error(ErrorCode::kIo, "cannot write " + path.string());
  }
}

}  // namespace razor
