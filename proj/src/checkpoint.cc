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

#include "razor/checkpoint.h"

#include <cstdio>
#include <fstream>
#include <iomanip>
#include <sstream>

#include "razor/error.h"
#include "razor/logging.h"

namespace razor {
namespace {

using Json = nlohmann::ordered_json;

std::string Hex(uint64_t value) {
  std::ostringstream out;
  out << std::hex << std::setw(16) << std::setfill('0') << value;
  return out.str();
}

void WriteFileAtomic(const std::filesystem::path& path, const std::string& content) {
  std::filesystem::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw Error(ErrorCode::kIo, "cannot write " + path.string());
    out << content;
    out.flush();
    if (!out) throw Error(ErrorCode::kIo, "write failure on " + path.string());
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) throw Error(ErrorCode::kIo, "cannot write " + path.string());
}

Json ReadJsonFile(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::kIo, "cannot open " + path.string());
  try {
    return Json::parse(in);
  } catch (const Json::exception& e) {
    throw Error(ErrorCode::kCheckpointMismatch,
                path.string() + ": unreadable checkpoint file: " + e.what());
  }
}

Json CountersToJson(const CallCounters& c) {
  Json json;
  json["generate"] = c.generate_calls;
  json["verify"] = c.verify_calls;
  json["transport_failures"] = c.transport_failures;
  json["parse_failures"] = c.parse_failures;
  json["journal_hits"] = c.journal_hits;
  return json;
}

CallCounters CountersFromJson(const nlohmann::json& json) {
  CallCounters c;
  c.generate_calls = json.value("generate", uint64_t{0});
  c.verify_calls = json.value("verify", uint64_t{0});
  c.transport_failures = json.value("transport_failures", uint64_t{0});
  c.parse_failures = json.value("parse_failures", uint64_t{0});
  c.journal_hits = json.value("journal_hits", uint64_t{0});
  return c;
}

std::filesystem::path EnsureDirectory(std::filesystem::path dir) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec || !std::filesystem::is_directory(dir)) {
    throw Error(ErrorCode::kIo, "cannot create checkpoint directory " + dir.string());
  }
  return dir;
}

}  // namespace

nlohmann::ordered_json IterationTrace::ToJson() const {
  Json json;
  json["iteration"] = iteration;
  json["status"] = status;
  if (!error.empty()) json["error"] = error;
  json["objective_before"] = objective_before;
  json["objective_after"] = objective_after;
  json["selection_objective_after"] = selection_objective_after;
  json["scoreable_documents"] = scoreable_documents;
  json["selected_ids"] = selected_ids;
  json["replaced_ids"] = replaced_ids;
  json["kept_ids"] = kept_ids;
  json["llm_calls"] = CountersToJson(llm_calls);
  json["wall_time_seconds"] = wall_time_seconds;
  return json;
}

IterationTrace IterationTrace::FromJson(const nlohmann::json& json) {
  IterationTrace trace;
  try {
    trace.iteration = json.at("iteration").get<int>();
    trace.status = json.at("status").get<std::string>();
    trace.error = json.value("error", std::string());
    trace.objective_before = json.at("objective_before").get<double>();
    trace.objective_after = json.at("objective_after").get<double>();
    trace.selection_objective_after =
        json.value("selection_objective_after", trace.objective_after);
    trace.scoreable_documents = json.value("scoreable_documents", size_t{0});
    trace.selected_ids = json.at("selected_ids").get<std::vector<std::string>>();
    trace.replaced_ids = json.at("replaced_ids").get<std::vector<std::string>>();
    trace.kept_ids = json.at("kept_ids").get<std::vector<std::string>>();
    if (json.contains("llm_calls")) trace.llm_calls = CountersFromJson(json.at("llm_calls"));
    trace.wall_time_seconds = json.value("wall_time_seconds", 0.0);
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::kMalformedInput, std::string("iteration trace: ") + e.what());
  }
  return trace;
}

nlohmann::ordered_json TracesToJson(const std::vector<IterationTrace>& traces) {
  Json json = Json::array();
  for (const auto& t : traces) json.push_back(t.ToJson());
  return json;
}

std::vector<IterationTrace> TracesFromJson(const nlohmann::json& json) {
  std::vector<IterationTrace> traces;
  for (const auto& entry : json) traces.push_back(IterationTrace::FromJson(entry));
  return traces;
}

RewriteJournal::RewriteJournal(std::filesystem::path path) : path_(std::move(path)) {
  std::ifstream in(*path_, std::ios::binary);
  if (!in) return;
  std::string line;
  size_t line_number = 0;
  uintmax_t complete_bytes = 0;
  while (std::getline(in, line)) {
    ++line_number;
    if (in.eof()) {
      // No trailing newline: drop the partial record so appends start clean.
      in.close();
      std::filesystem::resize_file(*path_, complete_bytes);
      LogWarning(path_->string() + ":" + std::to_string(line_number) +
                 ": dropping incomplete journal line");
      break;
    }
    complete_bytes += line.size() + 1;
    if (line.empty()) continue;
    try {
      auto json = nlohmann::json::parse(line);
      Entry entry;
      entry.source_text = json.at("source_text").get<std::string>();
      for (const auto& c : json.at("candidates")) {
        RewriteCandidate candidate;
        candidate.text = c.at("text").get<std::string>();
        candidate.verified = c.at("verified").get<bool>();
        entry.candidates.push_back(std::move(candidate));
      }
      entries_[{json.at("iteration").get<int>(), json.at("doc_id").get<std::string>()}] =
          std::move(entry);
    } catch (const nlohmann::json::exception&) {
      // A torn final line from an interrupted write; that request is redone.
      LogWarning(path_->string() + ":" + std::to_string(line_number) +
                 ": ignoring unreadable journal line");
    }
  }
}

std::optional<std::vector<RewriteCandidate>> RewriteJournal::Lookup(
    int iteration, const LabeledDocument& doc) const {
  std::lock_guard<std::mutex> lock(mu_);
  auto it = entries_.find({iteration, doc.id()});
  if (it == entries_.end() || it->second.source_text != doc.mutable_text()) {
    return std::nullopt;
  }
  return it->second.candidates;
}

void RewriteJournal::Record(int iteration, const LabeledDocument& doc,
                            const std::vector<RewriteCandidate>& candidates) {
  std::lock_guard<std::mutex> lock(mu_);
  entries_[{iteration, doc.id()}] = Entry{doc.mutable_text(), candidates};
  if (!path_) return;
  Json json;
  json["iteration"] = iteration;
  json["doc_id"] = doc.id();
  json["source_text"] = doc.mutable_text();
  Json list = Json::array();
  for (const auto& c : candidates) {
    list.push_back({{"text", c.text}, {"verified", c.verified}});
  }
  json["candidates"] = std::move(list);
  std::ofstream out(*path_, std::ios::app | std::ios::binary);
  out << json.dump() << '\n';
  out.flush();
  if (!out) throw Error(ErrorCode::kIo, "cannot append to " + path_->string());
}

size_t RewriteJournal::size() const {
  std::lock_guard<std::mutex> lock(mu_);
  return entries_.size();
}

uint64_t DatasetFingerprint(const Dataset& dataset) {
  std::ostringstream out;
  WriteDataset(dataset, out);
  return StableHash(std::string(SchemaName(dataset.schema())) + '\n' + out.str());
}

CheckpointStore::CheckpointStore(std::filesystem::path dir)
    : dir_(EnsureDirectory(std::move(dir))), journal_(dir_ / "journal.jsonl") {}

bool CheckpointStore::HasRun() const {
  return std::filesystem::exists(dir_ / "run.json");
}

void CheckpointStore::Initialize(const RunConfig& config, const Dataset& input) {
  Json run;
  run["format"] = 1;
  run["config_fingerprint"] = Hex(config.Fingerprint());
  run["input_fingerprint"] = Hex(DatasetFingerprint(input));
  run["config"] = config.ToJson();
  SaveSnapshot(0, input);
  SaveTraces({});
  WriteFileAtomic(dir_ / "run.json", run.dump(2) + "\n");
}

void CheckpointStore::CheckCompatible(const RunConfig& config,
                                      const Dataset& input) const {
  const Json run = ReadJsonFile(dir_ / "run.json");
  if (run.value("config_fingerprint", "") != Hex(config.Fingerprint())) {
    throw Error(ErrorCode::kCheckpointMismatch,
                dir_.string() + " was written with a different run config");
  }
  if (run.value("input_fingerprint", "") != Hex(DatasetFingerprint(input))) {
    throw Error(ErrorCode::kCheckpointMismatch,
                dir_.string() + " was written for a different input dataset");
  }
}

std::filesystem::path CheckpointStore::SnapshotPath(int iteration) const {
  char name[32];
  std::snprintf(name, sizeof(name), "snapshot_%04d.jsonl", iteration);
  return dir_ / name;
}

void CheckpointStore::SaveSnapshot(int iteration, const Dataset& dataset) const {
  SaveDataset(dataset, SnapshotPath(iteration));
}

Dataset CheckpointStore::LoadSnapshot(int iteration, const Dataset& input) const {
  LoadOptions options;
  options.labels = input.labels();
  options.tokenizer = input.tokenizer();
  return LoadDataset(SnapshotPath(iteration), input.schema(), options);
}

void CheckpointStore::SaveTraces(const std::vector<IterationTrace>& traces) const {
  WriteFileAtomic(dir_ / "trace.json", TracesToJson(traces).dump(2) + "\n");
}

std::vector<IterationTrace> CheckpointStore::LoadTraces() const {
  const auto path = dir_ / "trace.json";
  if (!std::filesystem::exists(path)) return {};
  return TracesFromJson(ReadJsonFile(path));
}

}  // namespace razor
