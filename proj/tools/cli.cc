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

#include "cli.h"

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "razor/attribution.h"
#include "razor/error.h"
#include "razor/evalkit.h"
#include "razor/http_backend.h"
#include "razor/logging.h"
#include "razor/mock_backend.h"
#include "razor/pipeline.h"

namespace razor::cli {
namespace {

namespace fs = std::filesystem;
using nlohmann::json;
using nlohmann::ordered_json;

// Flags shared by the commands that build a RunConfig. Unset flags leave
// the config file (or the defaults) alone.
struct ConfigFlags {
  std::string config_path;
  std::string k;
  std::optional<size_t> lambda;
  std::optional<double> epsilon;
  std::optional<int> max_iterations;
  std::optional<uint64_t> seed;
  std::optional<int> jobs;
  std::optional<size_t> candidates;
  std::string model;
  std::string backend;
  std::string rules;
};

struct Options {
  std::string input;
  std::string schema = "single";
  std::string out;
  std::string trace;
  std::string report;
  std::string checkpoint_dir;
  std::string embeddings;
  std::vector<std::string> terms;
  std::optional<size_t> top;
  std::optional<size_t> sample;
  ConfigFlags config;

  // synth
  BiasSpec bias;
  std::string rules_out;

  // report
  std::string before;
  std::string after;
  std::string csv;
  int max_n = 4;
  bool smoothing = false;

  // check-shortcut
  std::string attributions;
  std::string subset_file;
};

TopK ParseTopK(const std::string& text) {
  if (text.empty()) throw Error(ErrorCode::kInvalidConfig, "--k must not be empty");
  size_t used = 0;
  double value = 0.0;
  try {
    value = std::stod(text, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used == 0) throw Error(ErrorCode::kInvalidConfig, "--k must be a number: " + text);
  std::string rest = text.substr(used);
  if (rest == "%") return {true, value / 100.0};
  if (!rest.empty()) throw Error(ErrorCode::kInvalidConfig, "--k must be a number: " + text);
  if (text.find_first_of(".eE") != std::string::npos) return {true, value};
  if (value < 1) throw Error(ErrorCode::kInvalidConfig, "--k must be positive");
  return TopK::Count(static_cast<size_t>(value));
}

RunConfig BuildConfig(const ConfigFlags& flags) {
  RunConfig config;
  if (!flags.config_path.empty()) config = RunConfig::Load(flags.config_path);
  if (!flags.k.empty()) config.k = ParseTopK(flags.k);
  if (flags.lambda) config.lambda = *flags.lambda;
  if (flags.epsilon) config.epsilon = *flags.epsilon;
  if (flags.max_iterations) config.max_iterations = *flags.max_iterations;
  if (flags.seed) config.seed = *flags.seed;
  if (flags.jobs) config.jobs = *flags.jobs;
  if (flags.candidates) config.generator.candidates_per_doc = *flags.candidates;
  if (!flags.model.empty()) config.generator.model = flags.model;
  if (!flags.backend.empty()) config.generator.backend = flags.backend;
  config.Validate();
  return config;
}

std::unique_ptr<RewriteBackend> BuildBackend(const RunConfig& config,
                                             const std::string& rules_path) {
  const std::string& name = config.generator.backend;
  if (name == "mock") {
    if (rules_path.empty()) {
      throw Error(ErrorCode::kInvalidConfig, "the mock backend needs --rules");
    }
    return std::make_unique<MockBackend>(MockRules::Load(rules_path), config.seed);
  }
  if (name == "http") {
    HttpBackendOptions options = HttpBackendOptionsFromEnvironment(config.generator.model);
    options.timeout_seconds = config.generator.timeout_seconds;
    return std::make_unique<HttpBackend>(std::move(options));
  }
  throw Error(ErrorCode::kInvalidConfig, "unknown backend: " + name);
}

void CheckReadable(const std::string& path, const std::string& flag) {
  if (!fs::exists(path)) {
    throw Error(ErrorCode::kIo, flag + " does not exist: " + path);
  }
}

Dataset LoadInput(const Options& o, const RunConfig* config) {
  LoadOptions load;
  if (config != nullptr) {
    load.labels = config->labels;
    load.tokenizer = config->tokenizer;
  }
  return LoadDataset(o.input, ParseSchema(o.schema), load);
}

void WriteText(const std::string& path, const std::string& text) {
  std::ofstream file(path, std::ios::binary | std::ios::trunc);
  if (!file) throw Error(ErrorCode::kIo, "cannot write " + path);
  file << text;
  if (!file.flush()) throw Error(ErrorCode::kIo, "write failed: " + path);
}

ordered_json ScoredRow(size_t rank, const ScoredDocument& d, const LabelSet& labels) {
  ordered_json row;
  row["rank"] = rank;
  row["id"] = d.id;
  if (labels.encoding() == LabelSet::Encoding::kString) {
    row["label"] = labels.Name(d.label);
  } else {
    row["label"] = d.label;
  }
  if (d.gamma) {
    row["gamma"] = *d.gamma;
  } else {
    row["gamma"] = nullptr;
  }
  row["status"] = d.status;
  return row;
}

int Analyze(const Options& o, std::ostream& out) {
  RunConfig config = BuildConfig(o.config);
  ParseSchema(o.schema);
  CheckReadable(o.input, "--input");

  Dataset dataset = LoadInput(o, &config);
  CorpusStats stats = CorpusStats::Build(dataset);
  EmbeddingMap embeddings = ComputeEmbeddings(dataset, stats, config.lambda, config.jobs);
  std::vector<ScoredDocument> ranked = ScoreDocuments(dataset, embeddings);

  if (!o.embeddings.empty()) {
    std::ostringstream buffer;
    WriteEmbeddings(dataset, embeddings, buffer);
    WriteText(o.embeddings, buffer.str());
  }

  std::ostringstream rows;
  size_t scoreable = 0;
  double sum = 0.0;
  for (size_t i = 0; i < ranked.size(); ++i) {
    rows << ScoredRow(i + 1, ranked[i], dataset.labels()).dump() << '\n';
    if (ranked[i].gamma) {
      ++scoreable;
      sum += *ranked[i].gamma;
    }
  }
  if (!o.out.empty()) WriteText(o.out, rows.str());
  if (o.top) {
    for (size_t i = 0; i < std::min(*o.top, ranked.size()); ++i) {
      out << ScoredRow(i + 1, ranked[i], dataset.labels()).dump() << '\n';
    }
  } else if (o.out.empty()) {
    out << rows.str();
  }

  ordered_json summary;
  summary["documents"] = dataset.size();
  summary["scoreable"] = scoreable;
  summary["unscoreable"] = dataset.size() - scoreable;
  summary["mean_gamma"] = scoreable > 0 ? json(sum / scoreable) : json(nullptr);
  summary["max_gamma"] = scoreable > 0 ? json(*ranked.front().gamma) : json(nullptr);
  summary["vocabulary"] = stats.vocabulary_size();
  LogInfo("summary " + summary.dump());
  return 0;
}

Rewriter MakeRewriter(RewriteBackend& backend, const RunConfig& config,
                      const Dataset& dataset) {
  PromptTemplate prompts =
      config.prompts.value_or(PromptTemplate::DefaultFor(dataset.schema()));
  return Rewriter(backend, backend, config.generator, std::move(prompts),
                  dataset.labels(), config.tokenizer);
}

std::vector<std::string> DefaultTerms(const std::vector<std::string>& terms) {
  if (!terms.empty()) return terms;
  return {"no", "not"};
}

void WriteReport(const std::string& path, const BiasReport& report) {
  if (fs::path(path).extension() == ".csv") {
    WriteText(path, report.ToCsv());
  } else {
    WriteText(path, report.ToJson().dump(2) + "\n");
  }
}

int Rewrite(const Options& o, std::ostream& out) {
  RunConfig config = BuildConfig(o.config);
  ParseSchema(o.schema);
  std::unique_ptr<RewriteBackend> backend = BuildBackend(config, o.config.rules);
  CheckReadable(o.input, "--input");

  Dataset dataset = LoadInput(o, &config);
  Rewriter rewriter = MakeRewriter(*backend, config, dataset);
  IterationOutcome outcome = RunIteration(dataset, config, rewriter, 1);
  if (!o.trace.empty()) {
    WriteText(o.trace, TracesToJson({outcome.trace}).dump(2) + "\n");
  }
  if (!outcome.trace.ok()) {
    throw Error(ErrorCode::kBackendTransport, outcome.trace.error);
  }
  if (o.out.empty()) {
    WriteDataset(outcome.dataset, out);
  } else {
    SaveDataset(outcome.dataset, o.out);
  }
  LogInfo("replaced " + std::to_string(outcome.trace.replaced_ids.size()) + " of " +
          std::to_string(outcome.trace.selected_ids.size()) + " selected documents");
  return 0;
}

int Run(const Options& o, std::ostream& out) {
  RunConfig config = BuildConfig(o.config);
  ParseSchema(o.schema);
  std::unique_ptr<RewriteBackend> backend = BuildBackend(config, o.config.rules);
  CheckReadable(o.input, "--input");

  Dataset dataset = LoadInput(o, &config);
  Rewriter rewriter = MakeRewriter(*backend, config, dataset);
  RunOptions run_options;
  if (!o.checkpoint_dir.empty()) run_options.checkpoint_dir = o.checkpoint_dir;
  RunResult result = RunRazor(dataset, config, rewriter, run_options);

  if (!o.out.empty()) SaveDataset(result.dataset, o.out);
  if (!o.trace.empty()) WriteText(o.trace, TracesToJson(result.traces).dump(2) + "\n");

  ReportOptions report_options;
  report_options.terms = DefaultTerms(o.terms);
  BiasReport report = EmitReport(dataset, result.dataset, result.traces, report_options);
  if (!o.report.empty()) WriteReport(o.report, report);

  ordered_json summary;
  summary["stop_reason"] = result.stop_reason;
  summary["stop_detail"] = result.stop_detail;
  summary["iterations"] = result.traces.size();
  summary["objective_trace"] = report.objective_trace;
  summary["rewritten_documents"] = report.rewritten_documents;
  ordered_json gaps = ordered_json::object();
  for (const TermReport& t : report.terms) {
    gaps[t.term] = {{"before", t.gap_before}, {"after", t.gap_after}};
  }
  summary["frequency_gap"] = gaps;
  out << summary.dump() << '\n';
  if (o.out.empty()) WriteDataset(result.dataset, out);
  return 0;
}

int Synth(const Options& o, std::ostream& out) {
  o.bias.Validate();
  SynthCorpus corpus = GenerateBiasedCorpus(o.bias);
  if (o.out.empty()) {
    WriteDataset(corpus.dataset, out);
  } else {
    SaveDataset(corpus.dataset, o.out);
  }
  if (!o.rules_out.empty()) WriteText(o.rules_out, corpus.rules.ToJson().dump(2) + "\n");
  return 0;
}

int Report(const Options& o, std::ostream& out) {
  const Schema schema = ParseSchema(o.schema);
  if (o.max_n < 1) throw Error(ErrorCode::kInvalidConfig, "--max-n must be positive");
  CheckReadable(o.before, "--before");
  CheckReadable(o.after, "--after");

  Dataset before = LoadDataset(o.before, schema);
  LoadOptions load;
  load.labels = before.labels();
  Dataset after = LoadDataset(o.after, schema, load);
  std::vector<IterationTrace> traces;
  if (!o.trace.empty()) {
    CheckReadable(o.trace, "--trace");
    std::ifstream file(o.trace);
    json parsed = json::parse(file, nullptr, false);
    if (parsed.is_discarded()) {
      throw Error(ErrorCode::kMalformedInput, "trace is not valid JSON: " + o.trace);
    }
    traces = TracesFromJson(parsed);
  }

  ReportOptions options;
  options.terms = DefaultTerms(o.terms);
  options.sample = o.sample;
  options.seed = o.config.seed.value_or(0);
  options.bleu.max_n = o.max_n;
  options.bleu.smoothing = o.smoothing;
  BiasReport report = EmitReport(before, after, traces, options);

  if (!o.csv.empty()) WriteText(o.csv, report.ToCsv());
  if (o.out.empty()) {
    out << report.ToJson().dump(2) << '\n';
  } else {
    WriteReport(o.out, report);
  }
  return 0;
}

struct SubsetRequest {
  std::string doc_id;
  TokenSubset positions;
};

std::vector<SubsetRequest> LoadSubsetFile(const std::string& path) {
  std::ifstream file(path);
  if (!file) throw Error(ErrorCode::kIo, "cannot read " + path);
  std::vector<SubsetRequest> requests;
  std::string line;
  size_t line_number = 0;
  while (std::getline(file, line)) {
    ++line_number;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    const std::string where = path + ":" + std::to_string(line_number);
    json row = json::parse(line, nullptr, false);
    if (row.is_discarded() || !row.is_object()) {
      throw Error(ErrorCode::kMalformedInput, where + ": not a JSON object");
    }
    if (!row.contains("doc_id") || !row["doc_id"].is_string() ||
        !row.contains("positions") || !row["positions"].is_array()) {
      throw Error(ErrorCode::kMissingField, where + ": needs doc_id and positions");
    }
    SubsetRequest request{row["doc_id"].get<std::string>(), {}};
    for (const json& p : row["positions"]) {
      if (!p.is_number_unsigned()) {
        throw Error(ErrorCode::kMalformedInput, where + ": positions must be non-negative integers");
      }
      request.positions.push_back(p.get<size_t>());
    }
    requests.push_back(std::move(request));
  }
  return requests;
}

ordered_json Verdict(const AttributionRecord& record, const TokenSubset& raw) {
  const TokenSubset subset = NormalizeSubset(raw, record.token_count());
  const ShortcutVerdict verdict = IsShortcut(subset, record);
  ordered_json row;
  row["doc_id"] = record.doc_id;
  row["positions"] = subset;
  row["is_shortcut"] = verdict.is_shortcut;
  if (verdict.is_shortcut) {
    row["condition"] = nullptr;
    row["reason"] = nullptr;
  } else {
    row["condition"] = std::string(ShortcutConditionName(verdict.failed));
    row["reason"] = verdict.reason;
  }
  if (!subset.empty() && subset.size() < record.token_count()) {
    row["lemma1"] = Lemma1Holds(subset, record);
  } else {
    row["lemma1"] = nullptr;
  }
  return row;
}

int CheckShortcut(const Options& o, std::ostream& out) {
  CheckReadable(o.attributions, "--attributions");
  if (!o.subset_file.empty()) CheckReadable(o.subset_file, "--subset-file");

  std::vector<AttributionRecord> records = LoadAttributionRecords(o.attributions);
  std::ostringstream rows;
  if (o.subset_file.empty()) {
    for (const AttributionRecord& record : records) {
      for (const auto& [subset, predicted] : record.predicted_subset) {
        rows << Verdict(record, subset).dump() << '\n';
      }
    }
  } else {
    std::map<std::string, const AttributionRecord*> by_id;
    for (const AttributionRecord& record : records) by_id[record.doc_id] = &record;
    for (const SubsetRequest& request : LoadSubsetFile(o.subset_file)) {
      auto it = by_id.find(request.doc_id);
      if (it == by_id.end()) {
        throw Error(ErrorCode::kMalformedInput,
                    "subset names an unknown record: " + request.doc_id);
      }
      rows << Verdict(*it->second, request.positions).dump() << '\n';
    }
  }
  out << rows.str();
  return 0;
}

void AddConfigFlags(CLI::App* app, ConfigFlags& flags, bool with_backend) {
  app->add_option("--config", flags.config_path, "Run configuration (JSON)");
  app->add_option("--k", flags.k,
                  "Documents rewritten per iteration: a count, a fraction or a percentage");
  app->add_option("--lambda", flags.lambda, "Positional-encoding dimension (even)");
  app->add_option("--epsilon", flags.epsilon, "Relative improvement threshold");
  app->add_option("--max-iterations", flags.max_iterations, "Iteration cap");
  app->add_option("--seed", flags.seed, "Seed for the mock backend");
  app->add_option("--jobs", flags.jobs, "Worker threads and in-flight requests");
  if (with_backend) {
    app->add_option("--candidates", flags.candidates, "Rewrites requested per document");
    app->add_option("--model", flags.model, "Model name for the http backend");
    app->add_option("--backend", flags.backend, "mock or http")
        ->check(CLI::IsMember({"mock", "http"}));
    app->add_option("--rules", flags.rules, "Mock backend rules (JSON)");
  }
}

int Dispatch(CLI::App& app, const Options& o, std::ostream& out) {
  if (app.got_subcommand("analyze")) return Analyze(o, out);
  if (app.got_subcommand("rewrite")) return Rewrite(o, out);
  if (app.got_subcommand("run")) return Run(o, out);
  if (app.got_subcommand("synth")) return Synth(o, out);
  if (app.got_subcommand("report")) return Report(o, out);
  return CheckShortcut(o, out);
}

}  // namespace

int RunCli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  LogSink previous = SetLogSink([&err](LogLevel level, const std::string& message) {
    static constexpr const char* kTags = "DIWE";
    err << "[razor " << kTags[static_cast<int>(level)] << "] " << message << '\n';
  });
  struct Restore {
    LogSink sink;
    ~Restore() { SetLogSink(std::move(sink)); }
  } restore{std::move(previous)};

  Options o;
  CLI::App app{"Shortcut-aware dataset rewriting", "razor"};
  app.set_version_flag("--version", std::string("razor ") + RAZOR_VERSION_STRING);
  app.require_subcommand(1);

  CLI::App* analyze = app.add_subcommand("analyze", "Rank documents by shortcut score");
  analyze->add_option("--input", o.input, "Dataset (JSONL)")->required();
  analyze->add_option("--schema", o.schema, "single, claim_evidence or premise_hypothesis");
  analyze->add_option("--out", o.out, "Write the full ranking (JSONL) here");
  analyze->add_option("--top", o.top, "Print the N highest-scoring documents");
  analyze->add_option("--embeddings", o.embeddings, "Write surface embeddings (JSONL) here");
  AddConfigFlags(analyze, o.config, false);

  CLI::App* rewrite = app.add_subcommand("rewrite", "Run a single rewriting iteration");
  rewrite->add_option("--input", o.input, "Dataset (JSONL)")->required();
  rewrite->add_option("--schema", o.schema, "single, claim_evidence or premise_hypothesis");
  rewrite->add_option("--out", o.out, "Rewritten dataset (stdout if omitted)");
  rewrite->add_option("--trace", o.trace, "Iteration trace (JSON)");
  AddConfigFlags(rewrite, o.config, true);

  CLI::App* run = app.add_subcommand("run", "Iterate rewriting until convergence");
  run->add_option("--input", o.input, "Dataset (JSONL)")->required();
  run->add_option("--schema", o.schema, "single, claim_evidence or premise_hypothesis");
  run->add_option("--out", o.out, "Final dataset (stdout after the summary if omitted)");
  run->add_option("--trace", o.trace, "Iteration traces (JSON)");
  run->add_option("--report", o.report, "Bias report (.json or .csv)");
  run->add_option("--terms", o.terms, "Terms counted in the report")->delimiter(',');
  run->add_option("--checkpoint-dir", o.checkpoint_dir, "Snapshot and resume directory");
  AddConfigFlags(run, o.config, true);

  CLI::App* synth = app.add_subcommand("synth", "Generate a corpus with a planted token");
  synth->add_option("--planted-token", o.bias.planted_token, "Token to plant");
  synth->add_option("--biased-class", o.bias.biased_class, "Class that carries the token");
  synth->add_option("--bias-rate", o.bias.bias_rate, "Token rate in the biased class");
  synth->add_option("--background-rate", o.bias.background_rate,
                    "Token rate in the other classes");
  synth->add_option("--corpus-size", o.bias.corpus_size, "Number of documents");
  synth->add_option("--num-classes", o.bias.num_classes, "Number of classes");
  synth->add_option("--seed", o.bias.seed, "Generator seed");
  synth->add_option("--out", o.out, "Dataset (stdout if omitted)");
  synth->add_option("--rules-out", o.rules_out, "Mock rules that remove the token");

  CLI::App* report = app.add_subcommand("report", "Compare a dataset before and after");
  report->add_option("--before", o.before, "Original dataset")->required();
  report->add_option("--after", o.after, "Rewritten dataset")->required();
  report->add_option("--schema", o.schema, "single, claim_evidence or premise_hypothesis");
  report->add_option("--trace", o.trace, "Iteration traces from run");
  report->add_option("--terms", o.terms, "Terms to count")->delimiter(',');
  report->add_option("--sample", o.sample, "Count terms on N sampled rewritten pairs");
  report->add_option("--seed", o.config.seed, "Sampling seed");
  report->add_option("--max-n", o.max_n, "Highest BLEU n-gram order");
  report->add_flag("--smoothing", o.smoothing, "Smooth zero n-gram precisions");
  report->add_option("--out", o.out, "Report (.json or .csv; JSON to stdout if omitted)");
  report->add_option("--csv", o.csv, "Also write the CSV form here");

  CLI::App* check = app.add_subcommand("check-shortcut",
                                       "Evaluate shortcut conditions on attribution records");
  check->add_option("--attributions", o.attributions, "Attribution records (JSONL)")
      ->required();
  check->add_option("--subset-file", o.subset_file,
                    "Subsets to test (JSONL of doc_id, positions)");

  std::vector<std::string> args;
  for (int i = argc - 1; i > 0; --i) args.emplace_back(argv[i]);
  try {
    app.parse(std::move(args));
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : static_cast<int>(ExitClass::kUsage);
  }

  try {
    return Dispatch(app, o, out);
  } catch (const Error& e) {
    err << "razor: " << ErrorCodeName(e.code()) << ": " << e.what() << '\n';
    return static_cast<int>(ExitClassOf(e.code()));
  } catch (const nlohmann::json::exception& e) {
    err << "razor: malformed-input: " << e.what() << '\n';
    return static_cast<int>(ExitClass::kData);
  } catch (const fs::filesystem_error& e) {
    err << "razor: io: " << e.what() << '\n';
    return static_cast<int>(ExitClass::kData);
  }
}

}  // namespace razor::cli
