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

#include "razor/evalkit.h"

#include <random>
#include <sstream>
#include <string>

#include <gtest/gtest.h>

#include "razor/error.h"
#include "razor/logging.h"
#include "test_util.h"

namespace razor {
namespace {

using testing::MakeDataset;

template <typename Fn>
ErrorCode CodeOf(Fn&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "no error thrown";
  return ErrorCode::kIo;
}

TEST(CountTermsTest, WholeTokenCaseInsensitive) {
  Dataset d = MakeDataset({{"not not no", 0}, {"Nothing happened", 1}, {"Not now", 1}});
  auto counts = CountTerms(d, {"no", "not"});
  EXPECT_EQ(counts["not"].total, 3u);
  EXPECT_EQ(counts["no"].total, 1u);
  EXPECT_EQ(counts["not"].per_class[0], 2u);
  EXPECT_EQ(counts["not"].per_class[1], 1u);
  EXPECT_EQ(counts["no"].per_class[1], 0u);
  EXPECT_EQ(CodeOf([&] { CountTerms(d, {}); }), ErrorCode::kInvalidConfig);
}

TEST(CountTermsTest, ContractionsAreNotCounted) {
  Dataset d = MakeDataset({{"it isn't here", 0}, {"don't go", 1}});
  EXPECT_EQ(CountTerms(d, {"not"})["not"].total, 0u);
}

TEST(CountTermsTest, AdditiveAndPermutationInvariant) {
  std::mt19937_64 rng(8);
  Dataset d = testing::RandomDataset(rng, 60, 2);
  auto docs = d.documents();
  std::vector<LabeledDocument> left(docs.begin(), docs.begin() + 25);
  std::vector<LabeledDocument> right(docs.begin() + 25, docs.end());
  auto whole = CountTerms(d, {"not", "cat"});
  auto a = CountTerms(d.WithDocuments(left), {"not", "cat"});
  auto b = CountTerms(d.WithDocuments(right), {"not", "cat"});
  for (const std::string term : {"not", "cat"}) {
    EXPECT_EQ(whole[term].total, a[term].total + b[term].total);
  }
  std::shuffle(docs.begin(), docs.end(), rng);
  EXPECT_EQ(CountTerms(d.WithDocuments(docs), {"not", "cat"}), whole);
}

TEST(FrequencyGapTest, Extremes) {
  EXPECT_DOUBLE_EQ(FrequencyGap(MakeDataset({{"a x", 0}, {"b x", 1}}), "x"), 0.0);
  EXPECT_DOUBLE_EQ(FrequencyGap(MakeDataset({{"a x", 0}, {"x c", 0}, {"b", 1}}), "x"), 1.0);
  EXPECT_DOUBLE_EQ(
      FrequencyGap(MakeDataset({{"x", 0}, {"a", 1}, {"x", 2}, {"a", 2}}, {0, 1, 2}), "x"), 1.0);
}

TEST(FrequencyGapTest, InvariantUnderDuplication) {
  std::mt19937_64 rng(2);
  Dataset d = testing::RandomDataset(rng, 40, 2);
  auto docs = d.documents();
  std::vector<LabeledDocument> doubled = docs;
  for (const auto& doc : docs) {
    doubled.push_back(LabeledDocument::Create(doc.id() + "b", doc.mutable_text(),
                                              std::nullopt, doc.label()));
  }
  EXPECT_DOUBLE_EQ(FrequencyGap(d.WithDocuments(doubled), "not"), FrequencyGap(d, "not"));
}

TEST(SynthTest, DeterministicAndCalibrated) {
  BiasSpec spec;
  SynthCorpus a = GenerateBiasedCorpus(spec);
  SynthCorpus b = GenerateBiasedCorpus(spec);
  std::ostringstream sa, sb;
  WriteDataset(a.dataset, sa);
  WriteDataset(b.dataset, sb);
  EXPECT_EQ(sa.str(), sb.str());
  EXPECT_EQ(a.dataset.size(), 1000u);

  size_t biased = 0, carriers = 0;
  for (const auto& doc : a.dataset.documents()) {
    EXPECT_GE(doc.tokens().size(), 4u);
    if (doc.label() != spec.biased_class) continue;
    ++biased;
    for (const auto& t : doc.tokens()) {
      if (t == "not") {
        ++carriers;
        break;
      }
    }
  }
  const double rate = static_cast<double>(carriers) / static_cast<double>(biased);
  EXPECT_GE(rate, 0.87);
  EXPECT_LE(rate, 0.93);
  // Binomial 3-sigma band around 0.8 for 500 documents per class.
  EXPECT_NEAR(FrequencyGap(a.dataset, "not"), 0.8, 3 * std::sqrt(0.09 / 500 + 0.09 / 500));

  spec.seed = 1;
  std::ostringstream sc;
  WriteDataset(GenerateBiasedCorpus(spec).dataset, sc);
  EXPECT_NE(sc.str(), sa.str());
}

TEST(SynthTest, FullBiasAndMultiClass) {
  BiasSpec spec;
  spec.bias_rate = 1.0;
  spec.background_rate = 0.0;
  spec.corpus_size = 90;
  spec.num_classes = 3;
  spec.biased_class = 2;
  spec.planted_token = "spielberg";
  SynthCorpus c = GenerateBiasedCorpus(spec);
  auto counts = CountTerms(c.dataset, {"spielberg"})["spielberg"];
  EXPECT_EQ(counts.per_class[2], 30u);
  EXPECT_EQ(counts.total, 30u);
  EXPECT_DOUBLE_EQ(FrequencyGap(c.dataset, "spielberg"), 1.0);
}

TEST(SynthTest, RulesRemoveTheToken) {
  SynthCorpus c = GenerateBiasedCorpus(BiasSpec{});
  MockBackend backend(c.rules);
  for (const auto& doc : c.dataset.documents()) {
    GenerationRequest g;
    g.text = doc.mutable_text();
    const std::string out = backend.Generate(g);
    for (const auto& t : Tokenize(out)) ASSERT_NE(t, "not") << out;
    EXPECT_GE(Tokenize(out).size(), 4u);
  }
}

TEST(SynthTest, InvalidSpecs) {
  BiasSpec spec;
  spec.bias_rate = 0.1;
  spec.background_rate = 0.2;
  EXPECT_EQ(CodeOf([&] { GenerateBiasedCorpus(spec); }), ErrorCode::kInvalidConfig);
  spec = {};
  spec.bias_rate = 1.2;
  EXPECT_EQ(CodeOf([&] { spec.Validate(); }), ErrorCode::kInvalidConfig);
  spec = {};
  spec.planted_token = "two words";
  EXPECT_EQ(CodeOf([&] { spec.Validate(); }), ErrorCode::kInvalidConfig);
  spec = {};
  spec.biased_class = 2;
  EXPECT_EQ(CodeOf([&] { spec.Validate(); }), ErrorCode::kInvalidConfig);
}

TEST(EmitReportTest, IdenticalDatasets) {
  Dataset d = MakeDataset({{"a not b", 0}, {"c d", 1}});
  ReportOptions options;
  options.terms = {"not"};
  BiasReport r = EmitReport(d, d, {}, options);
  EXPECT_EQ(r.rewritten_documents, 0u);
  EXPECT_NEAR(*r.corpus_bleu, 100.0, 1e-9);
  EXPECT_EQ(r.terms[0].before, r.terms[0].after);
  EXPECT_DOUBLE_EQ(r.terms[0].gap_after, r.terms[0].gap_before);
}

TEST(EmitReportTest, DeltaEqualsRemovals) {
  SynthCorpus c = GenerateBiasedCorpus(BiasSpec{});
  MockBackend backend(c.rules);
  auto docs = c.dataset.documents();
  size_t removed = 0;
  for (size_t i = 0; i < docs.size(); i += 3) {
    GenerationRequest g;
    g.text = docs[i].mutable_text();
    const std::string out = backend.Generate(g);
    if (out == g.text) continue;
    ++removed;
    docs[i] = docs[i].WithText(out);
  }
  Dataset after = c.dataset.WithDocuments(docs);
  ReportOptions options;
  options.terms = {"not"};
  BiasReport r = EmitReport(c.dataset, after, {}, options);
  EXPECT_EQ(r.rewritten_documents, removed);
  EXPECT_EQ(r.ToJson()["terms"]["not"]["total_delta"].get<long long>(),
            -static_cast<long long>(removed));
  EXPECT_LT(*r.corpus_bleu, 100.0);
  EXPECT_NE(r.ToCsv().find("count,not,total,"), std::string::npos);

  options.sample = 20;
  options.seed = 3;
  BiasReport sampled = EmitReport(c.dataset, after, {}, options);
  EXPECT_EQ(sampled.sampled_pairs, 20u);
  EXPECT_EQ(sampled.terms[0].before.total - sampled.terms[0].after.total, 20u);
  EXPECT_EQ(EmitReport(c.dataset, after, {}, options).ToJson(), sampled.ToJson());
}

TEST(EmitReportTest, ObjectiveTraceSkipsAborted) {
  Dataset d = MakeDataset({{"a b", 0}, {"c d", 1}});
  IterationTrace t1;
  t1.objective_before = 1;
  t1.objective_after = 2;
  IterationTrace aborted;
  aborted.status = "aborted";
  IterationTrace t2;
  t2.objective_before = 2;
  t2.objective_after = 3;
  BiasReport r = EmitReport(d, d, {t1, aborted, t2}, {});
  EXPECT_EQ(r.objective_trace, (std::vector<double>{1, 2, 3}));
}

TEST(EmitReportTest, Mismatches) {
  Dataset d = MakeDataset({{"a b", 0}, {"c d", 1}});
  Dataset pair(Schema::kClaimEvidence, d.labels(),
               {LabeledDocument::Create("d0", "a b", std::string("e"), 0),
                LabeledDocument::Create("d1", "c d", std::string("e"), 1)});
  EXPECT_EQ(CodeOf([&] { EmitReport(d, pair, {}, {}); }), ErrorCode::kSchemaMismatch);
  Dataset other = MakeDataset({{"a b", 0}, {"c d", 1}, {"e f", 1}});
  EXPECT_EQ(CodeOf([&] { EmitReport(d, other, {}, {}); }), ErrorCode::kSchemaMismatch);
}

}  // namespace
}  // namespace razor
