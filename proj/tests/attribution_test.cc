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

#include "razor/attribution.h"

#include <random>
#include <string>

#include <gtest/gtest.h>

#include "attribution_fixtures.h"
#include "razor/error.h"
#include "test_util.h"

namespace razor {
namespace {

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

AttributionRecord Simple() {
  AttributionRecord r;
  r.doc_id = "c1";
  r.token_attributions = {{3, 0}, {0, 4}, {0.1, 0}, {0, 0.1}, {0.2, 0.2}};
  r.true_label = 0;
  r.predicted_full = 1;
  r.predicted_subset[{0, 1}] = 1;
  r.predicted_subset[{2}] = 0;
  r.predicted_subset[{0, 1, 2}] = 1;
  return r;
}

TEST(AttributionMassTest, NormOfSum) {
  AttributionRecord r = Simple();
  EXPECT_DOUBLE_EQ(AttributionMass({0, 1}, r), 5.0);
  EXPECT_DOUBLE_EQ(AttributionMass({}, r), 0.0);
}

TEST(NormalizeSubsetTest, SortsAndRejects) {
  EXPECT_EQ(NormalizeSubset({3, 1}, 5), (TokenSubset{1, 3}));
  EXPECT_EQ(CodeOf([] { NormalizeSubset({1, 1}, 5); }), ErrorCode::kOutOfRange);
  EXPECT_EQ(CodeOf([] { NormalizeSubset({5}, 5); }), ErrorCode::kOutOfRange);
}

TEST(AttributionDominanceTest, HoldsForDominantSubset) {
  AttributionRecord r = Simple();
  EXPECT_TRUE(Lemma1Holds({0, 1}, r));
  EXPECT_FALSE(Lemma1Holds({2}, r));
}

TEST(AttributionDominanceTest, CancellingSubsetCanFail) {
  // Large but opposed vectors: the per-token norms dominate, the norm of
  // the sum does not.
  AttributionRecord r;
  r.doc_id = "x";
  r.token_attributions = {{5, 0}, {-5, 0}, {1, 0}, {1, 0}};
  EXPECT_FALSE(Lemma1Holds({0, 1}, r));
}

TEST(AttributionDominanceTest, Errors) {
  AttributionRecord r = Simple();
  EXPECT_EQ(CodeOf([&] { Lemma1Holds({}, r); }), ErrorCode::kOutOfRange);
  EXPECT_EQ(CodeOf([&] { Lemma1Holds({0, 1, 2, 3, 4}, r); }), ErrorCode::kEmptyComplement);
}

TEST(IsShortcutTest, AllConditionsMet) {
  ShortcutVerdict v = IsShortcut({1, 0}, Simple());
  EXPECT_TRUE(v.is_shortcut);
  EXPECT_EQ(v.failed, ShortcutCondition::kNone);
}

TEST(IsShortcutTest, EachConditionFailsAlone) {
  AttributionRecord r = Simple();
  ShortcutVerdict changed = IsShortcut({2}, r);
  EXPECT_FALSE(changed.is_shortcut);
  EXPECT_EQ(changed.failed, ShortcutCondition::kPredictionChanged);
  EXPECT_EQ(ShortcutConditionName(changed.failed), "prediction_changed");

  AttributionRecord correct = r;
  correct.true_label = 1;
  EXPECT_EQ(IsShortcut({0, 1}, correct).failed, ShortcutCondition::kPredictionCorrect);

  ShortcutVerdict large = IsShortcut({0, 1, 2}, r);
  EXPECT_EQ(large.failed, ShortcutCondition::kSubsetTooLarge);
  EXPECT_FALSE(large.reason.empty());
}

TEST(IsShortcutTest, MissingPrediction) {
  EXPECT_EQ(CodeOf([] { IsShortcut({3}, Simple()); }), ErrorCode::kMissingPrediction);
}

TEST(IsShortcutTest, RandomizedConstructionsAreDominant) {
  std::mt19937_64 rng(99);
  for (int i = 0; i < 200; ++i) {
    auto c = testing::MakeShortcutCase(rng);
    ASSERT_TRUE(IsShortcut(c.subset, c.record).is_shortcut);
    ASSERT_TRUE(Lemma1Holds(c.subset, c.record)) << SerializeAttributionRecord(c.record);
  }
}

TEST(AttributionIoTest, RoundTrip) {
  AttributionRecord r = Simple();
  AttributionRecord again = ParseAttributionRecord(SerializeAttributionRecord(r));
  EXPECT_EQ(again.doc_id, r.doc_id);
  EXPECT_EQ(again.token_attributions, r.token_attributions);
  EXPECT_EQ(again.predicted_subset, r.predicted_subset);
  EXPECT_EQ(again.true_label, r.true_label);
}

TEST(AttributionIoTest, Errors) {
  EXPECT_EQ(CodeOf([] { ParseAttributionRecord("{not json"); }), ErrorCode::kMalformedInput);
  EXPECT_EQ(CodeOf([] {
              ParseAttributionRecord(
                  R"({"doc_id":"a","attributions":[[1,2],[3]],"predicted_full":0,"true_label":1})");
            }),
            ErrorCode::kDimensionMismatch);
  EXPECT_EQ(CodeOf([] {
              ParseAttributionRecord(
                  R"({"doc_id":"a","attributions":[[1],[3]],"predicted_full":0,"true_label":1,)"
                  R"("subsets":[{"positions":[4],"predicted":0}]})");
            }),
            ErrorCode::kOutOfRange);
}

TEST(AttributionIoTest, LoadNamesTheLine) {
  testing::TempDir dir;
  testing::WriteFile(dir / "a.jsonl",
                     SerializeAttributionRecord(Simple()) + "\n\n{\"doc_id\":1}\n");
  try {
    LoadAttributionRecords(dir / "a.jsonl");
    FAIL();
  } catch (const Error& e) {
    EXPECT_NE(std::string(e.what()).find("a.jsonl:3"), std::string::npos) << e.what();
  }
}

}  // namespace
}  // namespace razor
