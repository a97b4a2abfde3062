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

#include "razor/surface.h"

#include <cmath>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <gtest/gtest.h>

#include "json.hpp"
#include "naive_reference.h"
#include "razor/error.h"
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

Dataset OracleCorpus() {
  return MakeDataset({{"the cat sat on the mat", 0},
                      {"the dog did not sit", 1},
                      {"a cat is not a dog", 0},
                      {"the bird sang", 1},
                      {"no bird is a cat", 0}});
}

struct TfIdfCase {
  const char* token;
  size_t doc;
  double expected;
};

// From tests/oracle/tfidf_oracle.py (50-digit arithmetic).
constexpr TfIdfCase kTfIdfCases[] = {
    {"the", 0, 0.1702752079219968944},   {"cat", 0, 0.085137603960998447201},
    {"mat", 0, 0.26823965207235006243},  {"not", 1, 0.18325814637483101304},
    {"dog", 1, 0.18325814637483101304},  {"a", 2, 0.30543024395805168839},
    {"not", 2, 0.1527151219790258442},   {"bird", 3, 0.30543024395805168839},
    {"sang", 3, 0.53647930414470012487}, {"no", 4, 0.32188758248682007492},
    {"cat", 4, 0.10216512475319813664},  {"is", 4, 0.18325814637483101304},
    {"sit", 0, 0.0},
};

TEST(TfIdfTest, MatchesOracle) {
  Dataset d = OracleCorpus();
  CorpusStats stats = CorpusStats::Build(d);
  for (const auto& c : kTfIdfCases) {
    EXPECT_NEAR(TfIdfScore(c.token, d[c.doc], stats), c.expected, 1e-12)
        << c.token << " in doc " << c.doc;
  }
}

TEST(TfIdfTest, TwoDocumentExample) {
  Dataset d = MakeDataset({{"a b", 0}, {"a a c", 1}});
  CorpusStats stats = CorpusStats::Build(d);
  EXPECT_NEAR(TfIdfScore("b", d[0], stats), 0.34657359027997265471, 1e-12);
  EXPECT_EQ(TfIdfScore("a", d[1], stats), 0.0);
  EXPECT_EQ(TfIdfScore("zebra", d[0], stats), 0.0);
}

TEST(TfIdfTest, StaleStats) {
  Dataset d = MakeDataset({{"a b", 0}, {"a c", 1}});
  CorpusStats stats = CorpusStats::Build(d);
  auto fresh = d[0].WithText("a q");
  EXPECT_EQ(CodeOf([&] { TfIdfScore("q", fresh, stats); }), ErrorCode::kStaleStats);
}

TEST(CorpusStatsTest, ApplyReplacementMatchesRebuild) {
  Dataset d = OracleCorpus();
  CorpusStats stats = CorpusStats::Build(d);
  auto docs = d.documents();
  docs[1] = docs[1].WithText("the dog did sit by a tree");
  stats.ApplyReplacement(d[1].tokens(), docs[1].tokens());
  EXPECT_EQ(stats, CorpusStats::Build(d.WithDocuments(docs)));
  EXPECT_EQ(stats.DocumentFrequency("not"), 1u);
  EXPECT_EQ(stats.DocumentFrequency("tree"), 1u);
}

TEST(CorpusStatsTest, ReplacementViewMatchesRebuild) {
  Dataset d = OracleCorpus();
  CorpusStats stats = CorpusStats::Build(d);
  auto docs = d.documents();
  docs[3] = docs[3].WithText("a bird sang a new song");
  CorpusStats rebuilt = CorpusStats::Build(d.WithDocuments(docs));
  ReplacementView view(stats, d[3].tokens(), docs[3].tokens());
  for (const char* t : {"the", "a", "bird", "sang", "song", "cat", "zebra"}) {
    EXPECT_EQ(view.DocumentFrequency(t), rebuilt.DocumentFrequency(t)) << t;
  }
}

TEST(PositionalEncodingTest, SmallCases) {
  EXPECT_EQ(PositionalEncoding(0, 4), (std::vector<double>{0, 1, 0, 1}));
  EXPECT_NEAR(PositionalEncoding(1, 2)[0], std::sin(1.0), 1e-15);
  EXPECT_NEAR(PositionalEncoding(1, 4)[1], std::cos(0.01), 1e-15);
}

struct PeCase {
  size_t pos;
  size_t lambda;
  size_t k;
  double expected;
};

// From tests/oracle/pe_oracle.py.
constexpr PeCase kPeCases[] = {
    {0, 8, 0, 0.0},
    {0, 8, 1, 1.0},
    {1, 8, 0, 0.84147098480789650665},
    {1, 8, 3, 0.99999950000004166667},
    {7, 8, 6, 6.9999999999428333333e-6},
    {100, 64, 0, -0.50636564110975879366},
    {100, 64, 1, 0.9175973992600989315},
    {100, 64, 31, 0.99991108734710593533},
    {511, 64, 62, 9.0870077851738375226e-6},
    {511, 64, 63, 0.99999999997678269511},
    {257, 8, 5, 0.9999966975518176956},
    {3, 64, 20, 0.0094866906786507902729},
};

TEST(PositionalEncodingTest, MatchesHighPrecisionOracle) {
  for (const auto& c : kPeCases) {
    EXPECT_NEAR(PositionalEncoding(c.pos, c.lambda)[c.k], c.expected, 1e-12)
        << "pos " << c.pos << " lambda " << c.lambda << " k " << c.k;
  }
}

TEST(PositionalEncodingTest, EncoderAgreesAndBounds) {
  PositionalEncoder encoder(64);
  for (size_t pos = 0; pos < 300; pos += 7) {
    auto v = encoder.Encode(pos);
    EXPECT_EQ(v, PositionalEncoding(pos, 64));
    for (double x : v) {
      EXPECT_LE(std::abs(x), 1.0);
    }
  }
}

TEST(PositionalEncodingTest, RejectsOddOrZeroLambda) {
  EXPECT_EQ(CodeOf([] { PositionalEncoding(3, 7); }), ErrorCode::kInvalidConfig);
  EXPECT_EQ(CodeOf([] { PositionalEncoder(0); }), ErrorCode::kInvalidConfig);
}

TEST(SurfaceEmbeddingTest, TwoTokenDocument) {
  Dataset d = MakeDataset({{"x y", 0}, {"x z w", 1}, {"q r", 0}});
  CorpusStats stats = CorpusStats::Build(d);
  SurfaceEmbedding g = ComputeSurfaceEmbedding(d[0], stats, 8);
  const double s0 = TfIdfScore("x", d[0], stats);
  const double s1 = TfIdfScore("y", d[0], stats);
  auto t0 = PositionalEncoding(0, 8);
  auto t1 = PositionalEncoding(1, 8);
  for (size_t k = 0; k < 8; ++k) {
    EXPECT_NEAR(g.vector[k], s0 * t0[k] + s1 * t1[k], 1e-15);
  }
  double norm = 0.0;
  for (double u : g.unit) norm += u * u;
  EXPECT_NEAR(norm, 1.0, 1e-12);
}

TEST(SurfaceEmbeddingTest, MatchesNaiveEvaluation) {
  Dataset d = OracleCorpus();
  CorpusStats stats = CorpusStats::Build(d);
  std::vector<std::vector<std::string>> corpus;
  for (const auto& doc : d.documents()) corpus.push_back(doc.tokens());
  for (size_t i = 0; i < d.size(); ++i) {
    auto fast = ComputeSurfaceEmbedding(d[i], stats, 64).vector;
    auto slow = naive::Embedding(corpus[i], corpus, 64);
    for (size_t k = 0; k < 64; ++k) EXPECT_NEAR(fast[k], slow[k], 1e-13);
  }
}

TEST(SurfaceEmbeddingTest, DegenerateAndZero) {
  Dataset d = MakeDataset({{"solo", 0}, {"a b", 1}, {"a b", 0}});
  CorpusStats stats = CorpusStats::Build(d);
  EXPECT_EQ(CodeOf([&] { ComputeSurfaceEmbedding(d[0], stats); }),
            ErrorCode::kDegenerateDocument);
  Dataset same = MakeDataset({{"a b", 0}, {"b a", 1}});
  CorpusStats same_stats = CorpusStats::Build(same);
  SurfaceEmbedding zero = ComputeSurfaceEmbedding(same[0], same_stats);
  EXPECT_TRUE(zero.is_zero());
  EmbeddingMap map = ComputeEmbeddings(d, stats);
  EXPECT_EQ(map.count("d0"), 0u);
  EXPECT_EQ(map.size(), 2u);
}

TEST(SurfaceEmbeddingTest, ParallelMatchesSerial) {
  std::mt19937_64 rng(5);
  Dataset d = testing::RandomDataset(rng, 150, 2);
  CorpusStats stats = CorpusStats::Build(d);
  EmbeddingMap serial = ComputeEmbeddings(d, stats, 64, 1);
  EmbeddingMap parallel = ComputeEmbeddings(d, stats, 64, 4);
  ASSERT_EQ(serial.size(), parallel.size());
  for (const auto& [id, e] : serial) EXPECT_EQ(e.vector, parallel.at(id).vector);
}

TEST(SurfaceEmbeddingTest, WritesJsonl) {
  Dataset d = MakeDataset({{"a b", 0}, {"c d", 1}, {"one", 1}});
  CorpusStats stats = CorpusStats::Build(d);
  std::ostringstream out;
  WriteEmbeddings(d, ComputeEmbeddings(d, stats, 4), out);
  std::istringstream lines(out.str());
  std::string line;
  std::vector<std::string> ids;
  while (std::getline(lines, line)) {
    auto row = nlohmann::json::parse(line);
    ids.push_back(row["id"]);
    EXPECT_EQ(row["vector"].size(), 4u);
  }
  EXPECT_EQ(ids, (std::vector<std::string>{"d0", "d1"}));
}

TEST(OppositeSetTest, LabelInequality) {
  Dataset d = MakeDataset({{"a b", 0}, {"c d", 1}, {"e f", 2}, {"g h", 1}}, {0, 1, 2});
  EXPECT_EQ(OppositeSet(d[1], d), (std::vector<std::string>{"d0", "d2"}));
  EXPECT_EQ(OppositeSet(d[0], d), (std::vector<std::string>{"d1", "d2", "d3"}));
  Dataset one(Schema::kSingle, LabelSet::FromIds({0, 1}),
              {LabeledDocument::Create("a", "x y", std::nullopt, 0)});
  EXPECT_EQ(CodeOf([&] { OppositeSet(one[0], one); }), ErrorCode::kNoContrast);
}

std::vector<double> Unit(std::vector<double> v) { return MakeEmbedding(std::move(v)).unit; }

TEST(ClassSumsTest, ShortcutScoreExtremes) {
  ClassSums sums({0, 1}, 3);
  auto u = Unit({1, 2, 3});
  sums.Add(1, u);
  sums.Add(1, u);
  EXPECT_NEAR(sums.ShortcutScore(0, u), 0.0, 1e-15);
  ClassSums opposite({0, 1}, 3);
  opposite.Add(1, Unit({-1, -2, -3}));
  EXPECT_NEAR(opposite.ShortcutScore(0, u), 2.0, 1e-15);
  ClassSums empty({0, 1}, 3);
  EXPECT_EQ(CodeOf([&] { empty.ShortcutScore(0, u); }), ErrorCode::kNoContrast);
}

TEST(ClassSumsTest, ObjectiveExtremesAndDelta) {
  ClassSums sums({0, 1}, 2);
  for (int i = 0; i < 3; ++i) sums.Add(0, Unit({1, 0}));
  for (int i = 0; i < 4; ++i) sums.Add(1, Unit({1, 0}));
  EXPECT_NEAR(sums.Objective(), 12.0, 1e-12);
  ClassSums orthogonal({0, 1}, 2);
  orthogonal.Add(0, Unit({1, 0}));
  orthogonal.Add(1, Unit({0, 1}));
  EXPECT_NEAR(orthogonal.Objective(), 0.0, 1e-15);

  ClassSums three({0, 1, 2}, 2);
  three.Add(0, Unit({1, 0}));
  three.Add(1, Unit({1, 1}));
  three.Add(2, Unit({0, 1}));
  const auto old_unit = Unit({1, 1});
  const auto new_unit = Unit({1, -2});
  const double before = three.Objective();
  const double delta = three.ObjectiveDelta(1, old_unit, new_unit);
  three.Remove(1, old_unit);
  three.Add(1, new_unit);
  EXPECT_NEAR(three.Objective() - before, delta, 1e-12);

  ClassSums missing({0, 1}, 2);
  missing.Add(0, Unit({1, 0}));
  EXPECT_FALSE(missing.AllClassesPopulated());
  EXPECT_EQ(CodeOf([&] { missing.Objective(); }), ErrorCode::kObjectiveUndefined);
}

TEST(ShortcutScoreTest, MatchesNaiveOnRandomCorpora) {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 10; ++trial) {
    Dataset d = testing::RandomDataset(rng, 40, 2 + trial % 2);
    CorpusStats stats = CorpusStats::Build(d);
    EmbeddingMap embeddings = ComputeEmbeddings(d, stats, 64);
    naive::Embedded e = naive::EmbedAll(d, 64);
    for (size_t i = 0; i < d.size(); ++i) {
      if (!e.usable[i]) continue;
      EXPECT_NEAR(ShortcutScore(d[i], d, embeddings), naive::ShortcutScore(e, i), 1e-9);
    }
    const double naive_objective = naive::Objective(e);
    EXPECT_NEAR(ClassAlignmentObjective(d, embeddings), naive_objective,
                1e-9 * std::max(1.0, std::abs(naive_objective)));
  }
}

TEST(ShortcutScoreTest, Errors) {
  Dataset d = MakeDataset({{"a b", 0}, {"b a", 1}, {"c", 1}});
  CorpusStats stats = CorpusStats::Build(d);
  EmbeddingMap embeddings = ComputeEmbeddings(d, stats);
  EXPECT_EQ(CodeOf([&] { ShortcutScore(d[2], d, embeddings); }),
            ErrorCode::kDegenerateDocument);
  Dataset z = MakeDataset({{"a b", 0}, {"a b c", 1}, {"a b d", 1}});
  CorpusStats zs = CorpusStats::Build(z);
  EmbeddingMap ze = ComputeEmbeddings(z, zs);
  EXPECT_EQ(CodeOf([&] { ShortcutScore(z[0], z, ze); }), ErrorCode::kZeroEmbedding);
  EXPECT_EQ(CodeOf([&] { ClassAlignmentObjective(z, ze); }), ErrorCode::kObjectiveUndefined);
}

TEST(ShortcutScoreTest, RangeProperty) {
  std::mt19937_64 rng(3);
  Dataset d = testing::RandomDataset(rng, 80, 2);
  CorpusStats stats = CorpusStats::Build(d);
  EmbeddingMap embeddings = ComputeEmbeddings(d, stats, 16);
  for (const auto& doc : d.documents()) {
    auto it = embeddings.find(doc.id());
    if (it == embeddings.end() || it->second.is_zero()) continue;
    const double g = ShortcutScore(doc, d, embeddings);
    EXPECT_GE(g, 0.0);
    EXPECT_LE(g, 2.0);
  }
}

}  // namespace
}  // namespace razor
