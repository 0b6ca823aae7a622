// Copyright 2026 The Tabeval Authors
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

#include "tabeval/similarity.h"

#include <cmath>
#include <string>
#include <vector>

#include "gmock/gmock.h"
#include "gtest/gtest.h"
#include "oracles.h"
#include "tabeval/random.h"
#include "test_util.h"

namespace tabeval {
namespace {

using ::tabeval::testing::Column1d;
using ::tabeval::testing::FromCsv;
using ::tabeval::testing::NumericRows;
using ::tabeval::testing::Unwrap;
using ::testing::ElementsAre;

TEST(Wasserstein1dTest, SortedDifferenceExample) {
  EXPECT_NEAR(Wasserstein1d(std::vector<double>{0, 0.5, 1},
                            std::vector<double>{0.25, 0.5, 0.75}),
              1.0 / 6, 1e-12);
}

TEST(Wasserstein1dTest, PointMasses) {
  EXPECT_EQ(Wasserstein1d(std::vector<double>{0, 0}, std::vector<double>{1}),
            1.0);
}

TEST(WassersteinExact1dTest, IdenticalIsZeroAndCategoricalsIgnored) {
  const Dataset d = FromCsv("x,s,y\n1,a,3\n2,b,5\n7,a,1\n");
  const ColumnScores s = Unwrap(WassersteinExact1d(d, d));
  EXPECT_EQ(s.overall, 0.0);
  EXPECT_THAT(s.columns, ElementsAre("x", "y"));
}

TEST(WassersteinSampledTest, FullSampleEqualsExact) {
  Rng rng(1);
  const Dataset a = testing::RandomTable({3, 0, 9, 1}, 40, rng);
  const Dataset b = testing::RandomTable({3, 0, 9, 1}, 40, rng);
  EXPECT_NEAR(Unwrap(WassersteinSampled(a, b, 40, 5)).overall,
              Unwrap(WassersteinExact1d(a, b)).overall, 1e-12);
}

TEST(WassersteinSampledTest, DeterministicAndWarnsWhenShort) {
  Rng rng(2);
  const Dataset a = testing::RandomTable({2, 0, 9, 1}, 100, rng);
  const Dataset b = testing::RandomTable({2, 0, 9, 1}, 10, rng);
  std::string warning;
  const double x = Unwrap(WassersteinSampled(a, b, 20, 7, &warning)).overall;
  EXPECT_EQ(x, Unwrap(WassersteinSampled(a, b, 20, 7)).overall);
  EXPECT_FALSE(warning.empty());
  // Each side is drawn separately, so only a table at or below the sample
  // size compares equal to itself.
  EXPECT_GT(Unwrap(WassersteinSampled(a, a, 20, 7)).overall, 0.0);
  EXPECT_EQ(Unwrap(WassersteinSampled(b, b, 20, 7)).overall, 0.0);
}

TEST(KsTest, Examples) {
  EXPECT_NEAR(
      KsStatistic(std::vector<double>{1, 2, 3}, std::vector<double>{2, 3, 4}),
      1.0 / 3, 1e-15);
  EXPECT_EQ(KsStatistic(std::vector<double>{0, 0}, std::vector<double>{1}),
            1.0);
}

TEST(KsSimilarityTest, CategoricalUsesCategoryOrder) {
  const Dataset a = FromCsv("s\nx\nx\ny\nz\n");
  const Dataset b = Unwrap(Conform(FromCsv("s\nz\nz\ny\nx\n"), a.schema()));
  EXPECT_NEAR(Unwrap(KsSimilarity(a, b)).overall, 0.75, 1e-15);
}

TEST(CorrelationTest, AverageRanks) {
  EXPECT_THAT(AverageRanks(std::vector<double>{10, 20, 10, 30}),
              ElementsAre(1.5, 3, 1.5, 4));
}

TEST(CorrelationTest, PearsonZeroVarianceIsNaN) {
  EXPECT_TRUE(std::isnan(PearsonCorrelation(std::vector<double>{1, 1, 1},
                                            std::vector<double>{1, 2, 3})));
}

TEST(CorrelationSimilarityTest, OppositeSignsScoreZero) {
  const Dataset a = NumericRows({"x", "y"}, {{0, 0}, {1, 1}, {2, 2}});
  const Dataset b = NumericRows({"x", "y"}, {{0, 2}, {1, 1}, {2, 0}});
  EXPECT_NEAR(
      Unwrap(CorrelationSimilarity(a, b, CorrelationMethod::kPearson)).overall,
      0.0, 1e-15);
}

TEST(CorrelationSimilarityTest, SinglePairScore) {
  // Correlations 0.6 and 0.2 built from standardized columns.
  const double r1 = 0.6, r2 = 0.2;
  auto table = [](double r) {
    std::vector<std::vector<double>> rows;
    const std::vector<double> u = {1, -1, 1, -1}, v = {1, 1, -1, -1};
    for (int i = 0; i < 4; ++i) {
      rows.push_back({u[i], r * u[i] + std::sqrt(1 - r * r) * v[i]});
    }
    return NumericRows({"x", "y"}, rows);
  };
  const CorrelationResult c = Unwrap(
      CorrelationSimilarity(table(r1), table(r2), CorrelationMethod::kPearson));
  EXPECT_NEAR(c.overall, 0.8, 1e-12);
  EXPECT_EQ(c.pairs_used, 1);
}

TEST(CorrelationSimilarityTest, ConstantColumnPairsSkippedWithWarning) {
  const Dataset a =
      NumericRows({"x", "y", "z"}, {{0, 5, 1}, {1, 5, 3}, {2, 5, 2}});
  const CorrelationResult c =
      Unwrap(CorrelationSimilarity(a, a, CorrelationMethod::kPearson));
  EXPECT_EQ(c.pairs_used, 1);
  EXPECT_FALSE(c.warnings.empty());
  EXPECT_EQ(c.overall, 1.0);
}

TEST(CorrelationSimilarityTest, NoUsablePairIsAnError) {
  const Dataset a = NumericRows({"x", "y"}, {{0, 5}, {1, 5}});
  EXPECT_FALSE(CorrelationSimilarity(a, a, CorrelationMethod::kPearson).ok());
}

TEST(CorrelationSimilarityTest, OrdinalColumnJoinsSpearman) {
  // Inferred categories sort as hi, lo, mid; the schema restores the order.
  const Schema schema{{testing::NumericSpec("x", 1, 3),
                       testing::CategoricalSpec("level", {"lo", "mid", "hi"})}};
  const Dataset a =
      Unwrap(Conform(FromCsv("x,level\n1,lo\n2,mid\n3,hi\n"), schema));
  const std::vector<std::string> ordinal = {"level"};
  const CorrelationResult c = Unwrap(
      CorrelationSimilarity(a, a, CorrelationMethod::kSpearman, ordinal));
  EXPECT_EQ(c.pairs_used, 1);
  EXPECT_EQ(c.original.at(0, 1), 1.0);
}

TEST(CorrelationSimilarityTest, MatrixIsSymmetricWithUnitDiagonal) {
  const Dataset d = testing::GaussianTable(200, 4, 0.7, 3);
  const CorrelationResult c =
      Unwrap(CorrelationSimilarity(d, d, CorrelationMethod::kPearson));
  for (size_t i = 0; i < 4; ++i) {
    EXPECT_EQ(c.original.at(i, i), 1.0);
    for (size_t j = 0; j < 4; ++j) {
      EXPECT_EQ(c.original.at(i, j), c.original.at(j, i));
      EXPECT_EQ(c.synthetic.at(i, j), c.original.at(i, j));
    }
  }
}

TEST(NmiTest, SelfIsOne) {
  const std::vector<int32_t> x = {0, 1, 2, 1, 0, 2, 2};
  EXPECT_EQ(NormalizedMutualInformation(x, x), 1.0);
}

TEST(NmiTest, ConstantIsZero) {
  const std::vector<int32_t> x = {0, 1, 2}, c = {4, 4, 4};
  EXPECT_EQ(NormalizedMutualInformation(x, c), 0.0);
}

TEST(NmiTest, IndependentUniformColumnsNearZero) {
  Rng rng(8);
  std::vector<int32_t> x(50000), y(50000);
  for (auto& v : x) v = rng.UniformIndex(5);
  for (auto& v : y) v = rng.UniformIndex(5);
  // Plug-in MI bias is about (k-1)^2 / (2n) nats.
  EXPECT_LT(NormalizedMutualInformation(x, y), 1e-3);
}

TEST(JsTest, Examples) {
  EXPECT_NEAR(JensenShannonDivergence(std::vector<double>{0.5, 0.5},
                                      std::vector<double>{1, 0}),
              0.31127812445913283, 1e-12);
  EXPECT_EQ(JensenShannonDivergence(std::vector<double>{1, 0},
                                    std::vector<double>{0, 1}),
            1.0);
}

TEST(BasicStatsTest, HandExample) {
  const BasicStatsResult r =
      Unwrap(BasicStatsDiff(Column1d({0, 1}), Column1d({0, 0.5})));
  EXPECT_DOUBLE_EQ(r.overall.mean_diff, 0.25);
  EXPECT_DOUBLE_EQ(r.overall.median_diff, 0.25);
  EXPECT_DOUBLE_EQ(r.overall.var_diff, 0.1875);
}

TEST(BasicStatsTest, ShiftChangesMeanOnly) {
  const BasicStatsResult r = Unwrap(
      BasicStatsDiff(Column1d({0.1, 0.3, 0.4}), Column1d({0.2, 0.4, 0.5})));
  EXPECT_NEAR(r.overall.mean_diff, 0.1, 1e-12);
  EXPECT_NEAR(r.overall.var_diff, 0.0, 1e-12);
}

TEST(EvaluateSimilarityTest, IdenticalTablesScorePerfectly) {
  Rng rng(5);
  const Dataset d = testing::RandomTable({3, 2, 7, 4}, 300, rng);
  const SimilarityReport r = Unwrap(EvaluateSimilarity(d, d, {}));
  EXPECT_EQ(r.wasserstein_mode, WassersteinMode::kExact1d);
  EXPECT_EQ(r.wasserstein, 0.0);
  EXPECT_EQ(r.ks, 1.0);
  EXPECT_EQ(r.corr_pearson, 1.0);
  EXPECT_EQ(r.corr_spearman, 1.0);
  EXPECT_EQ(r.nmi, 1.0);
  EXPECT_EQ(r.js, 1.0);
  EXPECT_EQ(r.stats_diff.mean_diff, 0.0);
  EXPECT_EQ(r.stats_diff.median_diff, 0.0);
  EXPECT_EQ(r.stats_diff.var_diff, 0.0);
}

TEST(EvaluateSimilarityTest, RowOrderDoesNotMatter) {
  Rng rng(6);
  const Dataset a = testing::GaussianTable(500, 3, 0.4, 1);
  const Dataset b = testing::GaussianTable(500, 3, 0.4, 2);
  const Dataset b_perm = Unwrap(SampleRows(b, b.num_rows(), false, 77));
  const SimilarityReport x = Unwrap(EvaluateSimilarity(a, b, {}));
  const SimilarityReport y = Unwrap(EvaluateSimilarity(a, b_perm, {}));
  EXPECT_EQ(x.wasserstein, y.wasserstein);
  EXPECT_EQ(x.ks, y.ks);
  EXPECT_EQ(x.corr_pearson, y.corr_pearson);
  EXPECT_EQ(x.corr_spearman, y.corr_spearman);
  EXPECT_EQ(x.nmi, y.nmi);
  EXPECT_EQ(x.js, y.js);
  EXPECT_EQ(x.stats_diff.var_diff, y.stats_diff.var_diff);
}

TEST(EvaluateSimilarityTest, AutoSelectsSinkhornAboveThreshold) {
  SimilarityOptions options;
  options.auto_sinkhorn_rows = 100;
  EXPECT_EQ(ResolveWassersteinMode(options, 101), WassersteinMode::kSinkhorn);
  EXPECT_EQ(ResolveWassersteinMode(options, 100), WassersteinMode::kExact1d);
  options.wasserstein_mode = WassersteinMode::kSampled;
  EXPECT_EQ(ResolveWassersteinMode(options, 101), WassersteinMode::kSampled);
}

TEST(SimilarityOracleTest, MatchesBruteForce) {
  Rng rng(99);
  for (int trial = 0; trial < 60; ++trial) {
    const testing::TableShape shape{2 + rng.UniformIndex(3),
                                    rng.UniformIndex(3), 6, 3};
    const Dataset a =
        testing::RandomTable(shape, 3 + rng.UniformIndex(28), rng);
    const Dataset b =
        testing::RandomTable(shape, 3 + rng.UniformIndex(28), rng);
    EXPECT_NEAR(Unwrap(WassersteinExact1d(a, b)).overall,
                oracle::WassersteinOverall(a, b), 1e-12);
    EXPECT_NEAR(Unwrap(KsSimilarity(a, b)).overall, oracle::KsOverall(a, b),
                1e-12);
    for (bool spearman : {false, true}) {
      const double expected = oracle::CorrelationOverall(a, b, spearman);
      const auto got =
          CorrelationSimilarity(a, b,
                                spearman ? CorrelationMethod::kSpearman
                                         : CorrelationMethod::kPearson);
      if (std::isnan(expected)) {
        EXPECT_FALSE(got.ok());
      } else {
        EXPECT_NEAR(Unwrap(got).overall, expected, 1e-12);
      }
    }
    EXPECT_NEAR(Unwrap(NmiSimilarity(a, b, 4)).overall,
                oracle::NmiOverall(a, b, 4), 1e-12);
    EXPECT_NEAR(Unwrap(JsSimilarity(a, b, 4)).overall,
                oracle::JsOverall(a, b, 4), 1e-12);
    const BasicStatsResult s = Unwrap(BasicStatsDiff(a, b));
    const oracle::Stats o = oracle::BasicStats(a, b);
    EXPECT_NEAR(s.overall.mean_diff, o.mean_diff, 1e-12);
    EXPECT_NEAR(s.overall.median_diff, o.median_diff, 1e-12);
    EXPECT_NEAR(s.overall.var_diff, o.var_diff, 1e-12);
  }
}

}  // namespace
}  // namespace tabeval
