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

#include "tabeval/generators.h"

#include <cmath>
#include <set>
#include <string>
#include <vector>

#include "gtest/gtest.h"
#include "tabeval/csv.h"
#include "tabeval/random.h"
#include "tabeval/similarity.h"
#include "test_util.h"

namespace tabeval {
namespace {

using ::tabeval::testing::FromCsv;
using ::tabeval::testing::NumericRows;
using ::tabeval::testing::Unwrap;

Eigen::MatrixXd RandomMatrix(int rows, int cols, Rng& rng) {
  Eigen::MatrixXd x(rows, cols);
  for (int i = 0; i < rows; ++i) {
    for (int j = 0; j < cols; ++j) x(i, j) = rng.Normal();
  }
  return x;
}

TEST(GmmTest, SingleComponentIsSampleMoments) {
  Rng rng(1);
  const Eigen::MatrixXd x = RandomMatrix(300, 3, rng);
  GmmOptions options;
  options.components = 1;
  const GmmModel m = Unwrap(FitGmmMatrix(x, 7, options));
  const Eigen::VectorXd mean = x.colwise().mean();
  const Eigen::MatrixXd centered = x.rowwise() - mean.transpose();
  const Eigen::MatrixXd cov =
      centered.transpose() * centered / static_cast<double>(x.rows()) +
      options.regularization * Eigen::MatrixXd::Identity(3, 3);
  EXPECT_NEAR((m.means[0] - mean).norm(), 0.0, 1e-9);
  EXPECT_NEAR((m.covariances[0] - cov).norm(), 0.0, 1e-9);
  EXPECT_NEAR(m.weights.sum(), 1.0, 1e-12);
}

TEST(GmmTest, RecoversSeparatedClusters) {
  Rng rng(2);
  Eigen::MatrixXd x(600, 2);
  for (int i = 0; i < 600; ++i) {
    const double c = i < 300 ? 0.0 : 5.0;
    x(i, 0) = c + 0.3 * rng.Normal();
    x(i, 1) = c + 0.3 * rng.Normal();
  }
  GmmOptions options;
  options.components = 2;
  const GmmModel m = Unwrap(FitGmmMatrix(x, 3, options));
  std::vector<double> centers = {m.means[0](0), m.means[1](0)};
  std::sort(centers.begin(), centers.end());
  EXPECT_NEAR(centers[0], 0.0, 0.1);
  EXPECT_NEAR(centers[1], 5.0, 0.1);
  EXPECT_NEAR(m.weights.sum(), 1.0, 1e-9);
}

TEST(GmmTest, LogLikelihoodIsMonotone) {
  Rng rng(3);
  for (int trial = 0; trial < 10; ++trial) {
    const Eigen::MatrixXd x = RandomMatrix(80 + trial * 10, 3, rng);
    GmmOptions options;
    options.components = 3;
    options.tol = 0.0;
    options.max_iter = 60;
    const GmmModel m = Unwrap(FitGmmMatrix(x, trial, options));
    for (size_t i = 1; i < m.log_likelihood.size(); ++i) {
      EXPECT_GE(m.log_likelihood[i], m.log_likelihood[i - 1] - 1e-8);
    }
  }
}

TEST(GmmTest, CovariancesStayPositiveDefinite) {
  // Duplicate rows force a collapsing component.
  Eigen::MatrixXd x(40, 2);
  for (int i = 0; i < 40; ++i) x.row(i) << (i % 4), (i % 4) * 2.0;
  GmmOptions options;
  options.components = 5;
  const GmmModel m = Unwrap(FitGmmMatrix(x, 1, options));
  EXPECT_TRUE(m.degenerate);
  for (const Eigen::MatrixXd& c : m.covariances) {
    EXPECT_EQ(Eigen::LLT<Eigen::MatrixXd>(c).info(), Eigen::Success);
  }
}

TEST(GmmSampleTest, ZeroCovarianceReturnsMean) {
  GmmModel m;
  m.weights = Eigen::VectorXd::Ones(1);
  m.means = {Eigen::Vector2d(0.25, 0.75)};
  m.covariances = {Eigen::MatrixXd::Zero(2, 2)};
  const Eigen::MatrixXd s = Unwrap(SampleGmmMatrix(m, 50, 1));
  for (int i = 0; i < 50; ++i) {
    EXPECT_EQ(s(i, 0), 0.25);
    EXPECT_EQ(s(i, 1), 0.75);
  }
}

TEST(GmmSampleTest, ComponentFrequenciesFollowWeights) {
  GmmModel m;
  m.weights = Eigen::Vector2d(0.3, 0.7);
  m.means = {Eigen::VectorXd::Constant(1, 0.0),
             Eigen::VectorXd::Constant(1, 100.0)};
  m.covariances = {Eigen::MatrixXd::Identity(1, 1),
                   Eigen::MatrixXd::Identity(1, 1)};
  const int n = 20000;
  const Eigen::MatrixXd s = Unwrap(SampleGmmMatrix(m, n, 2));
  int low = 0;
  for (int i = 0; i < n; ++i) low += s(i, 0) < 50.0;
  const double sd = std::sqrt(n * 0.3 * 0.7);
  EXPECT_NEAR(low, 0.3 * n, 3 * sd);
  // Mixture mean 70 with variance 2101; 4 standard errors.
  EXPECT_NEAR(s.col(0).mean(), 70.0, 4 * std::sqrt(2101.0 / n));
}

TEST(GmmSampleTest, DecodedTableRespectsSchema) {
  const Dataset d = FromCsv(
      "age,sex,score\n30,f,0.5\n41,m,1.5\n52,f,2.5\n25,m,0.25\n60,f,3\n"
      "33,m,1.25\n");
  const Dataset s = Unwrap(Generate(GeneratorKind::kGmm, d, 200, 4));
  ASSERT_EQ(s.schema().names(), d.schema().names());
  for (size_t r = 0; r < s.num_rows(); ++r) {
    const double age = s.value(r, 0);
    EXPECT_EQ(age, std::round(age));
    EXPECT_GE(age, 25);
    EXPECT_LE(age, 60);
    EXPECT_LT(s.code(r, 1), 2);
    EXPECT_GE(s.value(r, 2), 0.25);
    EXPECT_LE(s.value(r, 2), 3.0);
  }
}

TEST(CopulaTest, IndependentColumnsHaveSmallCorrelation) {
  const Dataset d = testing::GaussianTable(4000, 3, 0.0, 5);
  const CopulaModel m = Unwrap(FitGaussianCopula(d));
  for (int i = 0; i < 3; ++i) {
    EXPECT_EQ(m.correlation(i, i), 1.0);
    for (int j = 0; j < i; ++j) EXPECT_LT(std::abs(m.correlation(i, j)), 0.06);
  }
}

TEST(CopulaTest, DuplicatedColumnHasUnitCorrelation) {
  std::vector<std::vector<double>> rows;
  Rng rng(6);
  for (int i = 0; i < 100; ++i) {
    const double v = rng.Normal();
    rows.push_back({v, v});
  }
  const CopulaModel m =
      Unwrap(FitGaussianCopula(NumericRows({"a", "b"}, rows)));
  EXPECT_NEAR(m.correlation(0, 1), 1.0, 1e-9);
}

TEST(CopulaTest, MonotoneTransformLeavesCorrelationUnchanged) {
  const Dataset d = testing::GaussianTable(500, 2, 0.6, 7);
  std::vector<std::vector<double>> rows;
  for (size_t r = 0; r < d.num_rows(); ++r) {
    rows.push_back({std::exp(d.value(r, 0)), d.value(r, 1)});
  }
  const CopulaModel a = Unwrap(FitGaussianCopula(d));
  const CopulaModel b =
      Unwrap(FitGaussianCopula(NumericRows({"g0", "g1"}, rows)));
  EXPECT_EQ(a.correlation(0, 1), b.correlation(0, 1));
}

TEST(CopulaTest, RepairMakesMatrixPositiveSemiDefinite) {
  Eigen::Matrix3d c;
  c << 1, 0.9, -0.9,  //
      0.9, 1, 0.9,    //
      -0.9, 0.9, 1;
  Eigen::MatrixXd m = c;
  EXPECT_TRUE(RepairCorrelation(m));
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(m);
  EXPECT_GE(eig.eigenvalues().minCoeff(), -1e-12);
  for (int i = 0; i < 3; ++i) EXPECT_NEAR(m(i, i), 1.0, 1e-12);
  EXPECT_LE(m.cwiseAbs().maxCoeff(), 1.0 + 1e-12);
}

TEST(CopulaSampleTest, IdentityCorrelationGivesIndependentColumns) {
  const Dataset d = testing::GaussianTable(2000, 2, 0.0, 8);
  CopulaModel m = Unwrap(FitGaussianCopula(d));
  m.correlation = Eigen::MatrixXd::Identity(2, 2);
  const Dataset s = Unwrap(SampleGaussianCopula(m, 20000, 9));
  const auto x = Unwrap(Discretize(s, 0, 5, s.schema()));
  const auto y = Unwrap(Discretize(s, 1, 5, s.schema()));
  EXPECT_LT(NormalizedMutualInformation(x, y), 0.01);
}

TEST(CopulaSampleTest, MarginalsMatchOriginal) {
  const Dataset d = testing::GaussianTable(1000, 3, 0.5, 10);
  const Dataset s =
      Unwrap(Generate(GeneratorKind::kCopula, d, d.num_rows(), 11));
  EXPECT_GE(Unwrap(KsSimilarity(d, s)).overall, 0.95);
}

TEST(CopulaSampleTest, SingleColumnStaysInsideRange) {
  const Dataset d = testing::Column1d({1, 4, 2, 8, 5});
  const Dataset s = Unwrap(Generate(GeneratorKind::kCopula, d, 100, 1));
  for (double v : s.values(0)) {
    EXPECT_GE(v, 1.0);
    EXPECT_LE(v, 8.0);
  }
}

TEST(CopulaSampleTest, CategoricalColumnsKeepLabels) {
  const Dataset d = FromCsv("a,s\n1,x\n2,y\n3,x\n4,z\n5,y\n6,x\n");
  const Dataset s = Unwrap(Generate(GeneratorKind::kCopula, d, 50, 2));
  std::set<std::string> labels;
  for (size_t r = 0; r < s.num_rows(); ++r) labels.insert(s.CellText(r, 1));
  for (const std::string& l : labels) {
    EXPECT_TRUE(l == "x" || l == "y" || l == "z");
  }
}

TEST(CopulaTest, TooFewRowsIsAnError) {
  EXPECT_FALSE(FitGaussianCopula(testing::Column1d({1, 2})).ok());
}

TEST(RandomModelTest, RowsAreVerbatimCopies) {
  const Dataset d = FromCsv("a,s\n1,x\n2,y\n3,z\n");
  const Dataset s = Unwrap(Generate(GeneratorKind::kRandom, d, 3, 5));
  std::set<std::string> rows, copies;
  for (size_t r = 0; r < 3; ++r) {
    rows.insert(d.CellText(r, 0) + d.CellText(r, 1));
    copies.insert(s.CellText(r, 0) + s.CellText(r, 1));
  }
  EXPECT_EQ(rows, copies);
}

TEST(GenerateTest, SameSeedSameTable) {
  const Dataset d = testing::GaussianTable(200, 3, 0.3, 12);
  for (GeneratorKind kind :
       {GeneratorKind::kGmm, GeneratorKind::kCopula, GeneratorKind::kRandom}) {
    const Dataset a = Unwrap(Generate(kind, d, 100, 13));
    const Dataset b = Unwrap(Generate(kind, d, 100, 13));
    EXPECT_EQ(FormatCsv(a), FormatCsv(b)) << GeneratorKindName(kind);
  }
}

TEST(GeneratorKindTest, NamesRoundTrip) {
  for (GeneratorKind kind :
       {GeneratorKind::kGmm, GeneratorKind::kCopula, GeneratorKind::kRandom}) {
    EXPECT_EQ(ParseGeneratorKind(GeneratorKindName(kind)), kind);
  }
  EXPECT_FALSE(ParseGeneratorKind("ctgan").has_value());
}

}  // namespace
}  // namespace tabeval
