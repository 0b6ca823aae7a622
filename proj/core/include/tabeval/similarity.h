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

// Statistical similarity between an original and a synthetic table.
//
// Scores are in [0, 1] with 1 meaning identical, except the Wasserstein
// distance (0 means identical) and the basic-statistics differences. All
// functions take comparable datasets; EvaluateSimilarity normalizes to the
// original's ranges first, which the per-metric functions leave to the
// caller.

#ifndef TABEVAL_SIMILARITY_H_
#define TABEVAL_SIMILARITY_H_

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "absl/status/statusor.h"
#include "tabeval/sinkhorn.h"
#include "tabeval/tabular.h"

namespace tabeval {

// Per-column values plus their mean.
struct ColumnScores {
  std::vector<std::string> columns;
  std::vector<double> scores;
  double overall = 0.0;
};

// Symmetric matrix over named columns, row-major; NaN where undefined.
struct SquareMatrix {
  std::vector<std::string> columns;
  std::vector<double> values;

  size_t size() const { return columns.size(); }
  double at(size_t i, size_t j) const { return values[i * size() + j]; }
};

enum class WassersteinMode { kExact1d, kSampled, kSinkhorn };

std::string_view WassersteinModeName(WassersteinMode mode);
std::optional<WassersteinMode> ParseWassersteinMode(std::string_view name);

// W1 between two empirical distributions on the line: the integral of
// |F - G| over the merged support.
double Wasserstein1d(std::span<const double> a, std::span<const double> b);

// Per numeric column W1; overall is the mean over numeric columns.
absl::StatusOr<ColumnScores> WassersteinExact1d(const Dataset& original,
                                                const Dataset& synthetic);

// WassersteinExact1d on seeded subsamples of sample_size rows per side. A
// side smaller than sample_size is used whole and `warning` says so.
absl::StatusOr<ColumnScores> WassersteinSampled(const Dataset& original,
                                                const Dataset& synthetic,
                                                size_t sample_size,
                                                uint64_t seed,
                                                std::string* warning = nullptr);

// sup_x |F_n(x) - G_m(x)| for real samples.
double KsStatistic(std::span<const double> a, std::span<const double> b);

// Same over category codes, with the CDF taken in code order.
double CategoricalKsStatistic(std::span<const int32_t> a,
                              std::span<const int32_t> b,
                              size_t num_categories);

// Per column 1 - D; overall is the mean over all columns.
absl::StatusOr<ColumnScores> KsSimilarity(const Dataset& original,
                                          const Dataset& synthetic);

enum class CorrelationMethod { kPearson, kSpearman };

std::string_view CorrelationMethodName(CorrelationMethod method);

// NaN when either input has zero variance. Pairs are summed in sorted
// order, so the result does not depend on row order.
double PearsonCorrelation(std::span<const double> a, std::span<const double> b);

// 1-based ranks, ties get the average of their positions.
std::vector<double> AverageRanks(std::span<const double> values);

struct CorrelationResult {
  double overall = 0.0;
  SquareMatrix original;
  SquareMatrix synthetic;
  size_t pairs_used = 0;
  std::vector<std::string> warnings;
};

// Mean over column pairs of 1 - |S_AB - O_AB| / 2. Uses numeric columns;
// Spearman also uses the categorical columns named in `ordinal_columns`,
// ranked by category order. Pairs with a zero-variance column are skipped
// with a warning.
absl::StatusOr<CorrelationResult> CorrelationSimilarity(
    const Dataset& original, const Dataset& synthetic, CorrelationMethod method,
    std::span<const std::string> ordinal_columns = {});

// 2 MI(X;Y) / (H(X) + H(Y)) over paired labels; 0 when either entropy is 0.
double NormalizedMutualInformation(std::span<const int32_t> x,
                                   std::span<const int32_t> y);

struct NmiResult {
  double overall = 0.0;
  SquareMatrix original;
  SquareMatrix synthetic;
  std::vector<std::string> warnings;
};

// Numeric columns are binned over the original's ranges. Per column pair
// the score is 1 - |NMI_synthetic - NMI_original|; overall is the mean.
absl::StatusOr<NmiResult> NmiSimilarity(const Dataset& original,
                                        const Dataset& synthetic,
                                        int bins = kDefaultBins);

// Jensen-Shannon divergence in bits, in [0, 1]. Inputs are probability
// vectors over the same support.
double JensenShannonDivergence(std::span<const double> p,
                               std::span<const double> q);

// Per column 1 - JSD over category frequencies, or over shared bins of the
// original's range for numeric columns.
absl::StatusOr<ColumnScores> JsSimilarity(const Dataset& original,
                                          const Dataset& synthetic,
                                          int bins = kDefaultBins);

struct ColumnStats {
  double mean = 0.0;
  double median = 0.0;
  double variance = 0.0;  // population variance
};

struct StatsDiff {
  double mean_diff = 0.0;
  double median_diff = 0.0;
  double var_diff = 0.0;
};

struct BasicStatsResult {
  StatsDiff overall;
  std::vector<std::string> columns;
  std::vector<ColumnStats> original;
  std::vector<ColumnStats> synthetic;
};

// Median of an even-sized sample is the midpoint of the central pair.
ColumnStats ComputeColumnStats(std::span<const double> values);

// Absolute per-column differences of mean, median and variance, each
// averaged over numeric columns.
absl::StatusOr<BasicStatsResult> BasicStatsDiff(const Dataset& original,
                                                const Dataset& synthetic);

struct SimilarityOptions {
  // Unset means exact_1d, or sinkhorn above auto_sinkhorn_rows rows.
  std::optional<WassersteinMode> wasserstein_mode;
  size_t auto_sinkhorn_rows = 20000;
  size_t wasserstein_sample = 20;
  SinkhornOptions sinkhorn;
  int bins = kDefaultBins;
  uint64_t seed = 0;
  std::vector<std::string> ordinal_columns;
};

struct SimilarityReport {
  double wasserstein = 0.0;
  WassersteinMode wasserstein_mode = WassersteinMode::kExact1d;
  double ks = 0.0;
  double corr_pearson = 0.0;
  double corr_spearman = 0.0;
  double nmi = 0.0;
  double js = 0.0;
  StatsDiff stats_diff;
};

WassersteinMode ResolveWassersteinMode(const SimilarityOptions& options,
                                       size_t rows);

// Computes the Wasserstein distance in the given mode on normalized data.
absl::StatusOr<double> WassersteinByMode(const Dataset& original_norm,
                                         const Dataset& synthetic_norm,
                                         WassersteinMode mode,
                                         const SimilarityOptions& options);

// All similarity metrics at once; fails if any of them fails.
absl::StatusOr<SimilarityReport> EvaluateSimilarity(
    const Dataset& original, const Dataset& synthetic,
    const SimilarityOptions& options);

}  // namespace tabeval

#endif  // TABEVAL_SIMILARITY_H_
