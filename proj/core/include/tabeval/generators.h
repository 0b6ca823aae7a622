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

// Baseline synthetic-data generators: Gaussian mixture, Gaussian copula
// and random row sampling. Generated tables carry the source schema.

#ifndef TABEVAL_GENERATORS_H_
#define TABEVAL_GENERATORS_H_

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "Eigen/Dense"
#include "absl/status/statusor.h"
#include "tabeval/tabular.h"

namespace tabeval {

// Dense view of a table for the continuous models: numeric columns scaled
// to [0, 1] by the schema range, categorical codes scaled by
// (categories - 1). Decoding inverts the scaling, clamps to the schema range,
// rounds categorical codes and columns that held only integers.
struct ContinuousEncoding {
  Schema schema;
  std::vector<bool> integral;
};

ContinuousEncoding MakeContinuousEncoding(const Dataset& data);
Eigen::MatrixXd EncodeContinuous(const Dataset& data,
                                 const ContinuousEncoding& encoding);
absl::StatusOr<Dataset> DecodeContinuous(const Eigen::MatrixXd& x,
                                         const ContinuousEncoding& encoding);

// A matrix S with S S^T = cov: Cholesky when positive definite, otherwise
// the eigen square root with negative eigenvalues clipped to 0.
Eigen::MatrixXd CovarianceSquareRoot(const Eigen::MatrixXd& cov);

struct GmmOptions {
  int components = 5;
  int max_iter = 100;
  // Stop once the mean log-likelihood per row gains less than this.
  double tol = 1e-6;
  // Added to every covariance diagonal in each M-step.
  double regularization = 1e-6;
};

struct GmmModel {
  ContinuousEncoding encoding;
  Eigen::VectorXd weights;
  std::vector<Eigen::VectorXd> means;
  std::vector<Eigen::MatrixXd> covariances;
  // Mean log-likelihood per row of the parameters entering each E-step.
  std::vector<double> log_likelihood;
  int iterations = 0;
  bool converged = false;
  // Fewer distinct rows than components; several components coincide.
  bool degenerate = false;
  std::vector<std::string> warnings;

  size_t components() const { return means.size(); }
};

// EM on an encoded matrix. Means start from k-means++ seeding, covariances
// from the pooled covariance, weights uniform.
absl::StatusOr<GmmModel> FitGmmMatrix(const Eigen::MatrixXd& x, uint64_t seed,
                                      const GmmOptions& options = {});

// Encodes the table (categoricals ordinal, with a warning) and fits.
absl::StatusOr<GmmModel> FitGmm(const Dataset& data, uint64_t seed,
                                const GmmOptions& options = {});

// Draws in the encoded space.
absl::StatusOr<Eigen::MatrixXd> SampleGmmMatrix(const GmmModel& model, size_t n,
                                                uint64_t seed);
absl::StatusOr<Dataset> SampleGmm(const GmmModel& model, size_t n,
                                  uint64_t seed);

struct CopulaModel {
  ContinuousEncoding encoding;
  // Sorted column values (codes for categoricals).
  std::vector<std::vector<double>> marginals;
  Eigen::MatrixXd correlation;
  // True when the fitted correlation needed a positive semi-definite repair.
  bool repaired = false;
  std::vector<std::string> warnings;
};

double NormalCdf(double z);
double NormalQuantile(double p);

// Nearest positive semi-definite correlation matrix by eigenvalue clipping
// followed by rescaling to a unit diagonal. Returns true if it changed.
bool RepairCorrelation(Eigen::MatrixXd& corr);

// Uniformizes each column by rank / (n + 1) with average ranks, maps through
// the normal quantile and takes the Pearson correlation of the scores.
absl::StatusOr<CopulaModel> FitGaussianCopula(const Dataset& data);

// Correlated normals mapped to uniforms, then through each column's
// empirical quantile: linear interpolation for numeric columns, lookup for
// categorical ones.
absl::StatusOr<Dataset> SampleGaussianCopula(const CopulaModel& model, size_t n,
                                             uint64_t seed);

// Rows of `data` copied verbatim.
absl::StatusOr<Dataset> RandomModel(const Dataset& data, size_t n,
                                    bool with_replacement, uint64_t seed);

enum class GeneratorKind { kGmm, kCopula, kRandom };

std::string_view GeneratorKindName(GeneratorKind kind);
std::optional<GeneratorKind> ParseGeneratorKind(std::string_view name);

struct GeneratorOptions {
  GmmOptions gmm;
  bool with_replacement = false;
};

// Fits the model on `data` and draws n rows.
absl::StatusOr<Dataset> Generate(GeneratorKind kind, const Dataset& data,
                                 size_t n, uint64_t seed,
                                 const GeneratorOptions& options = {});

}  // namespace tabeval

#endif  // TABEVAL_GENERATORS_H_
