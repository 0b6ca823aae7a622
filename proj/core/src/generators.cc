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

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <utility>

#include "absl/strings/str_cat.h"
#include "boost/math/distributions/normal.hpp"
#include "tabeval/random.h"
#include "tabeval/similarity.h"
#include "tabeval/status_macros.h"

namespace tabeval {
namespace {

// Weight below which a mixture component is treated as empty.
constexpr double kEmptyComponent = 1e-10;

double Scale(const ColumnSpec& spec) {
  if (spec.is_numeric()) return spec.max - spec.min;
  return static_cast<double>(spec.categories.size()) - 1.0;
}

Eigen::MatrixXd Covariance(const Eigen::MatrixXd& x) {
  const Eigen::RowVectorXd mean = x.colwise().mean();
  const Eigen::MatrixXd centered = x.rowwise() - mean;
  return centered.transpose() * centered / static_cast<double>(x.rows());
}

size_t CountDistinctRows(const Eigen::MatrixXd& x) {
  std::vector<std::vector<double>> rows(static_cast<size_t>(x.rows()));
  for (Eigen::Index i = 0; i < x.rows(); ++i) {
    for (Eigen::Index j = 0; j < x.cols(); ++j) {
      rows[static_cast<size_t>(i)].push_back(x(i, j));
    }
  }
  std::sort(rows.begin(), rows.end());
  return static_cast<size_t>(std::unique(rows.begin(), rows.end()) -
                             rows.begin());
}

// Lower Cholesky factor of cov, adding jitter until it factors.
Eigen::LLT<Eigen::MatrixXd> RobustCholesky(const Eigen::MatrixXd& cov) {
  Eigen::LLT<Eigen::MatrixXd> llt(cov);
  double jitter = 1e-10;
  while (llt.info() != Eigen::Success && jitter < 1.0) {
    llt.compute(cov +
                jitter * Eigen::MatrixXd::Identity(cov.rows(), cov.cols()));
    jitter *= 10.0;
  }
  return llt;
}

// log N(x_i | mean, cov) for every row.
Eigen::VectorXd LogDensity(const Eigen::MatrixXd& x,
                           const Eigen::VectorXd& mean,
                           const Eigen::MatrixXd& cov) {
  const Eigen::LLT<Eigen::MatrixXd> llt = RobustCholesky(cov);
  const Eigen::MatrixXd l = llt.matrixL();
  const Eigen::MatrixXd diff = (x.rowwise() - mean.transpose()).transpose();
  const Eigen::MatrixXd solved = l.triangularView<Eigen::Lower>().solve(diff);
  const double log_det = 2.0 * l.diagonal().array().log().sum();
  const double d = static_cast<double>(x.cols());
  const double constant = d * std::log(2.0 * std::numbers::pi) + log_det;
  return (-0.5 * (solved.colwise().squaredNorm().array() + constant))
      .transpose();
}

std::vector<size_t> KMeansPlusPlus(const Eigen::MatrixXd& x, size_t k,
                                   Rng& rng) {
  const size_t n = static_cast<size_t>(x.rows());
  std::vector<size_t> centers = {rng.UniformIndex(n)};
  std::vector<double> d2(n, std::numeric_limits<double>::infinity());
  while (centers.size() < k) {
    const Eigen::RowVectorXd last =
        x.row(static_cast<Eigen::Index>(centers.back()));
    double total = 0.0;
    for (size_t i = 0; i < n; ++i) {
      d2[i] = std::min(
          d2[i], (x.row(static_cast<Eigen::Index>(i)) - last).squaredNorm());
      total += d2[i];
    }
    if (!(total > 0.0)) {
      centers.push_back(rng.UniformIndex(n));
      continue;
    }
    const double target = rng.Uniform() * total;
    double cumulative = 0.0;
    size_t pick = n - 1;
    for (size_t i = 0; i < n; ++i) {
      cumulative += d2[i];
      if (cumulative > target) {
        pick = i;
        break;
      }
    }
    centers.push_back(pick);
  }
  return centers;
}

absl::StatusOr<Dataset> BuildDataset(const ContinuousEncoding& encoding,
                                     const Eigen::MatrixXd& raw) {
  const Schema& schema = encoding.schema;
  std::vector<Column> columns(schema.size());
  for (size_t c = 0; c < schema.size(); ++c) {
    const ColumnSpec& spec = schema.columns[c];
    const auto col = static_cast<Eigen::Index>(c);
    for (Eigen::Index i = 0; i < raw.rows(); ++i) {
      double v = raw(i, col);
      if (spec.is_numeric()) {
        if (encoding.integral[c]) v = std::round(v);
        columns[c].values.push_back(std::clamp(v, spec.min, spec.max));
      } else {
        const double top = static_cast<double>(spec.categories.size()) - 1.0;
        columns[c].codes.push_back(
            static_cast<int32_t>(std::clamp(std::round(v), 0.0, top)));
      }
    }
  }
  return Dataset::Create(schema, std::move(columns));
}

}  // namespace

ContinuousEncoding MakeContinuousEncoding(const Dataset& data) {
  ContinuousEncoding encoding;
  encoding.schema = data.schema();
  encoding.integral.assign(data.num_columns(), false);
  for (size_t c = 0; c < data.num_columns(); ++c) {
    if (!data.spec(c).is_numeric()) continue;
    const auto values = data.values(c);
    encoding.integral[c] =
        std::all_of(values.begin(), values.end(),
                    [](double v) { return std::floor(v) == v; });
  }
  return encoding;
}

Eigen::MatrixXd EncodeContinuous(const Dataset& data,
                                 const ContinuousEncoding& encoding) {
  Eigen::MatrixXd x(static_cast<Eigen::Index>(data.num_rows()),
                    static_cast<Eigen::Index>(data.num_columns()));
  for (size_t c = 0; c < data.num_columns(); ++c) {
    const ColumnSpec& spec = encoding.schema.columns[c];
    const double scale = Scale(spec);
    const auto col = static_cast<Eigen::Index>(c);
    for (size_t r = 0; r < data.num_rows(); ++r) {
      const double raw = spec.is_numeric()
                             ? data.value(r, c) - spec.min
                             : static_cast<double>(data.code(r, c));
      x(static_cast<Eigen::Index>(r), col) = scale > 0.0 ? raw / scale : 0.0;
    }
  }
  return x;
}

absl::StatusOr<Dataset> DecodeContinuous(const Eigen::MatrixXd& x,
                                         const ContinuousEncoding& encoding) {
  if (static_cast<size_t>(x.cols()) != encoding.schema.size()) {
    return absl::InvalidArgumentError("encoded width does not match schema");
  }
  Eigen::MatrixXd raw(x.rows(), x.cols());
  for (size_t c = 0; c < encoding.schema.size(); ++c) {
    const ColumnSpec& spec = encoding.schema.columns[c];
    const auto col = static_cast<Eigen::Index>(c);
    const double offset = spec.is_numeric() ? spec.min : 0.0;
    const double scale = Scale(spec);
    for (Eigen::Index i = 0; i < x.rows(); ++i) {
      raw(i, col) = offset + std::clamp(x(i, col), 0.0, 1.0) * scale;
    }
  }
  return BuildDataset(encoding, raw);
}

Eigen::MatrixXd CovarianceSquareRoot(const Eigen::MatrixXd& cov) {
  Eigen::LLT<Eigen::MatrixXd> llt(cov);
  if (llt.info() == Eigen::Success) return llt.matrixL();
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(cov);
  const Eigen::VectorXd roots = eig.eigenvalues().cwiseMax(0.0).cwiseSqrt();
  return eig.eigenvectors() * roots.asDiagonal();
}

absl::StatusOr<GmmModel> FitGmmMatrix(const Eigen::MatrixXd& x, uint64_t seed,
                                      const GmmOptions& options) {
  if (options.components < 1) {
    return absl::InvalidArgumentError("GMM needs at least one component");
  }
  if (options.max_iter < 1) {
    return absl::InvalidArgumentError("max_iter must be at least 1");
  }
  if (options.regularization < 0.0) {
    return absl::InvalidArgumentError("regularization must be >= 0");
  }
  const auto k = static_cast<size_t>(options.components);
  const auto n = static_cast<size_t>(x.rows());
  const Eigen::Index d = x.cols();
  if (d == 0) return absl::InvalidArgumentError("GMM needs columns");
  if (n < k) {
    return absl::InvalidArgumentError(
        absl::StrCat("GMM needs at least ", k, " rows, got ", n));
  }
  const Eigen::MatrixXd reg =
      options.regularization * Eigen::MatrixXd::Identity(d, d);

  GmmModel model;
  if (k > 1 && CountDistinctRows(x) < k) {
    model.degenerate = true;
    model.warnings.push_back(
        "fewer distinct rows than components; components collapse");
  }
  Rng rng(seed);
  const Eigen::MatrixXd pooled = Covariance(x) + reg;
  for (size_t center : KMeansPlusPlus(x, k, rng)) {
    model.means.push_back(x.row(static_cast<Eigen::Index>(center)).transpose());
    model.covariances.push_back(pooled);
  }
  model.weights = Eigen::VectorXd::Constant(static_cast<Eigen::Index>(k),
                                            1.0 / static_cast<double>(k));

  Eigen::MatrixXd resp(x.rows(), static_cast<Eigen::Index>(k));
  double previous = -std::numeric_limits<double>::infinity();
  for (int it = 0; it < options.max_iter; ++it) {
    // E-step in the log domain.
    for (size_t j = 0; j < k; ++j) {
      const double log_w =
          std::log(model.weights(static_cast<Eigen::Index>(j)));
      resp.col(static_cast<Eigen::Index>(j)) =
          LogDensity(x, model.means[j], model.covariances[j]).array() + log_w;
    }
    double total = 0.0;
    for (Eigen::Index i = 0; i < x.rows(); ++i) {
      const double peak = resp.row(i).maxCoeff();
      const double norm =
          peak + std::log((resp.row(i).array() - peak).exp().sum());
      resp.row(i) = (resp.row(i).array() - norm).exp();
      total += norm;
    }
    const double ll = total / static_cast<double>(n);
    model.log_likelihood.push_back(ll);
    if (it > 0 && ll - previous < options.tol) {
      model.converged = true;
      break;
    }
    previous = ll;

    // M-step.
    for (size_t j = 0; j < k; ++j) {
      const auto col = static_cast<Eigen::Index>(j);
      const double nk = resp.col(col).sum();
      if (nk < kEmptyComponent) {
        model.weights(col) = kEmptyComponent;
        continue;
      }
      model.weights(col) = nk / static_cast<double>(n);
      model.means[j] = x.transpose() * resp.col(col) / nk;
      const Eigen::MatrixXd centered = x.rowwise() - model.means[j].transpose();
      model.covariances[j] =
          centered.transpose() * resp.col(col).asDiagonal() * centered / nk +
          reg;
    }
    model.weights /= model.weights.sum();
    ++model.iterations;
  }
  return model;
}

absl::StatusOr<GmmModel> FitGmm(const Dataset& data, uint64_t seed,
                                const GmmOptions& options) {
  ContinuousEncoding encoding = MakeContinuousEncoding(data);
  ASSIGN_OR_RETURN(
      GmmModel model,
      FitGmmMatrix(EncodeContinuous(data, encoding), seed, options));
  for (const ColumnSpec& spec : data.schema().columns) {
    if (!spec.is_numeric()) {
      model.warnings.push_back(absl::StrCat("categorical column '", spec.name,
                                            "' modeled by its ordinal code"));
    }
  }
  model.encoding = std::move(encoding);
  return model;
}

absl::StatusOr<Eigen::MatrixXd> SampleGmmMatrix(const GmmModel& model, size_t n,
                                                uint64_t seed) {
  const size_t k = model.components();
  if (k == 0 || static_cast<size_t>(model.weights.size()) != k ||
      model.covariances.size() != k) {
    return absl::InvalidArgumentError("malformed GMM");
  }
  const Eigen::Index d = model.means[0].size();
  std::vector<Eigen::MatrixXd> roots;
  for (const Eigen::MatrixXd& cov : model.covariances) {
    roots.push_back(CovarianceSquareRoot(cov));
  }
  std::vector<double> cumulative(k);
  double total = 0.0;
  for (size_t j = 0; j < k; ++j) {
    total += model.weights(static_cast<Eigen::Index>(j));
    cumulative[j] = total;
  }
  Rng rng(seed);
  Eigen::MatrixXd out(static_cast<Eigen::Index>(n), d);
  Eigen::VectorXd z(d);
  for (size_t i = 0; i < n; ++i) {
    const double u = rng.Uniform() * total;
    const size_t j = std::min<size_t>(
        k - 1, static_cast<size_t>(
                   std::upper_bound(cumulative.begin(), cumulative.end(), u) -
                   cumulative.begin()));
    for (Eigen::Index t = 0; t < d; ++t) z(t) = rng.Normal();
    out.row(static_cast<Eigen::Index>(i)) =
        (model.means[j] + roots[j] * z).transpose();
  }
  return out;
}

absl::StatusOr<Dataset> SampleGmm(const GmmModel& model, size_t n,
                                  uint64_t seed) {
  ASSIGN_OR_RETURN(Eigen::MatrixXd x, SampleGmmMatrix(model, n, seed));
  return DecodeContinuous(x, model.encoding);
}

double NormalCdf(double z) { return 0.5 * std::erfc(-z / std::numbers::sqrt2); }

double NormalQuantile(double p) {
  return boost::math::quantile(boost::math::normal_distribution<double>(), p);
}

bool RepairCorrelation(Eigen::MatrixXd& corr) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(corr);
  if (eig.eigenvalues().minCoeff() >= 0.0) return false;
  const Eigen::VectorXd clipped = eig.eigenvalues().cwiseMax(0.0);
  Eigen::MatrixXd fixed = eig.eigenvectors() * clipped.asDiagonal() *
                          eig.eigenvectors().transpose();
  const Eigen::VectorXd scale =
      fixed.diagonal()
          .cwiseMax(std::numeric_limits<double>::min())
          .cwiseSqrt()
          .cwiseInverse();
  fixed = scale.asDiagonal() * fixed * scale.asDiagonal();
  fixed.diagonal().setOnes();
  corr = fixed.cwiseMax(-1.0).cwiseMin(1.0);
  return true;
}

absl::StatusOr<CopulaModel> FitGaussianCopula(const Dataset& data) {
  const size_t n = data.num_rows();
  const size_t d = data.num_columns();
  if (n < 3) {
    return absl::InvalidArgumentError(
        absl::StrCat("copula needs at least 3 rows, got ", n));
  }
  if (d == 0) return absl::InvalidArgumentError("copula needs columns");
  CopulaModel model;
  model.encoding = MakeContinuousEncoding(data);
  std::vector<std::vector<double>> scores(d);
  std::vector<bool> constant(d, false);
  for (size_t c = 0; c < d; ++c) {
    std::vector<double> column(n);
    for (size_t r = 0; r < n; ++r) {
      column[r] = data.spec(c).is_numeric()
                      ? data.value(r, c)
                      : static_cast<double>(data.code(r, c));
    }
    const std::vector<double> ranks = AverageRanks(column);
    scores[c].resize(n);
    for (size_t r = 0; r < n; ++r) {
      scores[c][r] = NormalQuantile(ranks[r] / static_cast<double>(n + 1));
    }
    std::sort(column.begin(), column.end());
    constant[c] = column.front() == column.back();
    if (constant[c]) {
      model.warnings.push_back(absl::StrCat(
          "column '", data.spec(c).name,
          "' is constant; its correlation row is set to identity"));
    }
    model.marginals.push_back(std::move(column));
  }
  model.correlation = Eigen::MatrixXd::Identity(static_cast<Eigen::Index>(d),
                                                static_cast<Eigen::Index>(d));
  for (size_t i = 0; i < d; ++i) {
    for (size_t j = i + 1; j < d; ++j) {
      if (constant[i] || constant[j]) continue;
      const double r = PearsonCorrelation(scores[i], scores[j]);
      const double v = std::isnan(r) ? 0.0 : r;
      const auto a = static_cast<Eigen::Index>(i);
      const auto b = static_cast<Eigen::Index>(j);
      model.correlation(a, b) = model.correlation(b, a) = v;
    }
  }
  model.repaired = RepairCorrelation(model.correlation);
  if (model.repaired) {
    model.warnings.push_back("correlation matrix repaired to be PSD");
  }
  return model;
}

absl::StatusOr<Dataset> SampleGaussianCopula(const CopulaModel& model, size_t n,
                                             uint64_t seed) {
  const auto d = static_cast<Eigen::Index>(model.marginals.size());
  if (d == 0 || model.correlation.rows() != d ||
      model.correlation.cols() != d) {
    return absl::InvalidArgumentError("malformed copula model");
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(model.correlation);
  if (eig.eigenvalues().minCoeff() < -1e-8) {
    return absl::FailedPreconditionError(
        "copula correlation is not positive semi-definite");
  }
  const Eigen::MatrixXd root = CovarianceSquareRoot(model.correlation);
  Rng rng(seed);
  Eigen::MatrixXd raw(static_cast<Eigen::Index>(n), d);
  Eigen::VectorXd z(d);
  for (size_t i = 0; i < n; ++i) {
    for (Eigen::Index t = 0; t < d; ++t) z(t) = rng.Normal();
    const Eigen::VectorXd correlated = root * z;
    for (Eigen::Index c = 0; c < d; ++c) {
      const std::vector<double>& m = model.marginals[static_cast<size_t>(c)];
      const size_t count = m.size();
      const double u = NormalCdf(correlated(c));
      double v;
      if (model.encoding.schema.columns[static_cast<size_t>(c)].is_numeric()) {
        // Order statistic i sits at probability (i + 1) / (count + 1).
        const double t = std::clamp(u * static_cast<double>(count + 1) - 1.0,
                                    0.0, static_cast<double>(count - 1));
        const auto lo = static_cast<size_t>(t);
        const size_t hi = std::min(lo + 1, count - 1);
        v = m[lo] + (t - static_cast<double>(lo)) * (m[hi] - m[lo]);
      } else {
        v = m[std::min(count - 1,
                       static_cast<size_t>(u * static_cast<double>(count)))];
      }
      raw(static_cast<Eigen::Index>(i), c) = v;
    }
  }
  return BuildDataset(model.encoding, raw);
}

absl::StatusOr<Dataset> RandomModel(const Dataset& data, size_t n,
                                    bool with_replacement, uint64_t seed) {
  return SampleRows(data, n, with_replacement, seed);
}

std::string_view GeneratorKindName(GeneratorKind kind) {
  switch (kind) {
    case GeneratorKind::kGmm:
      return "gmm";
    case GeneratorKind::kCopula:
      return "copula";
    case GeneratorKind::kRandom:
      return "random";
  }
  return "unknown";
}

std::optional<GeneratorKind> ParseGeneratorKind(std::string_view name) {
  for (GeneratorKind kind :
       {GeneratorKind::kGmm, GeneratorKind::kCopula, GeneratorKind::kRandom}) {
    if (GeneratorKindName(kind) == name) return kind;
  }
  return std::nullopt;
}

absl::StatusOr<Dataset> Generate(GeneratorKind kind, const Dataset& data,
                                 size_t n, uint64_t seed,
                                 const GeneratorOptions& options) {
  switch (kind) {
    case GeneratorKind::kGmm: {
      ASSIGN_OR_RETURN(GmmModel model,
                       FitGmm(data, DeriveSeed(seed, 0), options.gmm));
      return SampleGmm(model, n, DeriveSeed(seed, 1));
    }
    case GeneratorKind::kCopula: {
      ASSIGN_OR_RETURN(CopulaModel model, FitGaussianCopula(data));
      return SampleGaussianCopula(model, n, DeriveSeed(seed, 1));
    }
    case GeneratorKind::kRandom:
      return RandomModel(data, n, options.with_replacement, seed);
  }
  return absl::InvalidArgumentError("unknown generator");
}

}  // namespace tabeval
