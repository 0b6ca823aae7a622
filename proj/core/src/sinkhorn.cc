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

#include "tabeval/sinkhorn.h"

#include <algorithm>
#include <cmath>
#include <limits>

#include "absl/strings/str_cat.h"
#include "tabeval/parallel.h"
#include "tabeval/random.h"
#include "tabeval/status_macros.h"

namespace tabeval {
namespace {

// exp(-c / epsilon) stays far from underflow below this exponent.
constexpr double kMaxKernelExponent = 500.0;

// Marginal tolerance of the intermediate epsilon-scaling stages.
constexpr double kStageTolerance = 1e-4;

double LogSumExp(const std::vector<double>& values) {
  double peak = -std::numeric_limits<double>::infinity();
  for (double v : values) peak = std::max(peak, v);
  if (!std::isfinite(peak)) return peak;
  double sum = 0.0;
  for (double v : values) sum += std::exp(v - peak);
  return peak + std::log(sum);
}

class LogDomainSolver {
 public:
  LogDomainSolver(std::span<const double> cost, size_t n, size_t m,
                  double epsilon)
      : cost_(cost), n_(n), m_(m), eps_(epsilon), f_(n, 0.0), g_(m, 0.0) {}

  // Potentials are in cost units, so they stay a warm start across epsilons.
  void set_epsilon(double epsilon) { eps_ = epsilon; }

  void Step() {
    const double log_a = -std::log(static_cast<double>(n_));
    const double log_b = -std::log(static_cast<double>(m_));
    ParallelFor(n_, [&](size_t begin, size_t end) {
      std::vector<double> row(m_);
      for (size_t i = begin; i < end; ++i) {
        for (size_t j = 0; j < m_; ++j) {
          row[j] = (g_[j] - cost_[i * m_ + j]) / eps_;
        }
        f_[i] = eps_ * (log_a - LogSumExp(row));
      }
    });
    ParallelFor(m_, [&](size_t begin, size_t end) {
      std::vector<double> col(n_);
      for (size_t j = begin; j < end; ++j) {
        for (size_t i = 0; i < n_; ++i) {
          col[i] = (f_[i] - cost_[i * m_ + j]) / eps_;
        }
        g_[j] = eps_ * (log_b - LogSumExp(col));
      }
    });
  }

  double Plan(size_t i, size_t j) const {
    return std::exp((f_[i] + g_[j] - cost_[i * m_ + j]) / eps_);
  }

  double RowViolation() const {
    const double a = 1.0 / static_cast<double>(n_);
    double violation = 0.0;
    for (size_t i = 0; i < n_; ++i) {
      double row = 0.0;
      for (size_t j = 0; j < m_; ++j) row += Plan(i, j);
      violation += std::abs(row - a);
    }
    return violation;
  }

  double Cost() const {
    double total = 0.0;
    for (size_t i = 0; i < n_; ++i) {
      for (size_t j = 0; j < m_; ++j) total += Plan(i, j) * cost_[i * m_ + j];
    }
    return total;
  }

 private:
  std::span<const double> cost_;
  size_t n_, m_;
  double eps_;
  std::vector<double> f_, g_;
};

class KernelSolver {
 public:
  KernelSolver(std::span<const double> cost, size_t n, size_t m, double epsilon)
      : cost_(cost),
        n_(n),
        m_(m),
        kernel_(n * m),
        u_(n, 1.0),
        v_(m, 1.0),
        kv_(n, 0.0) {
    for (size_t k = 0; k < n * m; ++k)
      kernel_[k] = std::exp(-cost[k] / epsilon);
    MultiplyKernel(v_, kv_);
  }

  void Step() {
    const double a = 1.0 / static_cast<double>(n_);
    const double b = 1.0 / static_cast<double>(m_);
    for (size_t i = 0; i < n_; ++i) u_[i] = a / kv_[i];
    std::vector<double> ktu(m_, 0.0);
    for (size_t i = 0; i < n_; ++i) {
      const double* row = kernel_.data() + i * m_;
      const double ui = u_[i];
      for (size_t j = 0; j < m_; ++j) ktu[j] += row[j] * ui;
    }
    for (size_t j = 0; j < m_; ++j) v_[j] = b / ktu[j];
    MultiplyKernel(v_, kv_);
  }

  double RowViolation() const {
    const double a = 1.0 / static_cast<double>(n_);
    double violation = 0.0;
    for (size_t i = 0; i < n_; ++i) violation += std::abs(u_[i] * kv_[i] - a);
    return violation;
  }

  double Cost() const {
    double total = 0.0;
    for (size_t i = 0; i < n_; ++i) {
      const double* row = kernel_.data() + i * m_;
      const double* c = cost_.data() + i * m_;
      double partial = 0.0;
      for (size_t j = 0; j < m_; ++j) partial += row[j] * v_[j] * c[j];
      total += u_[i] * partial;
    }
    return total;
  }

 private:
  void MultiplyKernel(const std::vector<double>& v,
                      std::vector<double>& out) const {
    ParallelFor(n_, [&](size_t begin, size_t end) {
      for (size_t i = begin; i < end; ++i) {
        const double* row = kernel_.data() + i * m_;
        double sum = 0.0;
        for (size_t j = 0; j < m_; ++j) sum += row[j] * v[j];
        out[i] = sum;
      }
    });
  }

  std::span<const double> cost_;
  size_t n_, m_;
  std::vector<double> kernel_;
  std::vector<double> u_, v_, kv_;
};

// Iterates until the row violation drops below tol or the shared iteration
// budget in `result` is spent.
template <typename Solver>
bool Iterate(Solver& solver, const SinkhornOptions& options, double tol,
             SinkhornResult& result) {
  while (result.iterations < options.max_iter) {
    solver.Step();
    ++result.iterations;
    if (options.record_trace) result.cost_trace.push_back(solver.Cost());
    result.marginal_violation = solver.RowViolation();
    if (result.marginal_violation < tol) return true;
  }
  return false;
}

template <typename Solver>
SinkhornResult Run(Solver& solver, const SinkhornOptions& options) {
  SinkhornResult result;
  result.converged = Iterate(solver, options, options.tol, result);
  result.cost = solver.Cost();
  return result;
}

// Epsilon scaling: halves epsilon from the largest cost down to the target,
// solving each stage loosely and warm-starting the next. Only the final
// stage at the target epsilon decides convergence.
SinkhornResult RunScaled(LogDomainSolver& solver, double max_cost,
                         const SinkhornOptions& options) {
  SinkhornResult result;
  const double stage_tol = std::max(options.tol, kStageTolerance);
  for (double eps = max_cost; eps > 2.0 * options.epsilon; eps *= 0.5) {
    solver.set_epsilon(eps);
    Iterate(solver, options, stage_tol, result);
  }
  solver.set_epsilon(options.epsilon);
  result.converged = Iterate(solver, options, options.tol, result);
  result.cost = solver.Cost();
  return result;
}

}  // namespace

absl::StatusOr<SinkhornResult> SolveSinkhorn(std::span<const double> cost,
                                             size_t n, size_t m,
                                             const SinkhornOptions& options) {
  if (n == 0 || m == 0) {
    return absl::InvalidArgumentError("Sinkhorn needs non-empty inputs");
  }
  if (cost.size() != n * m) {
    return absl::InvalidArgumentError("cost matrix size mismatch");
  }
  if (!(options.epsilon > 0.0)) {
    return absl::InvalidArgumentError("epsilon must be positive");
  }
  if (options.max_iter < 1) {
    return absl::InvalidArgumentError("max_iter must be at least 1");
  }
  double max_cost = 0.0;
  for (double c : cost) {
    if (!(c >= 0.0) || !std::isfinite(c)) {
      return absl::InvalidArgumentError("costs must be finite and >= 0");
    }
    max_cost = std::max(max_cost, c);
  }
  SinkhornResult result;
  if (max_cost / options.epsilon < kMaxKernelExponent) {
    KernelSolver solver(cost, n, m, options.epsilon);
    result = Run(solver, options);
  } else {
    LogDomainSolver solver(cost, n, m, options.epsilon);
    result = RunScaled(solver, max_cost, options);
  }
  result.rows_original = n;
  result.rows_synthetic = m;
  return result;
}

absl::StatusOr<SinkhornResult> SinkhornPointClouds(
    const PointSet& a, const PointSet& b, const SinkhornOptions& options) {
  if (a.numeric_dims() != b.numeric_dims() ||
      a.categorical_dims() != b.categorical_dims()) {
    return absl::InvalidArgumentError("point sets have different layouts");
  }
  std::vector<double> cost(a.size() * b.size());
  ParallelFor(a.size(), [&](size_t begin, size_t end) {
    for (size_t i = begin; i < end; ++i) {
      for (size_t j = 0; j < b.size(); ++j) {
        cost[i * b.size() + j] = a.Distance(i, b, j);
      }
    }
  });
  return SolveSinkhorn(cost, a.size(), b.size(), options);
}

absl::StatusOr<SinkhornResult> SinkhornDistance(const Dataset& original,
                                                const Dataset& synthetic,
                                                const SinkhornOptions& options,
                                                uint64_t seed) {
  RETURN_IF_ERROR(CheckComparable(original, synthetic));
  ASSIGN_OR_RETURN(Dataset original_norm,
                   Normalize(original, original.schema()));
  ASSIGN_OR_RETURN(Dataset synthetic_norm,
                   Normalize(synthetic, original.schema()));
  ASSIGN_OR_RETURN(PointSet a, PointSet::Encode(original_norm));
  ASSIGN_OR_RETURN(PointSet b, PointSet::Encode(synthetic_norm));
  if (options.max_rows > 0 && a.size() > options.max_rows) {
    Rng rng(DeriveSeed(seed, 0));
    a = a.Subset(SampleWithoutReplacement(a.size(), options.max_rows, rng));
  }
  if (options.max_rows > 0 && b.size() > options.max_rows) {
    Rng rng(DeriveSeed(seed, 1));
    b = b.Subset(SampleWithoutReplacement(b.size(), options.max_rows, rng));
  }
  return SinkhornPointClouds(a, b, options);
}

}  // namespace tabeval
