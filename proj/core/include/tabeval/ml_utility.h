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

// Machine-learning utility: train on real or synthetic records, test on
// held-out real records, compare.

#ifndef TABEVAL_ML_UTILITY_H_
#define TABEVAL_ML_UTILITY_H_

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "Eigen/Dense"
#include "absl/status/statusor.h"
#include "tabeval/neighbors.h"
#include "tabeval/tabular.h"

namespace tabeval {

enum class LearnerKind { kLogisticRegression, kKNearestNeighbors };

std::string_view LearnerKindName(LearnerKind kind);
std::optional<LearnerKind> ParseLearnerKind(std::string_view name);

struct Learner {
  LearnerKind kind = LearnerKind::kLogisticRegression;
  double learning_rate = 0.1;
  int iterations = 1000;
  double l2 = 1e-4;
  int k = 5;
  uint64_t seed = 0;
};

// Feature matrix of every column but the target: numeric cells scaled by
// the reference range and clamped to [0, 1], categoricals one-hot over the
// reference categories (labels unknown to the reference encode as zeros).
class FeatureEncoder {
 public:
  static absl::StatusOr<FeatureEncoder> Create(const Schema& reference,
                                               std::string_view target);

  absl::StatusOr<Eigen::MatrixXd> Encode(const Dataset& dataset) const;
  size_t dims() const { return dims_; }

 private:
  Schema reference_;
  std::string target_;
  size_t dims_ = 0;
};

// Mean log-loss of sigmoid(X w + b) against 0/1 labels plus l2/2 |w|^2.
// `weights` holds w followed by the bias b, which is not penalized.
double LogisticLoss(const Eigen::MatrixXd& x, const Eigen::VectorXd& y,
                    const Eigen::VectorXd& weights, double l2);
Eigen::VectorXd LogisticGradient(const Eigen::MatrixXd& x,
                                 const Eigen::VectorXd& y,
                                 const Eigen::VectorXd& weights, double l2);

struct LogisticModel {
  Eigen::VectorXd weights;
  // Loss before the first step and after every step.
  std::vector<double> loss_history;
};

// Full-batch gradient descent from zero weights on 0/1 labels.
absl::StatusOr<LogisticModel> TrainLogistic(const Eigen::MatrixXd& x,
                                            const Eigen::VectorXd& y,
                                            const Learner& learner);

Eigen::VectorXd PredictLogistic(const LogisticModel& model,
                                const Eigen::MatrixXd& x);

// A fitted learner over a fixed class list. Scores are per-class
// probabilities (one-vs-rest for logistic regression, neighbor vote shares
// for k-NN).
class Classifier {
 public:
  // `classes` are the target values in order (codes for a categorical
  // target); rows whose target is not listed are ignored.
  static absl::StatusOr<Classifier> Fit(const Dataset& train,
                                        const FeatureEncoder& encoder,
                                        size_t target,
                                        std::vector<double> classes,
                                        const Learner& learner);

  // n x classes score matrix.
  absl::StatusOr<Eigen::MatrixXd> Scores(const Dataset& test) const;

  const std::vector<double>& classes() const { return classes_; }
  // Rows dropped at fit time because their target was not a known class.
  size_t dropped_rows() const { return dropped_rows_; }
  const std::vector<LogisticModel>& logistic_models() const { return models_; }

 private:
  Learner learner_;
  FeatureEncoder encoder_;
  std::vector<double> classes_;
  size_t dropped_rows_ = 0;
  std::vector<LogisticModel> models_;
  PointSet train_points_;
  std::vector<int32_t> train_labels_;
};

struct ClassificationMetrics {
  double accuracy = 0.0;
  double f1 = 0.0;
  std::optional<double> auc;
};

// Rank-sum AUC with average ranks for ties; absent when one class is
// missing.
std::optional<double> RocAuc(std::span<const int32_t> labels,
                             std::span<const double> scores);

// 0/1 labels, positive-class scores; positive iff score > threshold.
ClassificationMetrics ComputeBinaryMetrics(std::span<const int32_t> labels,
                                           std::span<const double> scores,
                                           double threshold = 0.5);

// Class-index labels and an n x C score matrix. Two classes reduce to the
// binary metrics on column 1; more classes use argmax accuracy and
// macro-averaged one-vs-rest F1 and AUC.
ClassificationMetrics ComputeMetrics(std::span<const int32_t> labels,
                                     const Eigen::MatrixXd& scores);

// Target values of the dataset as indices into `classes`, -1 if absent.
std::vector<int32_t> ClassIndices(const Dataset& dataset, size_t target,
                                  std::span<const double> classes);

// Sorted distinct target values (codes for a categorical target).
std::vector<double> TargetClasses(const Dataset& dataset, size_t target);

absl::StatusOr<ClassificationMetrics> EvaluateClassifier(
    const Classifier& model, const Dataset& test, size_t target);

struct MetricDeltas {
  double accuracy = 0.0;
  double f1 = 0.0;
  std::optional<double> auc;
};

struct UtilityReport {
  std::string model_name;
  ClassificationMetrics trtr;
  ClassificationMetrics tstr;
  MetricDeltas deltas;  // trtr - tstr
  size_t train_rows = 0;
  size_t test_rows = 0;
  std::vector<std::string> notes;
};

// Splits the original with DynamicTrainTestSplit (stratified on the
// target), fits on the real training part and on the synthetic table
// resampled to the same size, and scores both on the real test part. A
// synthetic table already of that size is used unchanged. The synthetic
// table must be comparable with the original.
absl::StatusOr<UtilityReport> TstrCompare(const Dataset& original,
                                          const Dataset& synthetic,
                                          std::string_view target,
                                          const Learner& learner,
                                          uint64_t seed);

}  // namespace tabeval

#endif  // TABEVAL_ML_UTILITY_H_
