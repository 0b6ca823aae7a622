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

#include "tabeval/ml_utility.h"

#include <algorithm>
#include <cmath>
#include <utility>

#include "absl/strings/str_cat.h"
#include "tabeval/random.h"
#include "tabeval/similarity.h"
#include "tabeval/status_macros.h"

namespace tabeval {
namespace {

double Sigmoid(double z) {
  if (z >= 0.0) return 1.0 / (1.0 + std::exp(-z));
  const double e = std::exp(z);
  return e / (1.0 + e);
}

// log(1 + exp(z)) without overflow.
double Softplus(double z) {
  return std::max(z, 0.0) + std::log1p(std::exp(-std::abs(z)));
}

Eigen::VectorXd Logits(const Eigen::MatrixXd& x,
                       const Eigen::VectorXd& weights) {
  const Eigen::Index d = x.cols();
  return (x * weights.head(d)).array() + weights(d);
}

double TargetKey(const Dataset& dataset, size_t row, size_t target) {
  return dataset.spec(target).is_numeric()
             ? dataset.value(row, target)
             : static_cast<double>(dataset.code(row, target));
}

double F1Score(int64_t tp, int64_t fp, int64_t fn) {
  const int64_t denom = 2 * tp + fp + fn;
  return denom == 0
             ? 0.0
             : 2.0 * static_cast<double>(tp) / static_cast<double>(denom);
}

}  // namespace

std::string_view LearnerKindName(LearnerKind kind) {
  return kind == LearnerKind::kLogisticRegression ? "logistic_regression"
                                                  : "k_nearest_neighbors";
}

std::optional<LearnerKind> ParseLearnerKind(std::string_view name) {
  if (name == "logistic_regression") return LearnerKind::kLogisticRegression;
  if (name == "k_nearest_neighbors") return LearnerKind::kKNearestNeighbors;
  return std::nullopt;
}

absl::StatusOr<FeatureEncoder> FeatureEncoder::Create(const Schema& reference,
                                                      std::string_view target) {
  RETURN_IF_ERROR(reference.IndexOf(target).status());
  FeatureEncoder encoder;
  encoder.reference_ = reference;
  encoder.target_ = std::string(target);
  for (const ColumnSpec& spec : reference.columns) {
    if (spec.name == target) continue;
    encoder.dims_ += spec.is_numeric() ? 1 : spec.categories.size();
  }
  if (encoder.dims_ == 0) {
    return absl::InvalidArgumentError("no feature columns besides the target");
  }
  return encoder;
}

absl::StatusOr<Eigen::MatrixXd> FeatureEncoder::Encode(
    const Dataset& dataset) const {
  Eigen::MatrixXd x =
      Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(dataset.num_rows()),
                            static_cast<Eigen::Index>(dims_));
  Eigen::Index offset = 0;
  for (const ColumnSpec& ref : reference_.columns) {
    if (ref.name == target_) continue;
    ASSIGN_OR_RETURN(size_t c, dataset.schema().IndexOf(ref.name));
    const ColumnSpec& spec = dataset.spec(c);
    if (spec.kind != ref.kind) {
      return absl::InvalidArgumentError(
          absl::StrCat("column '", ref.name, "' changed kind"));
    }
    if (ref.is_numeric()) {
      double lo = ref.min, range = ref.max - ref.min;
      if (spec.normalized && !ref.normalized) {
        lo = 0.0;
        range = range > 0.0 ? 1.0 : 0.0;
      }
      for (size_t r = 0; r < dataset.num_rows(); ++r) {
        x(static_cast<Eigen::Index>(r), offset) =
            range > 0.0
                ? std::clamp((dataset.value(r, c) - lo) / range, 0.0, 1.0)
                : 0.0;
      }
      ++offset;
      continue;
    }
    for (size_t r = 0; r < dataset.num_rows(); ++r) {
      const std::string& label =
          spec.categories[static_cast<size_t>(dataset.code(r, c))];
      if (auto code = ref.CodeOf(label)) {
        x(static_cast<Eigen::Index>(r), offset + *code) = 1.0;
      }
    }
    offset += static_cast<Eigen::Index>(ref.categories.size());
  }
  return x;
}

double LogisticLoss(const Eigen::MatrixXd& x, const Eigen::VectorXd& y,
                    const Eigen::VectorXd& weights, double l2) {
  const Eigen::VectorXd z = Logits(x, weights);
  double total = 0.0;
  for (Eigen::Index i = 0; i < z.size(); ++i) {
    total += Softplus(z(i)) - y(i) * z(i);
  }
  const double w2 = weights.head(x.cols()).squaredNorm();
  return total / static_cast<double>(x.rows()) + 0.5 * l2 * w2;
}

Eigen::VectorXd LogisticGradient(const Eigen::MatrixXd& x,
                                 const Eigen::VectorXd& y,
                                 const Eigen::VectorXd& weights, double l2) {
  const Eigen::Index d = x.cols();
  Eigen::VectorXd residual = Logits(x, weights).unaryExpr(&Sigmoid) - y;
  residual /= static_cast<double>(x.rows());
  Eigen::VectorXd grad(d + 1);
  grad.head(d) = x.transpose() * residual + l2 * weights.head(d);
  grad(d) = residual.sum();
  return grad;
}

absl::StatusOr<LogisticModel> TrainLogistic(const Eigen::MatrixXd& x,
                                            const Eigen::VectorXd& y,
                                            const Learner& learner) {
  if (x.rows() == 0 || x.rows() != y.size()) {
    return absl::InvalidArgumentError("logistic regression needs labeled rows");
  }
  if (x.cols() == 0) {
    return absl::InvalidArgumentError("logistic regression needs features");
  }
  if (learner.iterations < 1) {
    return absl::InvalidArgumentError("iterations must be at least 1");
  }
  if (!(learner.learning_rate > 0.0) || learner.l2 < 0.0) {
    return absl::InvalidArgumentError(
        "learning rate must be positive and l2 non-negative");
  }
  for (Eigen::Index i = 0; i < y.size(); ++i) {
    if (y(i) != 0.0 && y(i) != 1.0) {
      return absl::InvalidArgumentError("labels must be 0 or 1");
    }
  }
  LogisticModel model;
  model.weights = Eigen::VectorXd::Zero(x.cols() + 1);
  model.loss_history.reserve(static_cast<size_t>(learner.iterations) + 1);
  model.loss_history.push_back(LogisticLoss(x, y, model.weights, learner.l2));
  for (int it = 0; it < learner.iterations; ++it) {
    model.weights -= learner.learning_rate *
                     LogisticGradient(x, y, model.weights, learner.l2);
    model.loss_history.push_back(LogisticLoss(x, y, model.weights, learner.l2));
  }
  return model;
}

Eigen::VectorXd PredictLogistic(const LogisticModel& model,
                                const Eigen::MatrixXd& x) {
  return Logits(x, model.weights).unaryExpr(&Sigmoid);
}

std::vector<double> TargetClasses(const Dataset& dataset, size_t target) {
  std::vector<double> keys;
  keys.reserve(dataset.num_rows());
  for (size_t r = 0; r < dataset.num_rows(); ++r) {
    keys.push_back(TargetKey(dataset, r, target));
  }
  std::sort(keys.begin(), keys.end());
  keys.erase(std::unique(keys.begin(), keys.end()), keys.end());
  return keys;
}

std::vector<int32_t> ClassIndices(const Dataset& dataset, size_t target,
                                  std::span<const double> classes) {
  std::vector<int32_t> out(dataset.num_rows(), -1);
  for (size_t r = 0; r < dataset.num_rows(); ++r) {
    const double key = TargetKey(dataset, r, target);
    auto it = std::lower_bound(classes.begin(), classes.end(), key);
    if (it != classes.end() && *it == key) {
      out[r] = static_cast<int32_t>(it - classes.begin());
    }
  }
  return out;
}

absl::StatusOr<Classifier> Classifier::Fit(const Dataset& train,
                                           const FeatureEncoder& encoder,
                                           size_t target,
                                           std::vector<double> classes,
                                           const Learner& learner) {
  if (classes.size() < 2) {
    return absl::InvalidArgumentError(
        "classification needs at least 2 classes");
  }
  if (!std::is_sorted(classes.begin(), classes.end())) {
    return absl::InvalidArgumentError("class list must be sorted");
  }
  if (learner.k < 1) return absl::InvalidArgumentError("k must be >= 1");
  Classifier model;
  model.learner_ = learner;
  model.encoder_ = encoder;
  model.classes_ = std::move(classes);

  const std::vector<int32_t> labels =
      ClassIndices(train, target, model.classes_);
  std::vector<size_t> keep;
  for (size_t r = 0; r < labels.size(); ++r) {
    if (labels[r] >= 0) keep.push_back(r);
  }
  model.dropped_rows_ = labels.size() - keep.size();
  if (keep.empty()) {
    return absl::InvalidArgumentError("no training row has a known class");
  }
  const Dataset rows = train.SelectRows(keep);
  ASSIGN_OR_RETURN(Eigen::MatrixXd x, encoder.Encode(rows));
  for (size_t r : keep) model.train_labels_.push_back(labels[r]);

  if (learner.kind == LearnerKind::kKNearestNeighbors) {
    std::vector<double> coords(static_cast<size_t>(x.size()));
    Eigen::Map<
        Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>>(
        coords.data(), x.rows(), x.cols()) = x;
    model.train_points_ = PointSet::FromCoordinates(
        static_cast<size_t>(x.cols()), std::move(coords));
    return model;
  }

  // One model for binary targets (class 1 positive), one per class beyond.
  const size_t num_models =
      model.classes_.size() == 2 ? 1 : model.classes_.size();
  for (size_t m = 0; m < num_models; ++m) {
    const int32_t positive = num_models == 1 ? 1 : static_cast<int32_t>(m);
    Eigen::VectorXd y(x.rows());
    for (Eigen::Index i = 0; i < x.rows(); ++i) {
      y(i) =
          model.train_labels_[static_cast<size_t>(i)] == positive ? 1.0 : 0.0;
    }
    ASSIGN_OR_RETURN(LogisticModel fitted, TrainLogistic(x, y, learner));
    model.models_.push_back(std::move(fitted));
  }
  return model;
}

absl::StatusOr<Eigen::MatrixXd> Classifier::Scores(const Dataset& test) const {
  ASSIGN_OR_RETURN(Eigen::MatrixXd x, encoder_.Encode(test));
  const auto n = x.rows();
  const auto num_classes = static_cast<Eigen::Index>(classes_.size());
  Eigen::MatrixXd scores = Eigen::MatrixXd::Zero(n, num_classes);
  if (learner_.kind == LearnerKind::kKNearestNeighbors) {
    std::vector<double> coords(static_cast<size_t>(x.size()));
    Eigen::Map<
        Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>>(
        coords.data(), n, x.cols()) = x;
    const PointSet queries = PointSet::FromCoordinates(
        static_cast<size_t>(x.cols()), std::move(coords));
    const size_t k =
        std::min(static_cast<size_t>(learner_.k), train_points_.size());
    ASSIGN_OR_RETURN(NeighborTable table,
                     NearestNeighbors(queries, train_points_, k));
    for (Eigen::Index i = 0; i < n; ++i) {
      for (const Neighbor& nb : table.row(static_cast<size_t>(i))) {
        scores(i, train_labels_[nb.index]) += 1.0 / static_cast<double>(k);
      }
    }
    return scores;
  }
  if (models_.size() == 1) {
    const Eigen::VectorXd p = PredictLogistic(models_[0], x);
    scores.col(1) = p;
    scores.col(0) = (1.0 - p.array()).matrix();
    return scores;
  }
  for (size_t m = 0; m < models_.size(); ++m) {
    scores.col(static_cast<Eigen::Index>(m)) = PredictLogistic(models_[m], x);
  }
  return scores;
}

std::optional<double> RocAuc(std::span<const int32_t> labels,
                             std::span<const double> scores) {
  const std::vector<double> ranks = AverageRanks(scores);
  double positive_rank_sum = 0.0;
  double n_pos = 0.0, n_neg = 0.0;
  for (size_t i = 0; i < labels.size(); ++i) {
    if (labels[i] == 1) {
      positive_rank_sum += ranks[i];
      n_pos += 1.0;
    } else {
      n_neg += 1.0;
    }
  }
  if (n_pos == 0.0 || n_neg == 0.0) return std::nullopt;
  return (positive_rank_sum - n_pos * (n_pos + 1.0) / 2.0) / (n_pos * n_neg);
}

ClassificationMetrics ComputeBinaryMetrics(std::span<const int32_t> labels,
                                           std::span<const double> scores,
                                           double threshold) {
  ClassificationMetrics metrics;
  int64_t tp = 0, fp = 0, fn = 0, correct = 0;
  for (size_t i = 0; i < labels.size(); ++i) {
    const bool predicted = scores[i] > threshold;
    const bool actual = labels[i] == 1;
    if (predicted == actual) ++correct;
    if (predicted && actual) ++tp;
    if (predicted && !actual) ++fp;
    if (!predicted && actual) ++fn;
  }
  metrics.accuracy = labels.empty() ? 0.0
                                    : static_cast<double>(correct) /
                                          static_cast<double>(labels.size());
  metrics.f1 = F1Score(tp, fp, fn);
  metrics.auc = RocAuc(labels, scores);
  return metrics;
}

ClassificationMetrics ComputeMetrics(std::span<const int32_t> labels,
                                     const Eigen::MatrixXd& scores) {
  const auto num_classes = scores.cols();
  const size_t n = labels.size();
  if (num_classes == 2) {
    std::vector<double> positive(n);
    for (size_t i = 0; i < n; ++i) {
      positive[i] = scores(static_cast<Eigen::Index>(i), 1);
    }
    return ComputeBinaryMetrics(labels, positive);
  }
  ClassificationMetrics metrics;
  std::vector<int32_t> predicted(n);
  int64_t correct = 0;
  for (size_t i = 0; i < n; ++i) {
    Eigen::Index best = 0;
    scores.row(static_cast<Eigen::Index>(i)).maxCoeff(&best);
    predicted[i] = static_cast<int32_t>(best);
    if (predicted[i] == labels[i]) ++correct;
  }
  metrics.accuracy =
      n == 0 ? 0.0 : static_cast<double>(correct) / static_cast<double>(n);
  double f1_sum = 0.0, auc_sum = 0.0;
  int auc_count = 0;
  for (Eigen::Index c = 0; c < num_classes; ++c) {
    int64_t tp = 0, fp = 0, fn = 0;
    std::vector<int32_t> binary(n);
    std::vector<double> column(n);
    for (size_t i = 0; i < n; ++i) {
      const bool actual = labels[i] == c;
      const bool pred = predicted[i] == c;
      tp += actual && pred;
      fp += !actual && pred;
      fn += actual && !pred;
      binary[i] = actual ? 1 : 0;
      column[i] = scores(static_cast<Eigen::Index>(i), c);
    }
    f1_sum += F1Score(tp, fp, fn);
    if (auto auc = RocAuc(binary, column)) {
      auc_sum += *auc;
      ++auc_count;
    }
  }
  metrics.f1 = f1_sum / static_cast<double>(num_classes);
  if (auc_count > 0) metrics.auc = auc_sum / auc_count;
  return metrics;
}

absl::StatusOr<ClassificationMetrics> EvaluateClassifier(
    const Classifier& model, const Dataset& test, size_t target) {
  if (test.num_rows() == 0) {
    return absl::InvalidArgumentError("empty test set");
  }
  const std::vector<int32_t> all = ClassIndices(test, target, model.classes());
  std::vector<size_t> keep;
  std::vector<int32_t> labels;
  for (size_t r = 0; r < all.size(); ++r) {
    if (all[r] < 0) continue;
    keep.push_back(r);
    labels.push_back(all[r]);
  }
  if (keep.empty()) {
    return absl::InvalidArgumentError("no test row has a known class");
  }
  ASSIGN_OR_RETURN(Eigen::MatrixXd scores, model.Scores(test.SelectRows(keep)));
  return ComputeMetrics(labels, scores);
}

absl::StatusOr<UtilityReport> TstrCompare(const Dataset& original,
                                          const Dataset& synthetic,
                                          std::string_view target,
                                          const Learner& learner,
                                          uint64_t seed) {
  ASSIGN_OR_RETURN(size_t t, original.schema().IndexOf(target));
  if (!synthetic.schema().Find(target).has_value()) {
    return absl::NotFoundError(absl::StrCat("target '", std::string(target),
                                            "' missing from synthetic data"));
  }
  RETURN_IF_ERROR(CheckComparable(original, synthetic));
  std::vector<double> classes = TargetClasses(original, t);
  if (classes.size() < 2) {
    return absl::FailedPreconditionError(
        absl::StrCat("target '", std::string(target), "' has a single class"));
  }
  ASSIGN_OR_RETURN(SplitPair split,
                   DynamicTrainTestSplit(original, seed, std::string(target)));
  ASSIGN_OR_RETURN(FeatureEncoder encoder,
                   FeatureEncoder::Create(original.schema(), target));

  UtilityReport report;
  report.model_name = std::string(LearnerKindName(learner.kind));
  report.train_rows = split.train.num_rows();
  report.test_rows = split.test.num_rows();

  ASSIGN_OR_RETURN(Classifier real,
                   Classifier::Fit(split.train, encoder, t, classes, learner));
  ASSIGN_OR_RETURN(report.trtr, EvaluateClassifier(real, split.test, t));

  Dataset train_synth = synthetic;
  if (synthetic.num_rows() != split.train.num_rows()) {
    const bool replace = synthetic.num_rows() < split.train.num_rows();
    ASSIGN_OR_RETURN(train_synth, SampleRows(synthetic, split.train.num_rows(),
                                             replace, DeriveSeed(seed, 1)));
    report.notes.push_back(
        absl::StrCat("synthetic data resampled from ", synthetic.num_rows(),
                     " to ", split.train.num_rows(), " rows",
                     replace ? " with replacement" : " without replacement"));
  }
  ASSIGN_OR_RETURN(Classifier synth,
                   Classifier::Fit(train_synth, encoder, t, classes, learner));
  if (synth.dropped_rows() > 0) {
    report.notes.push_back(absl::StrCat(
        synth.dropped_rows(),
        " synthetic rows had a target class absent from the original"));
  }
  ASSIGN_OR_RETURN(report.tstr, EvaluateClassifier(synth, split.test, t));

  report.deltas.accuracy = report.trtr.accuracy - report.tstr.accuracy;
  report.deltas.f1 = report.trtr.f1 - report.tstr.f1;
  if (report.trtr.auc.has_value() && report.tstr.auc.has_value()) {
    report.deltas.auc = *report.trtr.auc - *report.tstr.auc;
  }
  if (!report.trtr.auc.has_value()) {
    report.notes.push_back("AUC undefined: test split holds a single class");
  }
  return report;
}

}  // namespace tabeval
