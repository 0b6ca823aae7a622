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

#include "tabeval/attack_privacy.h"

#include <algorithm>
#include <boost/math/distributions/normal.hpp>
#include <cmath>
#include <map>
#include <set>

#include "absl/strings/str_cat.h"
#include "absl/strings/str_join.h"
#include "tabeval/neighbors.h"
#include "tabeval/random.h"
#include "tabeval/status_macros.h"

namespace tabeval {
namespace {

absl::StatusOr<int64_t> CapAttacks(int64_t n_attacks, size_t available,
                                   std::string* note) {
  if (n_attacks < 1) {
    return absl::InvalidArgumentError("n_attacks must be at least 1");
  }
  if (available == 0) {
    return absl::InvalidArgumentError("original dataset is empty");
  }
  if (static_cast<size_t>(n_attacks) > available) {
    *note = absl::StrCat("n_attacks lowered from ", n_attacks, " to ",
                         available, " (original size)");
    return static_cast<int64_t>(available);
  }
  return n_attacks;
}

absl::StatusOr<RiskEstimate> WithNote(absl::StatusOr<RiskEstimate> estimate,
                                      std::string note) {
  if (estimate.ok()) estimate->note = std::move(note);
  return estimate;
}

std::vector<size_t> SortedIndices(std::span<const Neighbor> row) {
  std::vector<size_t> out;
  out.reserve(row.size());
  for (const Neighbor& n : row) out.push_back(n.index);
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

std::string_view SinglingOutModeName(SinglingOutMode mode) {
  return mode == SinglingOutMode::kUnivariate ? "univariate" : "multivariate";
}

absl::StatusOr<std::pair<double, double>> WilsonInterval(int64_t successes,
                                                         int64_t trials,
                                                         double confidence) {
  if (trials < 1) {
    return absl::InvalidArgumentError("Wilson interval needs trials >= 1");
  }
  if (successes < 0 || successes > trials) {
    return absl::InvalidArgumentError("successes must lie in [0, trials]");
  }
  if (!(confidence > 0.0 && confidence < 1.0)) {
    return absl::InvalidArgumentError("confidence must lie in (0, 1)");
  }
  const double z =
      boost::math::quantile(boost::math::normal(), 0.5 + 0.5 * confidence);
  const double n = static_cast<double>(trials);
  const double p = static_cast<double>(successes) / n;
  const double z2 = z * z;
  const double denom = 1.0 + z2 / n;
  const double center = (p + z2 / (2.0 * n)) / denom;
  const double half =
      z / denom * std::sqrt(p * (1.0 - p) / n + z2 / (4.0 * n * n));
  double low = std::clamp(center - half, 0.0, 1.0);
  double high = std::clamp(center + half, 0.0, 1.0);
  if (successes == 0) low = 0.0;
  if (successes == trials) high = 1.0;
  return std::make_pair(std::min(low, p), std::max(high, p));
}

absl::StatusOr<RiskEstimate> EstimateRisk(int64_t successes, int64_t trials,
                                          double confidence) {
  ASSIGN_OR_RETURN(auto interval,
                   WilsonInterval(successes, trials, confidence));
  RiskEstimate estimate;
  estimate.risk = static_cast<double>(successes) / static_cast<double>(trials);
  estimate.ci_low = interval.first;
  estimate.ci_high = interval.second;
  estimate.n_attacks = trials;
  estimate.n_success = successes;
  estimate.confidence = confidence;
  return estimate;
}

bool Condition::Matches(const Dataset& dataset, size_t row) const {
  if (!dataset.spec(column).is_numeric()) {
    return dataset.code(row, column) == code;
  }
  const double v = dataset.value(row, column);
  switch (op) {
    case Op::kEquals:
      return v == value;
    case Op::kAtMost:
      return v <= value;
    case Op::kAtLeast:
      return v >= value;
    case Op::kWithin:
      return v >= value && v <= upper;
  }
  return false;
}

bool Predicate::Matches(const Dataset& dataset, size_t row) const {
  for (const Condition& c : conditions) {
    if (!c.Matches(dataset, row)) return false;
  }
  return true;
}

std::string Predicate::Describe(const Schema& schema) const {
  std::vector<std::string> parts;
  for (const Condition& c : conditions) {
    const ColumnSpec& spec = schema.columns[c.column];
    if (!spec.is_numeric()) {
      parts.push_back(
          absl::StrCat(spec.name, " == '", spec.categories[c.code], "'"));
      continue;
    }
    switch (c.op) {
      case Condition::Op::kEquals:
        parts.push_back(absl::StrCat(spec.name, " == ", FormatNumber(c.value)));
        break;
      case Condition::Op::kAtMost:
        parts.push_back(absl::StrCat(spec.name, " <= ", FormatNumber(c.value)));
        break;
      case Condition::Op::kAtLeast:
        parts.push_back(absl::StrCat(spec.name, " >= ", FormatNumber(c.value)));
        break;
      case Condition::Op::kWithin:
        parts.push_back(absl::StrCat(FormatNumber(c.value), " <= ", spec.name,
                                     " <= ", FormatNumber(c.upper)));
        break;
    }
  }
  return absl::StrJoin(parts, " AND ");
}

size_t CountMatches(const Predicate& predicate, const Dataset& dataset,
                    size_t limit) {
  size_t count = 0;
  for (size_t r = 0; r < dataset.num_rows() && count < limit; ++r) {
    if (predicate.Matches(dataset, r)) ++count;
  }
  return count;
}

std::vector<Predicate> UnivariateCandidates(const Dataset& synthetic) {
  std::vector<Predicate> out;
  for (size_t c = 0; c < synthetic.num_columns(); ++c) {
    if (!synthetic.spec(c).is_numeric()) {
      std::map<int32_t, size_t> counts;
      for (int32_t code : synthetic.codes(c)) ++counts[code];
      for (const auto& [code, count] : counts) {
        if (count != 1) continue;
        Condition cond;
        cond.column = c;
        cond.code = code;
        out.push_back(Predicate{{cond}});
      }
      continue;
    }
    std::map<double, size_t> counts;
    for (double v : synthetic.values(c)) ++counts[v];
    if (counts.empty()) continue;
    for (const auto& [value, count] : counts) {
      if (count != 1) continue;
      out.push_back(Predicate{{Condition{c, Condition::Op::kEquals, value}}});
    }
    if (counts.size() > 1 && counts.begin()->second == 1) {
      out.push_back(Predicate{
          {Condition{c, Condition::Op::kAtMost, counts.begin()->first}}});
    }
    if (counts.size() > 1 && counts.rbegin()->second == 1) {
      out.push_back(Predicate{
          {Condition{c, Condition::Op::kAtLeast, counts.rbegin()->first}}});
    }
  }
  return out;
}

absl::StatusOr<RiskEstimate> SinglingOutRisk(
    const Dataset& original, const Dataset& synthetic, int64_t n_attacks,
    SinglingOutMode mode, uint64_t seed, const SinglingOutOptions& options) {
  RETURN_IF_ERROR(CheckComparable(original, synthetic));
  if (n_attacks < 1) {
    return absl::InvalidArgumentError("n_attacks must be at least 1");
  }
  if (options.bins < 1) {
    return absl::InvalidArgumentError("bins must be positive");
  }

  std::vector<Predicate> predicates;
  if (mode == SinglingOutMode::kUnivariate) {
    predicates = UnivariateCandidates(synthetic);
    if (predicates.size() > static_cast<size_t>(n_attacks)) {
      Rng rng(seed);
      std::vector<size_t> pick = SampleWithoutReplacement(
          predicates.size(), static_cast<size_t>(n_attacks), rng);
      std::sort(pick.begin(), pick.end());
      std::vector<Predicate> chosen;
      chosen.reserve(pick.size());
      for (size_t i : pick) chosen.push_back(std::move(predicates[i]));
      predicates = std::move(chosen);
    }
  } else if (synthetic.num_rows() > 0 && synthetic.num_columns() > 0) {
    const size_t columns = synthetic.num_columns();
    const size_t min_width = std::min<size_t>(2, columns);
    const size_t max_width = std::min<size_t>(4, columns);
    const int64_t max_attempts = n_attacks * options.attempts_per_attack;
    std::set<std::string> seen;
    for (int64_t attempt = 0;
         attempt < max_attempts &&
         predicates.size() < static_cast<size_t>(n_attacks);
         ++attempt) {
      Rng rng(DeriveSeed(seed, static_cast<uint64_t>(attempt)));
      const size_t row = rng.UniformIndex(synthetic.num_rows());
      const size_t width =
          min_width + rng.UniformIndex(max_width - min_width + 1);
      std::vector<size_t> cols = SampleWithoutReplacement(columns, width, rng);
      std::sort(cols.begin(), cols.end());
      Predicate predicate;
      for (size_t c : cols) {
        Condition cond;
        cond.column = c;
        if (!synthetic.spec(c).is_numeric()) {
          cond.code = synthetic.code(row, c);
        } else {
          const ColumnSpec& range = original.spec(c);
          const double half_width = (range.max - range.min) / options.bins;
          const double v = synthetic.value(row, c);
          if (half_width > 0.0) {
            cond.op = Condition::Op::kWithin;
            cond.value = v - half_width;
            cond.upper = v + half_width;
          } else {
            cond.value = v;
          }
        }
        predicate.conditions.push_back(cond);
      }
      if (CountMatches(predicate, synthetic, 2) != 1) continue;
      if (!seen.insert(predicate.Describe(synthetic.schema())).second) continue;
      predicates.push_back(std::move(predicate));
    }
  }

  if (predicates.empty()) {
    RiskEstimate none;
    none.confidence = options.confidence;
    none.note = "no singling-out predicate could be generated";
    return none;
  }
  int64_t successes = 0;
  for (const Predicate& predicate : predicates) {
    if (CountMatches(predicate, original, 2) == 1) ++successes;
  }
  std::string note;
  if (predicates.size() < static_cast<size_t>(n_attacks)) {
    note = absl::StrCat("only ", predicates.size(), " of ", n_attacks,
                        " singling-out predicates could be generated");
  }
  return WithNote(
      EstimateRisk(successes, static_cast<int64_t>(predicates.size()),
                   options.confidence),
      std::move(note));
}

absl::StatusOr<RiskEstimate> LinkabilityRisk(
    const Dataset& original, const Dataset& synthetic, const AuxSplit& aux,
    int64_t n_attacks, size_t n_neighbors, uint64_t seed, double confidence) {
  RETURN_IF_ERROR(CheckComparable(original, synthetic));
  if (aux.side_a.empty() || aux.side_b.empty()) {
    return absl::InvalidArgumentError("both auxiliary sides need columns");
  }
  ASSIGN_OR_RETURN(std::vector<size_t> cols_a,
                   original.schema().IndicesOf(aux.side_a));
  ASSIGN_OR_RETURN(std::vector<size_t> cols_b,
                   original.schema().IndicesOf(aux.side_b));
  for (size_t c : cols_a) {
    if (std::find(cols_b.begin(), cols_b.end(), c) != cols_b.end()) {
      return absl::InvalidArgumentError(absl::StrCat(
          "column '", original.spec(c).name, "' is on both auxiliary sides"));
    }
  }
  if (n_neighbors < 1 || n_neighbors > synthetic.num_rows()) {
    return absl::InvalidArgumentError(
        absl::StrCat("n_neighbors must lie in [1, ", synthetic.num_rows(),
                     "], got ", n_neighbors));
  }
  std::string note;
  ASSIGN_OR_RETURN(int64_t attacks,
                   CapAttacks(n_attacks, original.num_rows(), &note));

  Rng rng(seed);
  const std::vector<size_t> targets = SampleWithoutReplacement(
      original.num_rows(), static_cast<size_t>(attacks), rng);
  ASSIGN_OR_RETURN(Dataset original_norm,
                   Normalize(original, original.schema()));
  ASSIGN_OR_RETURN(Dataset synthetic_norm,
                   Normalize(synthetic, original.schema()));
  const Dataset target_rows = original_norm.SelectRows(targets);

  ASSIGN_OR_RETURN(PointSet query_a, PointSet::Encode(target_rows, cols_a));
  ASSIGN_OR_RETURN(PointSet query_b, PointSet::Encode(target_rows, cols_b));
  ASSIGN_OR_RETURN(PointSet synth_a, PointSet::Encode(synthetic_norm, cols_a));
  ASSIGN_OR_RETURN(PointSet synth_b, PointSet::Encode(synthetic_norm, cols_b));
  ASSIGN_OR_RETURN(NeighborTable nn_a,
                   NearestNeighbors(query_a, synth_a, n_neighbors));
  ASSIGN_OR_RETURN(NeighborTable nn_b,
                   NearestNeighbors(query_b, synth_b, n_neighbors));

  int64_t successes = 0;
  for (size_t i = 0; i < targets.size(); ++i) {
    const std::vector<size_t> a = SortedIndices(nn_a.row(i));
    const std::vector<size_t> b = SortedIndices(nn_b.row(i));
    std::vector<size_t> common;
    std::set_intersection(a.begin(), a.end(), b.begin(), b.end(),
                          std::back_inserter(common));
    if (!common.empty()) ++successes;
  }
  return WithNote(EstimateRisk(successes, attacks, confidence),
                  std::move(note));
}

absl::StatusOr<RiskEstimate> InferenceRisk(
    const Dataset& original, const Dataset& synthetic,
    std::span<const std::string> aux_columns, std::string_view secret,
    int64_t n_attacks, uint64_t seed, const InferenceOptions& options) {
  RETURN_IF_ERROR(CheckComparable(original, synthetic));
  if (aux_columns.empty()) {
    return absl::InvalidArgumentError("inference needs auxiliary columns");
  }
  ASSIGN_OR_RETURN(std::vector<size_t> aux,
                   original.schema().IndicesOf(aux_columns));
  ASSIGN_OR_RETURN(size_t secret_col, original.schema().IndexOf(secret));
  if (std::find(aux.begin(), aux.end(), secret_col) != aux.end()) {
    return absl::InvalidArgumentError(absl::StrCat(
        "secret '", std::string(secret), "' is among the auxiliary columns"));
  }
  if (synthetic.num_rows() == 0) {
    return absl::InvalidArgumentError("synthetic dataset is empty");
  }
  std::string note;
  ASSIGN_OR_RETURN(int64_t attacks,
                   CapAttacks(n_attacks, original.num_rows(), &note));

  Rng rng(seed);
  const std::vector<size_t> targets = SampleWithoutReplacement(
      original.num_rows(), static_cast<size_t>(attacks), rng);
  ASSIGN_OR_RETURN(Dataset original_norm,
                   Normalize(original, original.schema()));
  ASSIGN_OR_RETURN(Dataset synthetic_norm,
                   Normalize(synthetic, original.schema()));
  ASSIGN_OR_RETURN(PointSet queries,
                   PointSet::Encode(original_norm.SelectRows(targets), aux));
  ASSIGN_OR_RETURN(PointSet reference, PointSet::Encode(synthetic_norm, aux));
  ASSIGN_OR_RETURN(NeighborTable nn, NearestNeighbors(queries, reference, 1));

  const ColumnSpec& spec = original.spec(secret_col);
  const double tolerance = options.tolerance * (spec.max - spec.min);
  int64_t successes = 0;
  for (size_t i = 0; i < targets.size(); ++i) {
    const size_t guess_row = nn.row(i)[0].index;
    bool hit;
    if (spec.is_numeric()) {
      hit = std::abs(synthetic.value(guess_row, secret_col) -
                     original.value(targets[i], secret_col)) <= tolerance;
    } else {
      hit = synthetic.code(guess_row, secret_col) ==
            original.code(targets[i], secret_col);
    }
    if (hit) ++successes;
  }
  return WithNote(EstimateRisk(successes, attacks, options.confidence),
                  std::move(note));
}

}  // namespace tabeval
