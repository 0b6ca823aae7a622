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

// Simulated re-identification attacks that use the synthetic table as the
// attacker's knowledge: singling out, linkability and attribute inference.
// Each reports a raw success rate with a Wilson score interval.

#ifndef TABEVAL_ATTACK_PRIVACY_H_
#define TABEVAL_ATTACK_PRIVACY_H_

#include <cstddef>
#include <cstdint>
#include <limits>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "absl/status/statusor.h"
#include "tabeval/tabular.h"

namespace tabeval {

struct RiskEstimate {
  double risk = 0.0;
  double ci_low = 0.0;
  double ci_high = 1.0;
  int64_t n_attacks = 0;
  int64_t n_success = 0;
  double confidence = 0.95;
  // Set when the run was adjusted, e.g. attack count lowered to the data
  // size or no attack could be generated.
  std::string note;
};

// Column split between two datasets an attacker wants to link.
struct AuxSplit {
  std::vector<std::string> side_a;
  std::vector<std::string> side_b;
};

enum class SinglingOutMode { kUnivariate, kMultivariate };

std::string_view SinglingOutModeName(SinglingOutMode mode);

// Wilson score interval for a binomial proportion, clamped to [0, 1].
absl::StatusOr<std::pair<double, double>> WilsonInterval(int64_t successes,
                                                         int64_t trials,
                                                         double confidence);

// Point estimate successes / trials with its Wilson interval.
absl::StatusOr<RiskEstimate> EstimateRisk(int64_t successes, int64_t trials,
                                          double confidence = 0.95);

// One condition of a singling-out query.
struct Condition {
  enum class Op { kEquals, kAtMost, kAtLeast, kWithin };

  size_t column = 0;
  Op op = Op::kEquals;
  double value = 0.0;  // numeric bound, or lower bound for kWithin
  double upper = 0.0;  // kWithin only
  int32_t code = 0;    // categorical kEquals

  bool Matches(const Dataset& dataset, size_t row) const;
};

struct Predicate {
  std::vector<Condition> conditions;

  bool Matches(const Dataset& dataset, size_t row) const;
  std::string Describe(const Schema& schema) const;
};

// Rows matching the predicate, counting stops at `limit`.
size_t CountMatches(const Predicate& predicate, const Dataset& dataset,
                    size_t limit = std::numeric_limits<size_t>::max());

// All single-attribute queries that isolate exactly one synthetic record:
// equality on values occurring once, and <= min / >= max on numeric columns
// whose extreme value occurs once. Column order, then ascending value.
std::vector<Predicate> UnivariateCandidates(const Dataset& synthetic);

struct SinglingOutOptions {
  // Numeric multivariate conditions are intervals of +-1 bin width of the
  // original's range.
  int bins = kDefaultBins;
  double confidence = 0.95;
  // Multivariate generation gives up after n_attacks * this many draws.
  int64_t attempts_per_attack = 100;
};

// Builds up to n_attacks queries that single out one synthetic record and
// scores the fraction that also single out exactly one original record.
// Univariate queries are sampled from UnivariateCandidates; multivariate
// queries are conjunctions over 2-4 random columns of a random synthetic
// record. Datasets must be comparable.
absl::StatusOr<RiskEstimate> SinglingOutRisk(
    const Dataset& original, const Dataset& synthetic, int64_t n_attacks,
    SinglingOutMode mode, uint64_t seed,
    const SinglingOutOptions& options = {});

// For each of n_attacks sampled original records, finds its n_neighbors
// nearest synthetic records on side A columns and on side B columns; the
// attack succeeds when the two neighbor sets intersect. n_attacks above the
// original size is lowered with a note.
absl::StatusOr<RiskEstimate> LinkabilityRisk(const Dataset& original,
                                             const Dataset& synthetic,
                                             const AuxSplit& aux,
                                             int64_t n_attacks,
                                             size_t n_neighbors, uint64_t seed,
                                             double confidence = 0.95);

struct InferenceOptions {
  // Numeric guesses within tolerance * (max - min) of the truth succeed.
  double tolerance = 0.05;
  double confidence = 0.95;
};

// For each sampled original record, copies the secret of its nearest
// synthetic record on the auxiliary columns and checks the guess.
absl::StatusOr<RiskEstimate> InferenceRisk(
    const Dataset& original, const Dataset& synthetic,
    std::span<const std::string> aux_columns, std::string_view secret,
    int64_t n_attacks, uint64_t seed, const InferenceOptions& options = {});

}  // namespace tabeval

#endif  // TABEVAL_ATTACK_PRIVACY_H_
