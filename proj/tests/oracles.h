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

// Brute-force reference implementations used as test oracles. They follow
// the metric definitions directly, favour clarity over speed and share no
// code with the library beyond Dataset cell access.

#ifndef TABEVAL_TESTS_ORACLES_H_
#define TABEVAL_TESTS_ORACLES_H_

#include <cstddef>
#include <cstdint>
#include <vector>

#include "tabeval/tabular.h"

namespace tabeval::oracle {

double Distance(const Dataset& a, size_t i, const Dataset& b, size_t j);

double Disco(const Dataset& original, const Dataset& synthetic,
             const std::vector<size_t>& keys, size_t target);
double RepU(const Dataset& original, const Dataset& synthetic,
            const std::vector<size_t>& keys);
double Nndr(const Dataset& synthetic, const Dataset& original);
double Dcr(const Dataset& synthetic, const Dataset& original);
// Equal-size inputs only.
double Nnaa(const Dataset& original, const Dataset& synthetic);

// Quantile-function integral of |F^-1 - G^-1| over (0, 1).
double Wasserstein1d(std::vector<double> a, std::vector<double> b);
// sup |F - G| evaluated at every sample point.
double Ks(const std::vector<double>& a, const std::vector<double>& b);
double CategoricalKs(const std::vector<int32_t>& a,
                     const std::vector<int32_t>& b, int categories);
double Pearson(const std::vector<double>& a, const std::vector<double>& b);
// Average ranks by counting smaller and equal values.
std::vector<double> Ranks(const std::vector<double>& values);
double Nmi(const std::vector<int32_t>& x, const std::vector<int32_t>& y);
// H(M) - (H(P) + H(Q)) / 2 in bits.
double JsDivergence(const std::vector<double>& p, const std::vector<double>& q);
// Equal-width right-closed bins; first bin closed. Exact for integer data
// and integer ranges.
int32_t Bin(double x, double min, double max, int bins);

// Overall similarity scores on comparable data, per the definitions.
double WassersteinOverall(const Dataset& a, const Dataset& b);
double KsOverall(const Dataset& a, const Dataset& b);
double CorrelationOverall(const Dataset& a, const Dataset& b, bool spearman);
double NmiOverall(const Dataset& a, const Dataset& b, int bins);
double JsOverall(const Dataset& a, const Dataset& b, int bins);
struct Stats {
  double mean_diff, median_diff, var_diff;
};
Stats BasicStats(const Dataset& a, const Dataset& b);

// Plain Gibbs-kernel Sinkhorn iterations run to a fixed count.
double SinkhornCost(const std::vector<double>& cost, size_t n, size_t m,
                    double epsilon, int iterations);
// Exhaustive minimum over permutations of the mean matched cost (n <= 8).
double AssignmentCost(const std::vector<double>& cost, size_t n);

}  // namespace tabeval::oracle

#endif  // TABEVAL_TESTS_ORACLES_H_
