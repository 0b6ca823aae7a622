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

#ifndef TABEVAL_RANDOM_H_
#define TABEVAL_RANDOM_H_

#include <cstddef>
#include <cstdint>
#include <random>
#include <utility>
#include <vector>

namespace tabeval {

// Seeded pseudo-random source. The engine is std::mt19937_64, whose output
// sequence is fixed by the standard; the distributions below are written out
// by hand because the std:: distributions are implementation-defined, and
// every randomized operation in the library must be bit-reproducible.
class Rng {
 public:
  explicit Rng(uint64_t seed) : engine_(seed) {}

  uint64_t NextBits() { return engine_(); }

  // Uniform double in [0, 1) with 53 random bits.
  double Uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  // Uniform integer in [0, n). Requires n > 0.
  size_t UniformIndex(size_t n);

  // Standard normal draw (Marsaglia polar method).
  double Normal();

  template <typename T>
  void Shuffle(std::vector<T>& values) {
    for (size_t i = values.size(); i > 1; --i) {
      std::swap(values[i - 1], values[UniformIndex(i)]);
    }
  }

 private:
  std::mt19937_64 engine_;
  bool has_spare_normal_ = false;
  double spare_normal_ = 0.0;
};

// Derives an independent stream seed from a master seed (SplitMix64 mix).
uint64_t DeriveSeed(uint64_t master, uint64_t stream);

// k distinct indices from [0, n) in random order. Requires k <= n.
std::vector<size_t> SampleWithoutReplacement(size_t n, size_t k, Rng& rng);

// k indices from [0, n) drawn with replacement. Requires n > 0.
std::vector<size_t> SampleWithReplacement(size_t n, size_t k, Rng& rng);

}  // namespace tabeval

#endif  // TABEVAL_RANDOM_H_
