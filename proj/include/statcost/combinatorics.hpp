// Copyright 2026 The Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cstdint>

namespace statcost {

// Exact binomial coefficient; fits in 64 bits for every n <= 63.
std::uint64_t binomial_u64(int n, int k);

inline double binomial(int n, int k) {
  return static_cast<double>(binomial_u64(n, k));
}

// Shapley permutation weight |S|!(n-|S|-1)!/n! = 1/(n * binom(n-1, |S|)) as an
// exact rational; both parts fit in 64 bits for n <= 63.
struct Rational64 {
  std::uint64_t num;
  std::uint64_t den;
  double value() const {
    return static_cast<double>(num) / static_cast<double>(den);
  }
};

Rational64 shapley_weight_exact(int n, int subset_size);

// Exact binomial tail Pr[Binomial(n, 1/2) >= k].
double binomial_half_upper_tail(int n, int k);

}  // namespace statcost
