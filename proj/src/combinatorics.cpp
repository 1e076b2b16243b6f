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

#include "statcost/combinatorics.hpp"

#include <cmath>

#include "statcost/errors.hpp"

namespace statcost {

std::uint64_t binomial_u64(int n, int k) {
  if (k < 0 || k > n) return 0;
  if (n > 63) throw CapabilityError("binomial_u64 limited to n <= 63");
  k = std::min(k, n - k);
  // Multiplicative form with exact division at every step; the product can
  // exceed 64 bits near n = 63 even though the result fits.
  std::uint64_t result = 1;
  for (int i = 1; i <= k; ++i) {
    unsigned __int128 wide =
        static_cast<unsigned __int128>(result) * static_cast<unsigned>(n - k + i);
    result = static_cast<std::uint64_t>(wide / static_cast<unsigned>(i));
  }
  return result;
}

Rational64 shapley_weight_exact(int n, int subset_size) {
  return Rational64{1, static_cast<std::uint64_t>(n) *
                           binomial_u64(n - 1, subset_size)};
}

double binomial_half_upper_tail(int n, int k) {
  if (k <= 0) return 1.0;
  if (k > n) return 0.0;
  double sum = 0.0;
  for (int j = k; j <= n; ++j) sum += binomial(n, j);
  return std::ldexp(sum, -n);
}

}  // namespace statcost
