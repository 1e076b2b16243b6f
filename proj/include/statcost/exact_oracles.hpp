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

#include "statcost/game.hpp"
#include "statcost/set_distribution.hpp"
#include "statcost/structure.hpp"
#include "statcost/types.hpp"

namespace statcost {

// Per-size expected marginal contributions of one player:
// by_size[j] = E over uniform size-j sets S (i not in S) of C_S(i).
// For submodular games the profile is nonincreasing in j.
struct MarginalProfile {
  int player = 0;
  std::vector<double> by_size;  // length n, j = 0..n-1
};

// Exact Shapley value as the permutation-weighted sum over all subsets,
// phi_i = sum_{S not containing i} |S|!(n-|S|-1)!/n! * (C(S u {i}) - C(S)).
// Weights come from exact 64-bit binomials. Requires n <= kExhaustiveLimit.
double exact_shapley_subset(const Game& game, int player);

// Exact Shapley value as the average of per-size expected marginals,
// phi_i = (1/n) sum_j by_size[j]; agrees with exact_shapley_subset to 1e-10.
double exact_shapley_sizes(const Game& game, int player);

// All players at once, subset formula.
Vector exact_shapley(const Game& game);

MarginalProfile marginal_profile(const Game& game, int player);

// Exact expected marginal contribution to a random set not containing the
// player: v_i = sum_{S not containing i} Pr[S | i not in S] * C_S(i), with
// exact renormalization. Throws UndefinedConditionalError if Pr[i not in S]=0.
double exact_expected_marginal(const Game& game, const SetDistribution& dist,
                               int player);

}  // namespace statcost
