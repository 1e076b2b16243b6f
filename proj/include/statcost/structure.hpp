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

#include <optional>
#include <string>

#include "statcost/game.hpp"

namespace statcost {

// Exact exhaustive limits. Operations beyond these return a capability error
// instead of silently sampling: oracle results stay exact, never approximate.
inline constexpr int kExhaustiveLimit = 20;  // plain 2^n enumerations
inline constexpr int kPairwiseLimit = 16;    // 2^n * n^2 submodularity scans

struct StructureWitness {
  PlayerSet subset;    // S
  PlayerSet superset;  // T (S with one extra player, or S u {i} for monotone)
  int player;          // i
  std::string kind;    // "monotonicity" or "submodularity"
};

struct StructureReport {
  bool monotone = false;
  bool submodular = false;
  // First violation under ascending (S, i, j) enumeration order.
  std::optional<StructureWitness> witness;
};

// Exhaustive monotonicity / submodularity check. Submodularity is verified
// through the pairwise form C_S(i) >= C_{S u {j}}(i), which is equivalent to
// the nested-set definition. Requires n <= kPairwiseLimit.
StructureReport check_structure(const Game& game);

// Curvature by exhaustion of top marginals: 1 - min_i C_{N\{i}}(i) / C(i).
// The game is assumed monotone submodular; pass verify=true to check first.
// Throws UndefinedCurvatureError when some C(i) = 0.
double curvature(const Game& game, bool verify = false);

// Spread max_S C(S) / min_{S != empty} C(S) by exhaustion; requires
// n <= kExhaustiveLimit and min > 0 (else InfiniteSpreadError).
double spread(const Game& game);

}  // namespace statcost
