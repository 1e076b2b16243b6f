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
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "statcost/player_set.hpp"
#include "statcost/types.hpp"

namespace statcost {

using Json = nlohmann::json;

// A cooperative game: a nonnegative cost over coalitions of n players with
// C(empty) = 0. Games are immutable value objects; evaluate is deterministic
// and side-effect free, so games are safe to share across workers.
class Game {
 public:
  Game(int n, std::string label, Json descriptor, double max_cost,
       std::function<double(PlayerSet)> eval);

  int n() const { return n_; }
  const std::string& label() const { return label_; }
  const Json& descriptor() const { return descriptor_; }
  // Recorded upper bound on max_S C(S); exact for built-in families.
  double max_cost() const { return max_cost_; }

  double evaluate(PlayerSet s) const;
  double grand_cost() const { return evaluate(PlayerSet::full_set(n_)); }
  // Marginal contribution C(S u {i}) - C(S); i need not be outside S.
  double marginal(PlayerSet s, int player) const {
    return evaluate(s.with(player)) - evaluate(s.without(player));
  }

 private:
  int n_;
  std::string label_;
  Json descriptor_;
  double max_cost_;
  std::function<double(PlayerSet)> eval_;
};

// Two games over a shared ground set that agree on most coalitions; used by
// the sample-indistinguishability constructions.
struct GamePair {
  Game first;
  Game second;
  std::optional<int> distinguished_player;  // 0-based
  int shared_n;
};

// --- Built-in families --------------------------------------------------

// C(S) = sum of the selected weights. Negative weights are rejected.
Game make_additive(const std::vector<double>& weights);

// C(S) = |S| (unit-weight additive game).
Game make_cardinality(int n);

// C(S) = |union of the players' cover sets|; universe elements are
// arbitrary nonnegative integers.
Game make_coverage(const std::vector<std::vector<int>>& covers);

// Explicit value table over all 2^n subsets (values[mask]); the generic
// harness family for randomized tests. Requires values[0] = 0, values >= 0.
Game make_table(int n, const std::vector<double>& values);

// The hidden-block construction behind the approximately-stable-core
// impossibility: C(S) = |S \ A| + min(|A n S|, (1+eps) * eps*n/2), where A is
// the part_index-th block (1-based) of a partition of {0..n-1} into 1/eps
// consecutive blocks of size eps*n. Both 1/eps and eps*n must be integral.
Game make_partition_hard_game(int n, double eps, int part_index);

// Block of the partition used by make_partition_hard_game.
PlayerSet partition_block(int n, double eps, int part_index);

// --- Curvature lower-bound pair (bounded-curvature construction) ---------

// Integral shape of the construction: L rounded down, H rounded up, sqrt(n)
// to the nearest integer. The pair is defined from closed-form set-size
// expressions; the invariants hold for the rounded shape, not the idealized
// real-valued one.
struct CurvaturePairShape {
  int n = 0;
  double kappa = 0.0;
  double eps_prime = 0.0;
  int low = 0;       // L
  int high = 0;      // H
  int sqrt_n = 0;    // rounded sqrt(n)

  // First game, symmetric: value of any coalition of size s.
  double first_value(int s) const;
  // Second game: value of a coalition of size s containing (h) or not
  // containing (g) the distinguished player.
  double second_without_star(int s) const;  // g(s)
  double second_with_star(int s) const;     // h(s)

  // Per-size expected marginal contributions, closed form. "size" is |S| for
  // the set the player is added to.
  double first_marginal(int size) const;
  double second_star_marginal(int size) const;
  // For a non-star player: marginal into a set of the given size that does
  // (with_star) or does not contain the star.
  double second_other_marginal(int size, bool with_star) const;

  // The construction's proof also tabulates marginals directly; the closed
  // form is authoritative. Returns the (size, with_star) points where the two
  // routes disagree, so callers can flag instead of silently reconciling.
  struct MarginalMismatch {
    int size;
    bool with_star;
    double closed_form;
    double table;
  };
  std::vector<MarginalMismatch> marginal_table_mismatches() const;

  // Analytic Shapley values (averages of the per-size marginals).
  double first_shapley() const;               // any player
  double second_star_shapley() const;         // distinguished player
  double second_other_shapley() const;        // any other player
};

CurvaturePairShape curvature_pair_shape(int n, double kappa, double eps_prime);

// Builds the pair (C1, C2); distinguished player is player 0.
GamePair make_curvature_pair(int n, double kappa, double eps_prime);

// --- Coverage lower-bound pair -------------------------------------------

// Coverage games over U = {a, b_1..b_{1/alpha^2}}: players in one half cover
// {a}, players in the other half cover all of {b_*}; the two games swap the
// halves' roles. Requires n even and 1/alpha^2 integral.
struct CoveragePairShape {
  int n = 0;
  double alpha = 0.0;
  int b_count = 0;           // 1/alpha^2
  PlayerSet half_a;          // first n/2 players
  PlayerSet half_b;          // last n/2 players

  // Analytic Shapley values under the first game.
  double shapley_half_a() const;  // 2/n
  double shapley_half_b() const;  // 2/(alpha^2 n)
  // Exact per-draw probability that the two games disagree on a uniform set.
  double uniform_disagreement_prob() const;
};

CoveragePairShape coverage_pair_shape(int n, double alpha);
GamePair make_coverage_pair(int n, double alpha);

// --- Descriptors ----------------------------------------------------------

// Structured-text descriptor {family, n, params}; round-trips every built-in
// family. Throws ConstructionError on unknown families or bad parameters.
Json game_descriptor(const Game& game);
Game game_from_descriptor(const Json& descriptor);

// Pair families: "curvature-pair" {kappa, eps_prime}, "coverage-pair"
// {alpha}, and "partition-vs-cardinality" {eps, part_index} (the hidden-block
// game against C(S) = |S|).
GamePair pair_from_descriptor(const Json& descriptor);

}  // namespace statcost
