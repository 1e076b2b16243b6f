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

#include "statcost/exact_oracles.hpp"

#include "statcost/combinatorics.hpp"
#include "statcost/errors.hpp"

namespace statcost {

namespace {

void require_exhaustive(const Game& game, const char* what) {
  if (game.n() > kExhaustiveLimit) {
    throw CapabilityError(std::string(what) + " is exhaustive and limited to n <= " +
                          std::to_string(kExhaustiveLimit) + "; got n = " +
                          std::to_string(game.n()));
  }
  if (game.n() < 1) throw Error("empty ground set");
}

void check_player(const Game& game, int player) {
  if (player < 0 || player >= game.n()) {
    throw Error("player index out of range");
  }
}

}  // namespace

double exact_shapley_subset(const Game& game, int player) {
  require_exhaustive(game, "exact_shapley_subset");
  check_player(game, player);
  int n = game.n();
  // w(s) = 1/(n * binom(n-1, s)); exact integers, converted once.
  std::vector<double> weight(n);
  for (int s = 0; s < n; ++s) {
    weight[s] = shapley_weight_exact(n, s).value();
  }
  KahanSum sum;
  for (PlayerSet s : all_subsets(n)) {
    if (s.contains(player)) continue;
    sum.add(weight[s.cardinality()] *
            (game.evaluate(s.with(player)) - game.evaluate(s)));
  }
  return sum.value();
}

MarginalProfile marginal_profile(const Game& game, int player) {
  require_exhaustive(game, "marginal_profile");
  check_player(game, player);
  int n = game.n();
  std::vector<KahanSum> sums(n);
  for (PlayerSet s : all_subsets(n)) {
    if (s.contains(player)) continue;
    sums[s.cardinality()].add(game.evaluate(s.with(player)) - game.evaluate(s));
  }
  MarginalProfile profile;
  profile.player = player;
  profile.by_size.resize(n);
  for (int j = 0; j < n; ++j) {
    profile.by_size[j] = sums[j].value() / binomial(n - 1, j);
  }
  return profile;
}

double exact_shapley_sizes(const Game& game, int player) {
  MarginalProfile profile = marginal_profile(game, player);
  KahanSum sum;
  for (double v : profile.by_size) sum.add(v);
  return sum.value() / game.n();
}

Vector exact_shapley(const Game& game) {
  Vector phi(game.n());
  for (int i = 0; i < game.n(); ++i) phi[i] = exact_shapley_subset(game, i);
  return phi;
}

double exact_expected_marginal(const Game& game, const SetDistribution& dist,
                               int player) {
  require_exhaustive(game, "exact_expected_marginal");
  check_player(game, player);
  if (game.n() != dist.n()) {
    throw Error("game and distribution ground sets differ");
  }
  KahanSum weighted;
  KahanSum mass;
  for (PlayerSet s : all_subsets(game.n())) {
    if (s.contains(player)) continue;
    double p = dist.prob(s);
    if (p == 0.0) continue;
    mass.add(p);
    weighted.add(p * (game.evaluate(s.with(player)) - game.evaluate(s)));
  }
  if (mass.value() <= 0.0) {
    throw UndefinedConditionalError(
        "expected marginal undefined: player " + std::to_string(player + 1) +
        " is in every positive-probability coalition");
  }
  return weighted.value() / mass.value();
}

}  // namespace statcost
