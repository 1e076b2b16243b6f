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

#include "statcost/estimators.hpp"

#include <cmath>
#include <numeric>

#include "doctest.h"
#include "statcost/errors.hpp"
#include "statcost/exact_oracles.hpp"

using namespace statcost;

namespace {

Dataset manual_dataset(int n, std::vector<SampleRecord> records) {
  Dataset ds;
  ds.n = n;
  ds.dist = Json{{"kind", "manual"}, {"n", n}};
  ds.records = std::move(records);
  return ds;
}

Game random_coverage(int n, Rng& rng, int universe = 24, double keep = 0.3) {
  std::vector<std::vector<int>> covers(n);
  for (int i = 0; i < n; ++i) {
    covers[i].push_back(i % universe);
    for (int e = 0; e < universe; ++e) {
      if (rng.next_double() < keep) covers[i].push_back(e);
    }
  }
  return make_coverage(covers);
}

}  // namespace

TEST_SUITE("estimators") {

TEST_CASE("marginal estimate on tiny datasets") {
  Dataset ds = manual_dataset(
      1, {{PlayerSet::of({0}), 5.0}, {PlayerSet::empty_set(), 0.0}});
  CHECK(marginal_estimate(ds, 0) == 5.0);

  Dataset all_with = manual_dataset(2, {{PlayerSet::of({0}), 1.0},
                                        {PlayerSet::of({0, 1}), 2.0}});
  CHECK_THROWS_AS(marginal_estimate(all_with, 0), InsufficientDataError);
  Dataset empty = manual_dataset(2, {});
  CHECK_THROWS_AS(marginal_estimate(empty, 0), EmptyInputError);
}

TEST_CASE("marginal estimate recovers additive weights") {
  Game g = make_additive({1, 2, 3});
  Dataset ds = generate(g, SetDistribution::uniform(3), 100000, 21);
  double v = marginal_estimate(ds, 1);
  CHECK(v > 1.9);
  CHECK(v < 2.1);
}

TEST_CASE("marginal estimate concentration over 200 seeded repetitions") {
  // Hoeffding-sized m for eps = 0.1, delta = 0.05 at b = sum(w) = 6:
  // each bucket average within eps*v/2 = 0.05 needs about
  // m/2 >= b^2 ln(4/delta) / (2*(0.05)^2) ~ 3.2e4, so m = 7e4 is ample.
  Game g = make_additive({1, 2, 3});
  int failures = 0;
  for (int rep = 0; rep < 200; ++rep) {
    Dataset ds = generate(g, SetDistribution::uniform(3), 70000, 1000 + rep);
    double v = marginal_estimate(ds, 0);
    if (std::abs(v - 1.0) > 0.1) ++failures;
  }
  CHECK(failures <= 10);  // delta = 0.05 of 200
}

TEST_CASE("product-law identity for the expected marginal") {
  // E_{S ~ D | i not in S}[C_S(i)] = E[C | i in S] - E[C | i not in S]
  // holds for product distributions; both sides by enumeration.
  Rng rng(55);
  for (int trial = 0; trial < 8; ++trial) {
    int n = 4 + static_cast<int>(rng.next_below(5));
    Game g = random_coverage(n, rng, 16, 0.35);
    std::vector<double> p(n);
    for (double& q : p) q = 0.15 + 0.7 * rng.next_double();
    SetDistribution dist = SetDistribution::product(p, 0.05, 0.95);
    for (int i = 0; i < n; ++i) {
      KahanSum with_mass, with_val, without_mass, without_val;
      for (PlayerSet s : all_subsets(n)) {
        double pr = dist.prob(s);
        if (s.contains(i)) {
          with_mass.add(pr);
          with_val.add(pr * g.evaluate(s));
        } else {
          without_mass.add(pr);
          without_val.add(pr * g.evaluate(s));
        }
      }
      double rhs = with_val.value() / with_mass.value() -
                   without_val.value() / without_mass.value();
      double lhs = exact_expected_marginal(g, dist, i);
      CHECK(lhs == doctest::Approx(rhs).epsilon(1e-10));
    }
  }
}

TEST_CASE("dsh estimator: one player") {
  Dataset ds = manual_dataset(
      1, {{PlayerSet::of({0}), 7.5}, {PlayerSet::empty_set(), 0.0}});
  ds.dist = SetDistribution::shapley(1).descriptor();
  CHECK(shapley_dsh_estimate(ds, 0) == 7.5);
}

TEST_CASE("dsh estimator on additive data") {
  Game g = make_additive({1, 2, 3});
  Dataset ds = generate(g, SetDistribution::shapley(3), 100000, 33);
  for (int i = 0; i < 3; ++i) {
    CHECK(std::abs(shapley_dsh_estimate(ds, i) - (i + 1.0)) <= 0.15);
  }
}

TEST_CASE("dsh estimator approaches the exact oracle") {
  Rng rng(66);
  Game g = random_coverage(8, rng, 20, 0.3);
  Vector phi = exact_shapley(g);
  double scale = phi.cwiseAbs().maxCoeff();
  Dataset ds = generate(g, SetDistribution::shapley(8), 400000, 44);
  for (int i = 0; i < 8; ++i) {
    CHECK(std::abs(shapley_dsh_estimate(ds, i) - phi[i]) <= 0.05 * scale);
  }
}

TEST_CASE("dsh missing buckets raise a detailed error; impute mode records them") {
  // Only size-2 sets containing player 1: most buckets stay empty.
  Dataset ds = manual_dataset(3, {{PlayerSet::of({0, 1}), 6.0},
                                  {PlayerSet::of({1, 2}), 4.0}});
  ds.dist = SetDistribution::shapley(3).descriptor();
  CHECK_THROWS_WITH_AS(shapley_dsh_estimate(ds, 0), doctest::Contains("(j=1, with)"),
                       InsufficientDataError);
  DshImputedEstimate imputed = shapley_dsh_estimate_imputed(ds, 0);
  CHECK(imputed.imputed.size() > 0);
  bool has_j1_with = false;
  for (const auto& b : imputed.imputed) {
    if (b.size == 1 && b.side == "with") has_j1_with = true;
  }
  CHECK(has_j1_with);
}

TEST_CASE("curvature scaling factor") {
  CHECK(curvature_scale_factor(0.0) == 1.0);
  CHECK(curvature_scale_factor(0.75) == doctest::Approx(1.25).epsilon(1e-15));
  CHECK_THROWS_AS(curvature_scale_factor(1.0), Error);

  Game g = make_additive({1, 2});
  Dataset ds = generate(g, SetDistribution::uniform(2), 5000, 3);
  CHECK(curvature_scaled_estimate(ds, 0, 0.0) == marginal_estimate(ds, 0));
}

TEST_CASE("curvature-scaled estimate lands in the square-root band") {
  int n = 64;
  double kappa = 0.5;
  CurvaturePairShape shape = curvature_pair_shape(n, kappa, 0.25);
  GamePair pair = make_curvature_pair(n, kappa, 0.25);
  Dataset ds = generate(pair.first, SetDistribution::uniform(n), 200000, 2025);
  double estimate = curvature_scaled_estimate(ds, 0, kappa);
  double exact = shape.first_shapley();
  double ratio = estimate / exact;
  double lo = std::sqrt(1.0 - kappa) - 0.05;
  CHECK(ratio >= lo);
  CHECK(ratio <= 1.0 / lo);
}

TEST_CASE("empirical data-dependent Shapley on tiny data") {
  Dataset ds = manual_dataset(3, {{PlayerSet::of({0, 1}), 6.0}});
  CHECK(empirical_dd_shapley(ds, 0) == 3.0);
  CHECK(empirical_dd_shapley(ds, 1) == 3.0);
  CHECK(empirical_dd_shapley(ds, 2) == 0.0);
  Dataset empty = manual_dataset(3, {});
  CHECK_THROWS_AS(empirical_dd_shapley(empty, 0), EmptyInputError);
  Vector all = empirical_dd_shapley_all(ds);
  CHECK(all[0] == 3.0);
  CHECK(all[2] == 0.0);
}

TEST_CASE("empirical dd-Shapley converges to the exact value") {
  Rng rng(77);
  Game g = random_coverage(8, rng, 20, 0.3);
  SetDistribution dist = SetDistribution::uniform(8);
  Dataset ds = generate(g, dist, 100000, 55);
  Vector emp = empirical_dd_shapley_all(ds);
  for (int i = 0; i < 8; ++i) {
    CHECK(std::abs(emp[i] - exact_dd_shapley(g, dist, i)) <=
          0.02 * g.max_cost());
  }
}

TEST_CASE("empirical balance identity") {
  // Floating check at 1e-12 relative, plus the same identity in exact
  // integer arithmetic (costs are integers, shares scaled by lcm(1..8)=840).
  Rng rng(78);
  Game g = random_coverage(8, rng, 20, 0.3);
  Dataset ds = generate(g, SetDistribution::uniform(8), 20000, 56);
  Vector emp = empirical_dd_shapley_all(ds);
  KahanSum mean_cost;
  for (const auto& r : ds.records) mean_cost.add(r.cost);
  double mean = mean_cost.value() / ds.m();
  CHECK(std::abs(emp.sum() - mean) <= 1e-12 * std::max(1.0, std::abs(mean)));

  const long long lcm = 840;
  std::vector<long long> scaled(8, 0);
  long long total = 0;
  for (const auto& r : ds.records) {
    auto cost = static_cast<long long>(r.cost);
    REQUIRE(r.cost == static_cast<double>(cost));
    total += cost * lcm;
    if (r.subset.is_empty()) continue;
    long long share = cost * (lcm / r.subset.cardinality());
    for (int p : r.subset.members()) scaled[p] += share;
  }
  CHECK(std::accumulate(scaled.begin(), scaled.end(), 0LL) == total);
}

TEST_CASE("exact data-dependent Shapley") {
  Game g = make_coverage({{0, 1}, {1, 2}, {3}});
  SetDistribution pm = SetDistribution::point_mass(3, PlayerSet::of({0, 1}));
  double c = g.evaluate(PlayerSet::of({0, 1}));
  CHECK(exact_dd_shapley(g, pm, 0) == c / 2);
  CHECK(exact_dd_shapley(g, pm, 1) == c / 2);
  CHECK(exact_dd_shapley(g, pm, 2) == 0.0);

  Game single = make_additive({2});
  CHECK(exact_dd_shapley(single, SetDistribution::uniform(1), 0) == 1.0);

  // Mixture linearity by enumeration on random instances.
  Rng rng(79);
  Game rg = random_coverage(8, rng, 16, 0.3);
  std::vector<double> p1(8), p2(8);
  for (int i = 0; i < 8; ++i) {
    p1[i] = 0.2 + 0.6 * rng.next_double();
    p2[i] = 0.2 + 0.6 * rng.next_double();
  }
  SetDistribution d1 = SetDistribution::product(p1, 0.05, 0.95);
  SetDistribution d2 = SetDistribution::product(p2, 0.05, 0.95);
  SetDistribution blend = mix(0.35, d1, 0.65, d2);
  for (int i = 0; i < 8; ++i) {
    double lhs = exact_dd_shapley(rg, blend, i);
    double rhs = 0.35 * exact_dd_shapley(rg, d1, i) +
                 0.65 * exact_dd_shapley(rg, d2, i);
    CHECK(lhs == doctest::Approx(rhs).epsilon(1e-12));
  }
}

TEST_CASE("additive core allocation") {
  // Balanced design (every subset once) makes v~_i = C(i) exactly for
  // additive games: the other players' halves cancel between the buckets.
  Game additive = make_additive({1, 2, 3});
  std::vector<SampleRecord> records;
  for (PlayerSet s : all_subsets(3)) {
    records.push_back({s, additive.evaluate(s)});
  }
  Dataset ds = manual_dataset(3, records);
  CostAllocation alloc = additive_core_allocation(ds, 6.0);
  CHECK(alloc.shares[0] == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(alloc.shares[1] == doctest::Approx(2.0).epsilon(1e-12));
  CHECK(alloc.shares[2] == doctest::Approx(3.0).epsilon(1e-12));
  CHECK(std::abs(alloc.shares.sum() - 6.0) <= 1e-12);
  CHECK(alloc.balanced_total == 6.0);

  // Sampled version: the (1-eps)-relaxed core property holds exhaustively.
  Game g = make_additive({1, 2, 3});
  Dataset big = generate(g, SetDistribution::uniform(3), 100000, 61);
  CostAllocation sampled = additive_core_allocation(big, g.grand_cost());
  CHECK(std::abs(sampled.shares.sum() - 6.0) <= 1e-12);
  for (PlayerSet s : all_subsets(3)) {
    double share = 0;
    for (int p : s.members()) share += sampled.shares[p];
    CHECK((1.0 - 0.1) * share <= g.evaluate(s) + 1e-9);
  }

  Dataset zeros = manual_dataset(
      2, {{PlayerSet::of({0}), 0.0}, {PlayerSet::of({1}), 0.0},
          {PlayerSet::empty_set(), 0.0}});
  CHECK_THROWS_AS(additive_core_allocation(zeros, 1.0), DegenerateScalingError);
}

TEST_CASE("allocations serialize and parse") {
  CostAllocation alloc;
  alloc.shares = Vector::Zero(3);
  alloc.shares << 1.5, -0.25, 2.0;
  alloc.method = "test";
  alloc.balanced_total = 3.25;
  CostAllocation back = allocation_from_json(allocation_to_json(alloc));
  CHECK(back.shares == alloc.shares);
  CHECK(back.method == alloc.method);
  CHECK(back.balanced_total == alloc.balanced_total);
}

}  // TEST_SUITE
