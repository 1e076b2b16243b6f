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
#include <iostream>

#include "statcost/errors.hpp"
#include "statcost/structure.hpp"

namespace statcost {

namespace {

void require_samples(const Dataset& ds) {
  if (ds.m() == 0) {
    throw EmptyInputError("dataset has no records");
  }
}

void check_player(const Dataset& ds, int player) {
  if (player < 0 || player >= ds.n) {
    throw Error("player index out of range");
  }
}

void warn_unless_kind(const Dataset& ds, const char* kind, const char* who) {
  if (!ds.dist.is_object() || ds.dist.value("kind", "") != kind) {
    std::cerr << "warning: " << who << " assumes the " << kind
              << " distribution; dataset metadata says '"
              << (ds.dist.is_object() ? ds.dist.value("kind", "?") : "?")
              << "'\n";
  }
}

// Kahan-compensated bucket average.
struct Bucket {
  KahanSum sum;
  long count = 0;
  void add(double x) {
    sum.add(x);
    ++count;
  }
  double avg() const { return sum.value() / count; }
};

}  // namespace

Json allocation_to_json(const CostAllocation& alloc) {
  Json j{{"n", alloc.shares.size()},
         {"shares", std::vector<double>(alloc.shares.begin(), alloc.shares.end())},
         {"method", alloc.method},
         {"params", alloc.params}};
  j["balanced_total"] =
      alloc.balanced_total ? Json(*alloc.balanced_total) : Json(nullptr);
  return j;
}

CostAllocation allocation_from_json(const Json& j) {
  CostAllocation alloc;
  auto shares = j.at("shares").get<std::vector<double>>();
  alloc.shares = Eigen::Map<const Vector>(shares.data(), shares.size());
  alloc.method = j.value("method", "unknown");
  alloc.params = j.value("params", Json::object());
  if (j.contains("balanced_total") && !j.at("balanced_total").is_null()) {
    alloc.balanced_total = j.at("balanced_total").get<double>();
  }
  return alloc;
}

double marginal_estimate(const Dataset& ds, int player) {
  require_samples(ds);
  check_player(ds, player);
  Bucket with, without;
  for (const auto& r : ds.records) {
    (r.subset.contains(player) ? with : without).add(r.cost);
  }
  if (with.count == 0) {
    throw InsufficientDataError("no samples contain player " +
                                std::to_string(player + 1));
  }
  if (without.count == 0) {
    throw InsufficientDataError("every sample contains player " +
                                std::to_string(player + 1));
  }
  return with.avg() - without.avg();
}

namespace {

DshImputedEstimate dsh_estimate_impl(const Dataset& ds, int player,
                                     bool impute) {
  require_samples(ds);
  check_player(ds, player);
  int n = ds.n;
  std::vector<Bucket> with(n + 1), without(n + 1);
  for (const auto& r : ds.records) {
    int size = r.subset.cardinality();
    (r.subset.contains(player) ? with[size] : without[size]).add(r.cost);
  }
  DshImputedEstimate out;
  std::string missing;
  KahanSum total;
  for (int j = 1; j <= n; ++j) {
    if (with[j].count == 0) {
      if (!missing.empty()) missing += ", ";
      missing += "(j=" + std::to_string(j) + ", with)";
      out.imputed.push_back({j, "with"});
    } else {
      total.add(with[j].avg());
    }
  }
  for (int j = 0; j <= n - 1; ++j) {
    if (without[j].count == 0) {
      if (!missing.empty()) missing += ", ";
      missing += "(j=" + std::to_string(j) + ", without)";
      out.imputed.push_back({j, "without"});
    } else {
      total.add(-without[j].avg());
    }
  }
  if (!impute && !missing.empty()) {
    throw InsufficientDataError("empty size buckets for player " +
                                std::to_string(player + 1) + ": " + missing);
  }
  // The bucket sums estimate n * phi_i: each side is n times an expectation
  // over a uniformly random size. Dividing by n makes the estimator unbiased
  // for the Shapley value (exact on additive games in the limit).
  out.value = total.value() / n;
  return out;
}

}  // namespace

double shapley_dsh_estimate(const Dataset& ds, int player) {
  warn_unless_kind(ds, "shapley", "shapley_dsh_estimate");
  return dsh_estimate_impl(ds, player, /*impute=*/false).value;
}

DshImputedEstimate shapley_dsh_estimate_imputed(const Dataset& ds, int player) {
  // Exploratory mode: callers feed off-distribution data on purpose, so the
  // metadata warning stays on the strict path only.
  return dsh_estimate_impl(ds, player, /*impute=*/true);
}

double curvature_scale_factor(double kappa) {
  if (!(kappa >= 0.0) || kappa >= 1.0) {
    throw Error("curvature must be in [0, 1)");
  }
  return (2.0 - kappa) / (2.0 * std::sqrt(1.0 - kappa));
}

double curvature_scaled_estimate(const Dataset& ds, int player, double kappa) {
  double factor = curvature_scale_factor(kappa);
  warn_unless_kind(ds, "uniform", "curvature_scaled_estimate");
  return factor * marginal_estimate(ds, player);
}

double empirical_dd_shapley(const Dataset& ds, int player) {
  require_samples(ds);
  check_player(ds, player);
  KahanSum sum;
  for (const auto& r : ds.records) {
    if (r.subset.contains(player)) {
      sum.add(r.cost / r.subset.cardinality());
    }
  }
  return sum.value() / ds.m();
}

Vector empirical_dd_shapley_all(const Dataset& ds) {
  require_samples(ds);
  std::vector<KahanSum> sums(ds.n);
  for (const auto& r : ds.records) {
    if (r.subset.is_empty()) continue;
    double share = r.cost / r.subset.cardinality();
    for (int p : r.subset.members()) sums[p].add(share);
  }
  Vector out(ds.n);
  for (int i = 0; i < ds.n; ++i) out[i] = sums[i].value() / ds.m();
  return out;
}

double exact_dd_shapley(const Game& game, const SetDistribution& dist,
                        int player) {
  if (game.n() > kExhaustiveLimit) {
    throw CapabilityError("exact_dd_shapley limited to n <= " +
                          std::to_string(kExhaustiveLimit));
  }
  if (game.n() != dist.n()) {
    throw Error("game and distribution ground sets differ");
  }
  if (player < 0 || player >= game.n()) {
    throw Error("player index out of range");
  }
  KahanSum sum;
  for (PlayerSet s : all_subsets(game.n())) {
    if (!s.contains(player)) continue;
    double p = dist.prob(s);
    if (p == 0.0) continue;
    sum.add(p * game.evaluate(s) / s.cardinality());
  }
  return sum.value();
}

CostAllocation additive_core_allocation(const Dataset& ds, double grand_cost) {
  require_samples(ds);
  Vector v(ds.n);
  for (int i = 0; i < ds.n; ++i) v[i] = marginal_estimate(ds, i);
  double denom = v.sum();
  if (!(denom > 0.0)) {
    throw DegenerateScalingError(
        "sum of marginal estimates is not positive (" + std::to_string(denom) +
        "); cannot scale to the balance property");
  }
  CostAllocation alloc;
  alloc.shares = v * (grand_cost / denom);
  alloc.method = "additive-core";
  alloc.params = Json{{"m", ds.m()}, {"grand_cost", grand_cost}};
  alloc.balanced_total = grand_cost;
  return alloc;
}

}  // namespace statcost
