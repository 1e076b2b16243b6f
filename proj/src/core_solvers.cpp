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

#include "statcost/core_solvers.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include "statcost/errors.hpp"
#include "statcost/structure.hpp"

namespace statcost {

namespace {

Vector indicator(PlayerSet s, int n) {
  Vector v = Vector::Zero(n);
  for (int p : s.members()) v[p] = 1.0;
  return v;
}

double coalition_sum(const Vector& psi, PlayerSet s) {
  double sum = 0.0;
  for (int p : s.members()) sum += psi[p];
  return sum;
}

// Distinct nonempty sample sets, ascending by mask; duplicate masks keep the
// tightest (minimum) cost.
std::map<std::uint64_t, double> dedup_samples(const Dataset& ds) {
  std::map<std::uint64_t, double> distinct;
  for (const auto& r : ds.records) {
    if (r.subset.is_empty()) continue;  // 0 <= 0 carries no information
    auto [it, inserted] = distinct.emplace(r.subset.bits(), r.cost);
    if (!inserted) it->second = std::min(it->second, r.cost);
  }
  return distinct;
}

EmpiricalCoreResult train_core(const Dataset& ds, double grand_cost,
                               std::optional<double> norm_bound) {
  if (ds.m() == 0) throw EmptyInputError("dataset has no records");
  auto distinct = dedup_samples(ds);
  const int n = ds.n;

  // Max-margin over the sampled constraints by cutting planes: the optimum
  // activates only a few constraints, so the working LP stays small while the
  // margin is certified against every distinct sample each round. The
  // separation order (most violated, ties by ascending mask) is fixed, so the
  // result is deterministic.
  std::vector<std::pair<std::uint64_t, double>> working;
  EmpiricalCoreResult out;
  out.raw_m = ds.m();
  out.distinct_constraints = static_cast<int>(distinct.size());
  SolveResult solved;
  bool certified = false;
  for (std::size_t round = 0; round <= distinct.size() + 1; ++round) {
    FeasibilityProgram program;
    program.n_vars = n;
    program.equalities.push_back({Vector::Ones(n), grand_cost});
    for (const auto& [mask, cost] : working) {
      program.inequalities.push_back({indicator(PlayerSet(mask), n), cost});
    }
    program.norm_bound = norm_bound;
    solved = solve_feasibility(program);
    if (solved.status != SolveStatus::kFeasible) {
      out.status = solved.status;
      out.margin = solved.margin;
      return out;
    }
    double min_slack = std::numeric_limits<double>::infinity();
    const std::pair<const std::uint64_t, double>* worst = nullptr;
    for (const auto& entry : distinct) {
      double slack =
          entry.second - coalition_sum(solved.point, PlayerSet(entry.first));
      if (slack < min_slack - 1e-15) {
        min_slack = slack;
        worst = &entry;
      }
    }
    if (!worst || min_slack >= solved.margin - 1e-9) {
      certified = true;
      break;
    }
    working.emplace_back(worst->first, worst->second);
  }
  if (!certified) {
    out.status = SolveStatus::kNumericalFailure;
    return out;
  }

  out.status = SolveStatus::kFeasible;
  out.margin = solved.margin;
  CostAllocation alloc;
  alloc.shares = solved.point;
  alloc.method = norm_bound ? "empirical-core-bounded" : "empirical-core-lp";
  alloc.params = Json{{"m", ds.m()},
                      {"distinct_constraints", out.distinct_constraints},
                      {"grand_cost", grand_cost},
                      {"margin", solved.margin},
                      {"objective", "max-min-slack"}};
  if (norm_bound) alloc.params["norm_bound"] = *norm_bound;
  alloc.balanced_total = grand_cost;
  out.allocation = std::move(alloc);
  return out;
}

}  // namespace

EmpiricalCoreResult empirical_core(const Dataset& ds, double grand_cost) {
  return train_core(ds, grand_cost, std::nullopt);
}

EmpiricalCoreResult empirical_core_bounded(const Dataset& ds, double grand_cost,
                                           double max_abs_cost) {
  if (!(max_abs_cost > 0.0)) {
    throw Error("max_abs_cost must be positive");
  }
  return train_core(ds, grand_cost, 2.0 * max_abs_cost);
}

StabilityReport evaluate_stability_fresh(const Vector& psi, const Game& game,
                                         const SetDistribution& dist,
                                         double epsilon, int m_prime,
                                         std::uint64_t seed) {
  if (psi.size() != game.n()) throw Error("allocation length != n");
  if (m_prime < 1) throw Error("fresh evaluation needs m' >= 1");
  StabilityReport report;
  report.epsilon = epsilon;
  report.eval_mode = "fresh-samples";
  report.fresh_m = m_prime;
  report.fresh_seed = seed;
  long violations = 0;
  double worst = -std::numeric_limits<double>::infinity();
  for (int k = 0; k < m_prime; ++k) {
    Rng rng(derive_seed(seed, static_cast<std::uint64_t>(k)));
    PlayerSet s = dist.sample(rng);
    double gap = (1.0 - epsilon) * coalition_sum(psi, s) - game.evaluate(s);
    worst = std::max(worst, gap);
    if (gap > kFeasibilityTol) ++violations;
  }
  report.violation_rate = static_cast<double>(violations) / m_prime;
  report.worst_violation = worst;
  return report;
}

StabilityReport evaluate_stability_exhaustive(const Vector& psi,
                                              const Game& game,
                                              const SetDistribution& dist,
                                              double epsilon) {
  if (psi.size() != game.n()) throw Error("allocation length != n");
  if (game.n() > kExhaustiveLimit) {
    throw CapabilityError("exhaustive stability limited to n <= " +
                          std::to_string(kExhaustiveLimit));
  }
  if (game.n() != dist.n()) throw Error("game and distribution ground sets differ");
  StabilityReport report;
  report.epsilon = epsilon;
  report.eval_mode = "exhaustive";
  KahanSum violating_mass;
  double worst = -std::numeric_limits<double>::infinity();
  for (PlayerSet s : all_subsets(game.n())) {
    double p = dist.prob(s);
    if (p == 0.0) continue;
    double gap = (1.0 - epsilon) * coalition_sum(psi, s) - game.evaluate(s);
    worst = std::max(worst, gap);
    if (gap > kFeasibilityTol) violating_mass.add(p);
  }
  report.violation_rate = violating_mass.value();
  report.worst_violation = worst;
  return report;
}

namespace {

// Cutting-plane loop shared by the exact-core oracles: keep a small working
// LP, scan all 2^n - 1 coalition constraints for the most violated one, stop
// once every coalition has slack >= the working solve's reported slack target
// (the achieved margin for the max-margin oracle, 0 for fixed objectives).
template <typename BuildAndSolve>
std::optional<Vector> cut_until_certified(const Game& game,
                                          BuildAndSolve&& solve_working) {
  if (game.n() > kExhaustiveLimit) {
    throw CapabilityError("exact core limited to n <= " +
                          std::to_string(kExhaustiveLimit));
  }
  const int n = game.n();
  std::vector<std::pair<PlayerSet, double>> working;
  working.reserve(n + 8);
  for (int i = 0; i < n; ++i) {
    PlayerSet s = PlayerSet::singleton(i);
    working.emplace_back(s, game.evaluate(s));
  }
  const long long max_rounds = (1LL << n) + 8;
  for (long long round = 0; round < max_rounds; ++round) {
    std::optional<std::pair<Vector, double>> solved = solve_working(working);
    if (!solved) return std::nullopt;  // working subset already infeasible
    const Vector& psi = solved->first;
    double slack_target = solved->second;
    // Separation: most violated coalition under ascending mask order.
    double min_slack = std::numeric_limits<double>::infinity();
    PlayerSet argmin;
    for (PlayerSet s : all_subsets(n)) {
      if (s.is_empty()) continue;
      double slack = game.evaluate(s) - coalition_sum(psi, s);
      if (slack < min_slack - 1e-15) {
        min_slack = slack;
        argmin = s;
      }
    }
    if (min_slack >= slack_target - 1e-9) {
      return psi;  // certified over every coalition
    }
    working.emplace_back(argmin, game.evaluate(argmin));
  }
  throw Error("exact core cutting loop failed to converge");
}

}  // namespace

ExactCoreResult exact_core(const Game& game) {
  const int n = game.n();
  double grand = game.grand_cost();
  double final_margin = 0.0;
  auto solve_working =
      [&](const std::vector<std::pair<PlayerSet, double>>& working)
      -> std::optional<std::pair<Vector, double>> {
    FeasibilityProgram program;
    program.n_vars = n;
    program.equalities.push_back({Vector::Ones(n), grand});
    for (const auto& [s, cost] : working) {
      program.inequalities.push_back({indicator(s, n), cost});
    }
    SolveResult solved = solve_feasibility(program);
    if (solved.status == SolveStatus::kNumericalFailure) {
      throw Error("numerical failure in exact core solve");
    }
    if (solved.status == SolveStatus::kInfeasible) return std::nullopt;
    final_margin = solved.margin;
    return std::make_pair(solved.point, solved.margin);
  };
  ExactCoreResult result;
  std::optional<Vector> point = cut_until_certified(game, solve_working);
  if (!point) {
    result.nonempty = false;
    return result;
  }
  result.nonempty = true;
  result.point = std::move(point);
  result.margin = final_margin;
  return result;
}

std::optional<Vector> exact_core_max_l1(const Game& game) {
  const int n = game.n();
  double grand = game.grand_cost();
  // Structural box sum(u) <= 4*max_cost + 1 keeps the LP bounded; any core
  // point has l1 norm at most 2*max|C(S)|, so the box never binds.
  double box = 4.0 * game.max_cost() + 1.0;
  auto solve_working =
      [&](const std::vector<std::pair<PlayerSet, double>>& working)
      -> std::optional<std::pair<Vector, double>> {
    LpProblem lp;
    lp.n_vars = 2 * n;  // psi then u
    lp.objective = Vector::Zero(2 * n);
    lp.objective.tail(n).setOnes();
    lp.equalities.push_back(
        {(Vector(2 * n) << Vector::Ones(n), Vector::Zero(n)).finished(), grand});
    for (const auto& [s, cost] : working) {
      Vector c = Vector::Zero(2 * n);
      c.head(n) = indicator(s, n);
      lp.inequalities.push_back({std::move(c), cost});
    }
    for (int i = 0; i < n; ++i) {
      Vector up = Vector::Zero(2 * n);
      up[i] = 1.0;
      up[n + i] = -1.0;
      lp.inequalities.push_back({std::move(up), 0.0});
      Vector down = Vector::Zero(2 * n);
      down[i] = -1.0;
      down[n + i] = -1.0;
      lp.inequalities.push_back({std::move(down), 0.0});
    }
    Vector sum_u = Vector::Zero(2 * n);
    sum_u.tail(n).setOnes();
    lp.inequalities.push_back({std::move(sum_u), box});
    LpOutcome outcome = solve_lp(lp);
    if (outcome.status == SolveStatus::kNumericalFailure || outcome.unbounded) {
      throw Error("numerical failure in max-l1 core solve");
    }
    if (outcome.status == SolveStatus::kInfeasible) return std::nullopt;
    // Fixed objective: certified once no coalition constraint is violated.
    return std::make_pair(Vector(outcome.x.head(n)), 0.0);
  };
  return cut_until_certified(game, solve_working);
}

}  // namespace statcost
