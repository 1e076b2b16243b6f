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
#include <optional>
#include <string>

#include "statcost/dataset.hpp"
#include "statcost/estimators.hpp"
#include "statcost/feasibility.hpp"

namespace statcost {

// Outcome of training an empirical core allocation. Infeasible is a valid
// result ("no empirical core"), possible when the true core is empty or the
// supplied grand cost is inconsistent with the samples.
struct EmpiricalCoreResult {
  SolveStatus status = SolveStatus::kNumericalFailure;
  std::optional<CostAllocation> allocation;
  double margin = 0.0;          // minimum slack over training constraints
  int raw_m = 0;                // records seen
  int distinct_constraints = 0; // after deduplication
};

// Balanced allocation satisfying the core inequality on every sample.
// Solvers see only (samples, C(N)) -- the signature carries no game, which is
// what enforces the statistical information model. Identical sample sets are
// deduplicated before the program is built. The returned point is
// phase-2-optimal for "maximize the minimum inequality slack".
EmpiricalCoreResult empirical_core(const Dataset& ds, double grand_cost);

// Same with the l1 bound ||psi||_1 <= 2 * max_abs_cost from the bounded-norm
// search; max_abs_cost is max_S |C(S)| or an upper estimate of it.
EmpiricalCoreResult empirical_core_bounded(const Dataset& ds, double grand_cost,
                                           double max_abs_cost);

struct StabilityReport {
  double epsilon = 0.0;
  double violation_rate = 0.0;  // probability mass (exhaustive) or fraction
  std::string eval_mode;        // "fresh-samples" or "exhaustive"
  int fresh_m = 0;
  std::uint64_t fresh_seed = 0;
  // max over evaluated sets of (1-eps) * psi(S) - C(S); negative when the
  // relaxed core property holds everywhere seen.
  double worst_violation = 0.0;
};

// Violation test (1-eps) * sum_{i in S} psi_i <= C(S), with tolerance
// kFeasibilityTol so exact-core points report a zero rate. Fresh mode draws
// m_prime new sets from per-index substreams of the seed; exhaustive mode
// reports the exact probability mass of violating sets (n <= limit).
StabilityReport evaluate_stability_fresh(const Vector& psi, const Game& game,
                                         const SetDistribution& dist,
                                         double epsilon, int m_prime,
                                         std::uint64_t seed);
StabilityReport evaluate_stability_exhaustive(const Vector& psi,
                                              const Game& game,
                                              const SetDistribution& dist,
                                              double epsilon);

inline StabilityReport evaluate_stability_fresh(const CostAllocation& alloc,
                                                const Game& game,
                                                const SetDistribution& dist,
                                                double epsilon, int m_prime,
                                                std::uint64_t seed) {
  return evaluate_stability_fresh(alloc.shares, game, dist, epsilon, m_prime,
                                  seed);
}
inline StabilityReport evaluate_stability_exhaustive(
    const CostAllocation& alloc, const Game& game, const SetDistribution& dist,
    double epsilon) {
  return evaluate_stability_exhaustive(alloc.shares, game, dist, epsilon);
}

struct ExactCoreResult {
  bool nonempty = false;
  std::optional<Vector> point;  // max-margin core point when nonempty
  double margin = 0.0;
};

// Exact-core oracle: feasibility over all 2^n - 1 coalition constraints plus
// balance, decided by cutting planes with an exhaustive separation scan (the
// working LP stays small while the certificate covers every coalition).
// Emptiness is certified by solver infeasibility. n <= kExhaustiveLimit.
ExactCoreResult exact_core(const Game& game);

// Vertex of the exact core maximizing ||psi||_1, used to stress the
// 2*max|C(S)| bound; nullopt when the core is empty.
std::optional<Vector> exact_core_max_l1(const Game& game);

}  // namespace statcost
