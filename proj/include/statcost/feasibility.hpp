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
#include <vector>

#include "statcost/types.hpp"

namespace statcost {

struct LinearConstraint {
  Vector coeffs;
  double rhs = 0.0;
};

// A linear feasibility system over free variables psi: equalities
// coeffs.psi = rhs, inequalities coeffs.psi <= rhs, and an optional l1-norm
// bound ||psi||_1 <= B encoded with auxiliary variables so the program stays
// linear.
struct FeasibilityProgram {
  int n_vars = 0;
  std::vector<LinearConstraint> equalities;
  std::vector<LinearConstraint> inequalities;
  std::optional<double> norm_bound;
};

enum class SolveStatus { kFeasible, kInfeasible, kNumericalFailure };

struct SolveResult {
  SolveStatus status = SolveStatus::kNumericalFailure;
  Vector point;       // psi, n_vars entries when feasible
  double margin = 0;  // achieved minimum inequality slack (capped)
  int iterations = 0;
};

// Feasibility tolerance: returned points satisfy equalities within 1e-8 and
// inequalities with slack >= -1e-8.
inline constexpr double kFeasibilityTol = 1e-8;

// Decides feasibility with a two-phase dense simplex under Bland's rule
// (deterministic, cycle-free). Among feasible points the solver returns the
// max-margin one: it maximizes the minimum slack over the inequality rows
// (capped so the phase-2 objective stays bounded); the norm-bound rows are
// structural and carry no margin. Infeasible and NumericalFailure (iteration
// cap, NaN) are distinguished.
SolveResult solve_feasibility(const FeasibilityProgram& program);

// General LP over free variables: maximize objective.x subject to the same
// constraint kinds. Used by the exact-core oracle and bound stress tests.
struct LpProblem {
  int n_vars = 0;
  Vector objective;
  std::vector<LinearConstraint> equalities;
  std::vector<LinearConstraint> inequalities;
};

struct LpOutcome {
  SolveStatus status = SolveStatus::kNumericalFailure;
  bool unbounded = false;
  Vector x;
  double objective = 0.0;
  int iterations = 0;
};

LpOutcome solve_lp(const LpProblem& problem);

}  // namespace statcost
