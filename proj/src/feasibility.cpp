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

#include "statcost/feasibility.hpp"

#include <cmath>
#include <limits>

#include "statcost/errors.hpp"

namespace statcost {

namespace {

constexpr double kPivotTol = 1e-9;
constexpr double kReducedCostTol = 1e-9;
constexpr double kPhaseOneTol = 1e-7;

using Tableau = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic,
                              Eigen::RowMajor>;

enum class SimplexEnd { kOptimal, kUnbounded, kIterationCap };

// Deterministic simplex on an explicit tableau. Rows 0..m-1 are constraints
// with rhs in the last column; row m is the reduced-cost row. basis[r] is the
// column basic in row r. Columns with allowed[j] == 0 never enter.
//
// Pivot rule: Dantzig (most negative reduced cost, ties by smallest index)
// while the objective makes progress; after a run of degenerate pivots the
// rule switches to Bland's smallest-index rule until the objective strictly
// improves again, which excludes cycling. Both rules break row ties by the
// smallest basic variable index, so solves are bitwise reproducible.
SimplexEnd run_simplex(Tableau& t, std::vector<int>& basis,
                       const std::vector<char>& allowed, long max_iter,
                       int* iterations) {
  const int m = static_cast<int>(t.rows()) - 1;
  const int cols = static_cast<int>(t.cols()) - 1;
  constexpr int kStallLimit = 64;
  int stalled = 0;
  double last_objective = t(m, cols);
  while ((*iterations)++ < max_iter) {
    bool bland = stalled >= kStallLimit;
    int enter = -1;
    if (bland) {
      for (int j = 0; j < cols; ++j) {
        if (allowed[j] && t(m, j) < -kReducedCostTol) {
          enter = j;
          break;
        }
      }
    } else {
      double best = -kReducedCostTol;
      for (int j = 0; j < cols; ++j) {
        if (allowed[j] && t(m, j) < best) {
          best = t(m, j);
          enter = j;
        }
      }
    }
    if (enter < 0) return SimplexEnd::kOptimal;
    // Leaving: min ratio, ties by smallest basic variable index.
    int leave = -1;
    double best_ratio = std::numeric_limits<double>::infinity();
    for (int r = 0; r < m; ++r) {
      double a = t(r, enter);
      if (a <= kPivotTol) continue;
      double ratio = t(r, cols) / a;
      if (ratio < best_ratio - 1e-12 ||
          (ratio < best_ratio + 1e-12 &&
           (leave < 0 || basis[r] < basis[leave]))) {
        best_ratio = std::min(best_ratio, ratio);
        leave = r;
      }
    }
    if (leave < 0) return SimplexEnd::kUnbounded;
    double piv = t(leave, enter);
    t.row(leave) /= piv;
    for (int r = 0; r <= m; ++r) {
      if (r == leave) continue;
      double factor = t(r, enter);
      if (factor != 0.0) t.row(r) -= factor * t.row(leave);
    }
    basis[leave] = enter;
    // The objective cell holds the negated cost, so progress raises it.
    double objective = t(m, cols);
    if (objective > last_objective + 1e-12) {
      stalled = 0;
      last_objective = objective;
    } else {
      ++stalled;
    }
  }
  return SimplexEnd::kIterationCap;
}

}  // namespace

LpOutcome solve_lp(const LpProblem& p) {
  const int n = p.n_vars;
  const int me = static_cast<int>(p.equalities.size());
  const int mi = static_cast<int>(p.inequalities.size());
  const int m = me + mi;
  LpOutcome out;
  if (n <= 0) throw Error("LP needs at least one variable");
  if (p.objective.size() != n) throw Error("objective size mismatch");

  // Standard form: x = x+ - x-, slack per inequality, rows normalized to
  // rhs >= 0. Columns: [x+ (n) | x- (n) | slack (mi) | artificial (k)].
  const int n_split = 2 * n;
  Matrix a = Matrix::Zero(m, n_split + mi);
  Vector b = Vector::Zero(m);
  for (int r = 0; r < me; ++r) {
    const auto& con = p.equalities[r];
    if (con.coeffs.size() != n) throw Error("constraint size mismatch");
    a.row(r).head(n) = con.coeffs.transpose();
    a.row(r).segment(n, n) = -con.coeffs.transpose();
    b[r] = con.rhs;
  }
  for (int k = 0; k < mi; ++k) {
    const auto& con = p.inequalities[k];
    if (con.coeffs.size() != n) throw Error("constraint size mismatch");
    int r = me + k;
    a.row(r).head(n) = con.coeffs.transpose();
    a.row(r).segment(n, n) = -con.coeffs.transpose();
    a(r, n_split + k) = 1.0;
    b[r] = con.rhs;
  }
  std::vector<int> basis(m, -1);
  int art_count = 0;
  for (int r = 0; r < m; ++r) {
    if (b[r] < 0) {
      a.row(r) = -a.row(r);
      b[r] = -b[r];
    }
    // Inequality rows whose slack kept coefficient +1 start basic; everything
    // else gets a phase-1 artificial.
    if (r >= me && a(r, n_split + (r - me)) > 0.5) {
      basis[r] = n_split + (r - me);
    } else {
      ++art_count;
    }
  }

  const int total_cols = n_split + mi + art_count;
  Tableau t = Tableau::Zero(m + 1, total_cols + 1);
  t.topLeftCorner(m, n_split + mi) = a;
  t.col(total_cols).head(m) = b;
  int next_art = n_split + mi;
  for (int r = 0; r < m; ++r) {
    if (basis[r] < 0) {
      t(r, next_art) = 1.0;
      basis[r] = next_art++;
    }
  }

  std::vector<char> allowed(total_cols, 1);
  const long max_iter = 20000L + 50L * (m + total_cols);
  out.iterations = 0;

  if (art_count > 0) {
    // Phase 1: minimize the sum of artificials. Reduced costs start as
    // c1 - c1_B B^-1 A with c1 = 1 on artificials.
    for (int j = n_split + mi; j < total_cols; ++j) t(m, j) = 1.0;
    for (int r = 0; r < m; ++r) {
      if (basis[r] >= n_split + mi) t.row(m) -= t.row(r);
    }
    SimplexEnd end = run_simplex(t, basis, allowed, max_iter, &out.iterations);
    if (end == SimplexEnd::kIterationCap || !t.allFinite()) {
      out.status = SolveStatus::kNumericalFailure;
      return out;
    }
    double infeasibility = -t(m, total_cols);
    if (infeasibility > kPhaseOneTol) {
      out.status = SolveStatus::kInfeasible;
      return out;
    }
    // Drive leftover artificials out of the basis where possible; rows where
    // no structural pivot exists are redundant and keep a zero artificial.
    for (int r = 0; r < m; ++r) {
      if (basis[r] < n_split + mi) continue;
      for (int j = 0; j < n_split + mi; ++j) {
        if (std::abs(t(r, j)) > kPivotTol) {
          double piv = t(r, j);
          t.row(r) /= piv;
          for (int rr = 0; rr <= m; ++rr) {
            if (rr == r) continue;
            double factor = t(rr, j);
            if (factor != 0.0) t.row(rr) -= factor * t.row(r);
          }
          basis[r] = j;
          break;
        }
      }
    }
    for (int j = n_split + mi; j < total_cols; ++j) allowed[j] = 0;
  }

  // Phase 2: minimize -objective (i.e. maximize the objective).
  t.row(m).setZero();
  for (int j = 0; j < n; ++j) {
    t(m, j) = -p.objective[j];
    t(m, n + j) = p.objective[j];
  }
  for (int r = 0; r < m; ++r) {
    if (basis[r] < total_cols && t(m, basis[r]) != 0.0) {
      t.row(m) -= t(m, basis[r]) * t.row(r);
    }
  }
  SimplexEnd end = run_simplex(t, basis, allowed, max_iter, &out.iterations);
  if (end == SimplexEnd::kIterationCap || !t.allFinite()) {
    out.status = SolveStatus::kNumericalFailure;
    return out;
  }
  if (end == SimplexEnd::kUnbounded) {
    out.status = SolveStatus::kFeasible;
    out.unbounded = true;
    return out;
  }
  Vector split = Vector::Zero(total_cols);
  for (int r = 0; r < m; ++r) split[basis[r]] = t(r, total_cols);
  out.x = split.head(n) - split.segment(n, n);
  out.objective = p.objective.dot(out.x);
  out.status = SolveStatus::kFeasible;
  return out;
}

SolveResult solve_feasibility(const FeasibilityProgram& program) {
  const int n = program.n_vars;
  if (n <= 0) throw Error("feasibility program needs at least one variable");
  const bool bounded = program.norm_bound.has_value();
  // Variables: psi (n), margin t, and |psi_i| <= u_i auxiliaries when the
  // l1 bound is present.
  const int t_var = n;
  const int u0 = n + 1;
  const int total = bounded ? n + 1 + n : n + 1;

  LpProblem lp;
  lp.n_vars = total;
  lp.objective = Vector::Zero(total);
  lp.objective[t_var] = 1.0;  // maximize the minimum inequality slack

  double cap = 1.0;
  for (const auto& con : program.equalities) cap = std::max(cap, std::abs(con.rhs));
  for (const auto& con : program.inequalities) cap = std::max(cap, std::abs(con.rhs));
  if (bounded) cap = std::max(cap, std::abs(*program.norm_bound));
  cap = 1.0 + 2.0 * cap;  // only limits the reported margin, never feasibility

  auto lift = [&](const Vector& coeffs) {
    Vector c = Vector::Zero(total);
    c.head(n) = coeffs;
    return c;
  };
  for (const auto& con : program.equalities) {
    if (con.coeffs.size() != n) throw Error("constraint size mismatch");
    lp.equalities.push_back({lift(con.coeffs), con.rhs});
  }
  for (const auto& con : program.inequalities) {
    if (con.coeffs.size() != n) throw Error("constraint size mismatch");
    Vector c = lift(con.coeffs);
    c[t_var] = 1.0;  // coeffs.psi + t <= rhs
    lp.inequalities.push_back({std::move(c), con.rhs});
  }
  {
    Vector c = Vector::Zero(total);
    c[t_var] = 1.0;
    lp.inequalities.push_back({std::move(c), cap});
  }
  if (bounded) {
    for (int i = 0; i < n; ++i) {
      Vector up = Vector::Zero(total);
      up[i] = 1.0;
      up[u0 + i] = -1.0;
      lp.inequalities.push_back({std::move(up), 0.0});  // psi_i - u_i <= 0
      Vector down = Vector::Zero(total);
      down[i] = -1.0;
      down[u0 + i] = -1.0;
      lp.inequalities.push_back({std::move(down), 0.0});  // -psi_i - u_i <= 0
    }
    Vector sum_u = Vector::Zero(total);
    sum_u.segment(u0, n).setOnes();
    lp.inequalities.push_back({std::move(sum_u), *program.norm_bound});
  }

  LpOutcome outcome = solve_lp(lp);
  SolveResult result;
  result.iterations = outcome.iterations;
  if (outcome.status == SolveStatus::kNumericalFailure || outcome.unbounded) {
    result.status = SolveStatus::kNumericalFailure;
    return result;
  }
  if (outcome.status == SolveStatus::kInfeasible) {
    result.status = SolveStatus::kInfeasible;
    return result;
  }
  result.margin = outcome.x[t_var];
  if (result.margin < -kFeasibilityTol) {
    result.status = SolveStatus::kInfeasible;
    return result;
  }
  result.point = outcome.x.head(n);
  // Re-verify by direct substitution rather than trusting the tableau.
  for (const auto& con : program.equalities) {
    if (std::abs(con.coeffs.dot(result.point) - con.rhs) > kFeasibilityTol) {
      result.status = SolveStatus::kNumericalFailure;
      return result;
    }
  }
  for (const auto& con : program.inequalities) {
    if (con.coeffs.dot(result.point) > con.rhs + kFeasibilityTol) {
      result.status = SolveStatus::kNumericalFailure;
      return result;
    }
  }
  if (bounded && result.point.lpNorm<1>() > *program.norm_bound + kFeasibilityTol) {
    result.status = SolveStatus::kNumericalFailure;
    return result;
  }
  result.status = SolveStatus::kFeasible;
  return result;
}

}  // namespace statcost
