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
#include <vector>

#include "statcost/dataset.hpp"
#include "statcost/types.hpp"

namespace statcost {

// A vector of cost shares plus the identity of whatever produced it. When
// the shares were constrained or normalized to sum to a stated total, that
// total is recorded in balanced_total.
struct CostAllocation {
  Vector shares;
  std::string method;
  Json params = Json::object();
  std::optional<double> balanced_total;
};

Json allocation_to_json(const CostAllocation& alloc);
CostAllocation allocation_from_json(const Json& j);

// Marginal-contribution estimator: average cost of samples containing the
// player minus the average of those not containing it. Throws
// InsufficientDataError naming the empty bucket.
double marginal_estimate(const Dataset& ds, int player);

// Shapley-distribution estimator: sums of per-size bucket averages,
// sum_{j=1..n} avg(S^j_i) - sum_{j=0..n-1} avg(S^j_{-i}). Unbiased for the
// Shapley value when the data comes from the Shapley distribution (checked
// against the dataset's metadata; a warning is printed otherwise). Missing
// buckets are a hard error listing every missing (size, side).
double shapley_dsh_estimate(const Dataset& ds, int player);

// Exploratory variant: missing buckets contribute zero and are reported
// instead of raising. side is "with" or "without".
struct DshImputedEstimate {
  double value = 0.0;
  struct MissingBucket {
    int size;
    std::string side;
  };
  std::vector<MissingBucket> imputed;
};
DshImputedEstimate shapley_dsh_estimate_imputed(const Dataset& ds, int player);

// Curvature-scaled estimator (2-kappa)/(2*sqrt(1-kappa)) * marginal_estimate;
// unbiased scaling for monotone submodular games with known curvature under
// the uniform distribution.
double curvature_scaled_estimate(const Dataset& ds, int player, double kappa);
double curvature_scale_factor(double kappa);

// Empirical data-dependent Shapley value: each record's cost split equally
// among its members, (1/m) * sum_{records with i} cost/|S|.
double empirical_dd_shapley(const Dataset& ds, int player);
Vector empirical_dd_shapley_all(const Dataset& ds);

// Exact data-dependent Shapley value by enumeration:
// sum over S containing i of Pr[S] * C(S)/|S|. Zero-probability coalitions
// are skipped, so exact symmetry/zero-element identities hold exactly.
double exact_dd_shapley(const Game& game, const SetDistribution& dist,
                        int player);

// Scaled additive core allocation psi_i = v~_i * C(N) / sum_j v~_j; the
// shares sum to grand_cost. Throws DegenerateScalingError when the
// denominator is not positive.
CostAllocation additive_core_allocation(const Dataset& ds, double grand_cost);

}  // namespace statcost
