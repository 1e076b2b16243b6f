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

#include <memory>
#include <vector>

#include "json.hpp"
#include "statcost/player_set.hpp"
#include "statcost/rng.hpp"

namespace statcost {

using Json = nlohmann::json;

enum class DistKind { kUniform, kProduct, kShapley, kPointMass, kMixture };

// A sampling law over subsets of {0..n-1}. Every kind supports seeded
// sampling and exact closed-form probability evaluation. Distributions are
// immutable; sampling state lives entirely in the caller's Rng.
class SetDistribution {
 public:
  static SetDistribution uniform(int n);
  // Bounded product distribution: element i included independently with
  // probability p[i], validated against [lo, hi]. The defaults are 1/n^2 and
  // 1 - 1/n^2; pass explicit bounds to widen or tighten them.
  static SetDistribution product(std::vector<double> p, double lo = -1.0,
                                 double hi = -1.0);
  // Picks a size j uniformly from {0..n} (so the empty set has mass
  // 1/(n+1)), then a uniformly random subset of that size.
  static SetDistribution shapley(int n);
  static SetDistribution point_mass(int n, PlayerSet s);
  static SetDistribution mixture(
      std::vector<std::pair<double, SetDistribution>> components);

  DistKind kind() const { return kind_; }
  int n() const { return n_; }

  PlayerSet sample(Rng& rng) const;
  double prob(PlayerSet s) const;

  Json descriptor() const;
  static SetDistribution from_descriptor(const Json& descriptor);

 private:
  SetDistribution(DistKind kind, int n) : kind_(kind), n_(n) {}

  DistKind kind_;
  int n_;
  std::vector<double> marginals_;      // product
  double lo_ = 0.0, hi_ = 1.0;         // product bounds
  PlayerSet point_;                    // point mass
  std::vector<double> weights_;        // mixture
  std::vector<std::shared_ptr<const SetDistribution>> components_;
};

// Two-component mixture with prob(S) = alpha*prob1(S) + beta*prob2(S);
// requires alpha + beta = 1 within 1e-12 and matching ground sets.
SetDistribution mix(double alpha, const SetDistribution& d1, double beta,
                    const SetDistribution& d2);

}  // namespace statcost
