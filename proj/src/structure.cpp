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

#include "statcost/structure.hpp"

#include <cmath>
#include <limits>
#include <vector>

#include "statcost/errors.hpp"

namespace statcost {

namespace {

constexpr double kStructureTol = 1e-9;

void require_limit(const Game& game, int limit, const char* what) {
  if (game.n() > limit) {
    throw CapabilityError(std::string(what) + " is exhaustive and limited to n <= " +
                          std::to_string(limit) + "; got n = " +
                          std::to_string(game.n()));
  }
}

}  // namespace

StructureReport check_structure(const Game& game) {
  require_limit(game, kPairwiseLimit, "check_structure");
  int n = game.n();
  StructureReport report;
  report.monotone = true;
  report.submodular = true;
  // Cache values; 2^n doubles at n <= 16.
  std::vector<double> value(std::size_t{1} << n);
  for (PlayerSet s : all_subsets(n)) value[s.bits()] = game.evaluate(s);
  auto marginal = [&](PlayerSet s, int i) {
    return value[s.with(i).bits()] - value[s.bits()];
  };
  for (PlayerSet s : all_subsets(n)) {
    for (int i = 0; i < n; ++i) {
      if (s.contains(i)) continue;
      double m_s = marginal(s, i);
      if (report.monotone && m_s < -kStructureTol) {
        report.monotone = false;
        if (!report.witness) {
          report.witness = StructureWitness{s, s.with(i), i, "monotonicity"};
        }
      }
      if (!report.submodular) continue;
      for (int j = 0; j < n; ++j) {
        if (j == i || s.contains(j)) continue;
        if (m_s < marginal(s.with(j), i) - kStructureTol) {
          report.submodular = false;
          if (!report.witness) {
            report.witness = StructureWitness{s, s.with(j), i, "submodularity"};
          }
          break;
        }
      }
    }
    if (!report.monotone && !report.submodular) break;
  }
  return report;
}

double curvature(const Game& game, bool verify) {
  if (verify) {
    StructureReport report = check_structure(game);
    if (!report.monotone || !report.submodular) {
      throw Error("curvature is defined for monotone submodular games; " +
                  std::string(report.monotone ? "submodularity" : "monotonicity") +
                  " fails at " + report.witness->subset.to_string());
    }
  }
  int n = game.n();
  PlayerSet full = PlayerSet::full_set(n);
  double min_ratio = std::numeric_limits<double>::infinity();
  for (int i = 0; i < n; ++i) {
    double singleton = game.evaluate(PlayerSet::singleton(i));
    if (singleton == 0.0) {
      throw UndefinedCurvatureError("curvature undefined: C({" +
                                    std::to_string(i + 1) + "}) = 0");
    }
    double top = game.evaluate(full) - game.evaluate(full.without(i));
    min_ratio = std::min(min_ratio, top / singleton);
  }
  return 1.0 - min_ratio;
}

double spread(const Game& game) {
  require_limit(game, kExhaustiveLimit, "spread");
  double max_cost = 0.0;
  double min_cost = std::numeric_limits<double>::infinity();
  for (PlayerSet s : all_subsets(game.n())) {
    double c = game.evaluate(s);
    max_cost = std::max(max_cost, c);
    if (!s.is_empty()) min_cost = std::min(min_cost, c);
  }
  if (min_cost <= 0.0) {
    throw InfiniteSpreadError("spread undefined: some nonempty coalition has zero cost");
  }
  return max_cost / min_cost;
}

}  // namespace statcost
