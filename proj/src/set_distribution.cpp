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

#include "statcost/set_distribution.hpp"

#include <cmath>

#include "statcost/combinatorics.hpp"
#include "statcost/errors.hpp"

namespace statcost {

namespace {

void check_n(int n) {
  if (n < 1 || n > 64) {
    throw ConstructionError("distribution ground set must have 1..64 players");
  }
}

}  // namespace

SetDistribution SetDistribution::uniform(int n) {
  check_n(n);
  return SetDistribution(DistKind::kUniform, n);
}

SetDistribution SetDistribution::product(std::vector<double> p, double lo,
                                         double hi) {
  int n = static_cast<int>(p.size());
  check_n(n);
  if (lo < 0) lo = 1.0 / (static_cast<double>(n) * n);
  if (hi < 0) hi = 1.0 - 1.0 / (static_cast<double>(n) * n);
  if (!(lo > 0.0) || !(hi < 1.0) || lo > hi) {
    throw ConstructionError("product bounds need 0 < lo <= hi < 1");
  }
  for (double pi : p) {
    if (!(pi >= lo) || !(pi <= hi)) {
      throw ConstructionError("product marginal " + std::to_string(pi) +
                              " outside bounds [" + std::to_string(lo) + ", " +
                              std::to_string(hi) + "]");
    }
  }
  SetDistribution d(DistKind::kProduct, n);
  d.marginals_ = std::move(p);
  d.lo_ = lo;
  d.hi_ = hi;
  return d;
}

SetDistribution SetDistribution::shapley(int n) {
  check_n(n);
  return SetDistribution(DistKind::kShapley, n);
}

SetDistribution SetDistribution::point_mass(int n, PlayerSet s) {
  check_n(n);
  if (!s.fits(n)) {
    throw ConstructionError("point mass set exceeds the ground set");
  }
  SetDistribution d(DistKind::kPointMass, n);
  d.point_ = s;
  return d;
}

SetDistribution SetDistribution::mixture(
    std::vector<std::pair<double, SetDistribution>> components) {
  if (components.empty()) {
    throw ConstructionError("mixture needs at least one component");
  }
  int n = components.front().second.n();
  double total = 0.0;
  for (const auto& [w, comp] : components) {
    if (w < 0) throw ConstructionError("mixture weights must be nonnegative");
    if (comp.n() != n) {
      throw ConstructionError("mixture components must share the ground set");
    }
    total += w;
  }
  if (std::abs(total - 1.0) > 1e-12) {
    throw ConstructionError("mixture weights must sum to 1 (got " +
                            std::to_string(total) + ")");
  }
  SetDistribution d(DistKind::kMixture, n);
  for (auto& [w, comp] : components) {
    d.weights_.push_back(w);
    d.components_.push_back(std::make_shared<SetDistribution>(std::move(comp)));
  }
  return d;
}

PlayerSet SetDistribution::sample(Rng& rng) const {
  switch (kind_) {
    case DistKind::kUniform:
      return PlayerSet(rng.next_u64() & PlayerSet::full_set(n_).bits());
    case DistKind::kProduct: {
      std::uint64_t bits = 0;
      for (int i = 0; i < n_; ++i) {
        if (rng.next_bernoulli(marginals_[i])) bits |= std::uint64_t{1} << i;
      }
      return PlayerSet(bits);
    }
    case DistKind::kShapley: {
      int j = static_cast<int>(rng.next_below(n_ + 1));
      // Floyd's uniform j-subset sampling.
      PlayerSet s;
      for (int t = n_ - j; t < n_; ++t) {
        int r = static_cast<int>(rng.next_below(t + 1));
        s = s.contains(r) ? s.with(t) : s.with(r);
      }
      return s;
    }
    case DistKind::kPointMass:
      return point_;
    case DistKind::kMixture: {
      double u = rng.next_double();
      double cum = 0.0;
      for (std::size_t k = 0; k < weights_.size(); ++k) {
        cum += weights_[k];
        if (u < cum || k + 1 == weights_.size()) {
          return components_[k]->sample(rng);
        }
      }
      return components_.back()->sample(rng);
    }
  }
  throw Error("unreachable distribution kind");
}

double SetDistribution::prob(PlayerSet s) const {
  if (!s.fits(n_)) return 0.0;
  switch (kind_) {
    case DistKind::kUniform:
      return std::ldexp(1.0, -n_);
    case DistKind::kProduct: {
      double p = 1.0;
      for (int i = 0; i < n_; ++i) {
        p *= s.contains(i) ? marginals_[i] : 1.0 - marginals_[i];
      }
      return p;
    }
    case DistKind::kShapley:
      return 1.0 / ((n_ + 1) * binomial(n_, s.cardinality()));
    case DistKind::kPointMass:
      return s == point_ ? 1.0 : 0.0;
    case DistKind::kMixture: {
      double p = 0.0;
      for (std::size_t k = 0; k < weights_.size(); ++k) {
        p += weights_[k] * components_[k]->prob(s);
      }
      return p;
    }
  }
  throw Error("unreachable distribution kind");
}

SetDistribution mix(double alpha, const SetDistribution& d1, double beta,
                    const SetDistribution& d2) {
  if (std::abs(alpha + beta - 1.0) > 1e-12) {
    throw ConstructionError("mixture weights must sum to 1");
  }
  return SetDistribution::mixture({{alpha, d1}, {beta, d2}});
}

Json SetDistribution::descriptor() const {
  switch (kind_) {
    case DistKind::kUniform:
      return Json{{"kind", "uniform"}, {"n", n_}};
    case DistKind::kProduct:
      return Json{{"kind", "product"},
                  {"n", n_},
                  {"p", marginals_},
                  {"lo", lo_},
                  {"hi", hi_}};
    case DistKind::kShapley:
      return Json{{"kind", "shapley"}, {"n", n_}};
    case DistKind::kPointMass:
      return Json{{"kind", "point-mass"}, {"n", n_}, {"set", to_hex(point_)}};
    case DistKind::kMixture: {
      Json comps = Json::array();
      for (std::size_t k = 0; k < weights_.size(); ++k) {
        comps.push_back(Json{{"weight", weights_[k]},
                             {"dist", components_[k]->descriptor()}});
      }
      return Json{{"kind", "mixture"}, {"n", n_}, {"components", comps}};
    }
  }
  throw Error("unreachable distribution kind");
}

SetDistribution SetDistribution::from_descriptor(const Json& d) {
  if (!d.is_object() || !d.contains("kind") || !d.contains("n")) {
    throw ConstructionError("distribution descriptor needs {kind, n}");
  }
  std::string kind = d.at("kind").get<std::string>();
  int n = d.at("n").get<int>();
  if (kind == "uniform") return uniform(n);
  if (kind == "product") {
    return product(d.at("p").get<std::vector<double>>(),
                   d.value("lo", -1.0), d.value("hi", -1.0));
  }
  if (kind == "shapley") return shapley(n);
  if (kind == "point-mass") {
    return point_mass(n, player_set_from_hex(d.at("set").get<std::string>()));
  }
  if (kind == "mixture") {
    std::vector<std::pair<double, SetDistribution>> comps;
    for (const auto& item : d.at("components")) {
      comps.emplace_back(item.at("weight").get<double>(),
                         from_descriptor(item.at("dist")));
    }
    return mixture(std::move(comps));
  }
  throw ConstructionError("unknown distribution kind: " + kind);
}

}  // namespace statcost
