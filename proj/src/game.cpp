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

#include "statcost/game.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <utility>

#include "statcost/errors.hpp"

namespace statcost {

namespace {

// Integrality check with snapping; the constructions require exact block and
// count parameters but callers pass doubles (e.g. eps = 0.25).
long long snap_integral(double x, const char* what) {
  double r = std::round(x);
  if (std::abs(x - r) > 1e-9) {
    throw ConstructionError(std::string(what) + " must be integral, got " +
                            std::to_string(x));
  }
  return static_cast<long long>(r);
}

struct CoverageTable {
  int word_count = 0;
  std::vector<std::uint64_t> masks;  // n * word_count words
  int universe_size = 0;
};

CoverageTable build_coverage_table(const std::vector<std::vector<int>>& covers) {
  std::map<int, int> index_of;
  for (const auto& cover : covers) {
    for (int e : cover) {
      if (e < 0) throw ConstructionError("coverage universe elements must be >= 0");
      index_of.emplace(e, 0);
    }
  }
  int next = 0;
  for (auto& [e, idx] : index_of) idx = next++;
  CoverageTable t;
  t.universe_size = next;
  t.word_count = std::max(1, (next + 63) / 64);
  t.masks.assign(covers.size() * t.word_count, 0);
  for (std::size_t p = 0; p < covers.size(); ++p) {
    for (int e : covers[p]) {
      int idx = index_of[e];
      t.masks[p * t.word_count + idx / 64] |= std::uint64_t{1} << (idx % 64);
    }
  }
  return t;
}

std::function<double(PlayerSet)> coverage_eval(CoverageTable t) {
  return [t = std::move(t)](PlayerSet s) {
    double covered = 0;
    if (t.word_count == 1) {
      std::uint64_t acc = 0;
      for (int p : s.members()) acc |= t.masks[p];
      covered = std::popcount(acc);
    } else {
      std::vector<std::uint64_t> acc(t.word_count, 0);
      for (int p : s.members())
        for (int w = 0; w < t.word_count; ++w)
          acc[w] |= t.masks[p * t.word_count + w];
      int bits = 0;
      for (auto word : acc) bits += std::popcount(word);
      covered = bits;
    }
    return covered;
  };
}

}  // namespace

Game::Game(int n, std::string label, Json descriptor, double max_cost,
           std::function<double(PlayerSet)> eval)
    : n_(n),
      label_(std::move(label)),
      descriptor_(std::move(descriptor)),
      max_cost_(max_cost),
      eval_(std::move(eval)) {
  if (n_ < 1 || n_ > 64) {
    throw ConstructionError("player count must be in [1, 64], got " +
                            std::to_string(n_));
  }
  if (!std::isfinite(max_cost_)) {
    throw ConstructionError("max cost must be finite");
  }
  if (eval_(PlayerSet::empty_set()) != 0.0) {
    throw ConstructionError("cost of the empty coalition must be 0");
  }
}

double Game::evaluate(PlayerSet s) const {
  if (!s.fits(n_)) {
    throw Error("coalition " + s.to_string() + " exceeds ground set of size " +
                std::to_string(n_));
  }
  return eval_(s);
}

Game make_additive(const std::vector<double>& weights) {
  int n = static_cast<int>(weights.size());
  double total = 0;
  for (double w : weights) {
    if (!(w >= 0) || !std::isfinite(w)) {
      throw ConstructionError("additive weights must be nonnegative");
    }
    total += w;
  }
  Json d{{"family", "additive"}, {"n", n}, {"params", {{"weights", weights}}}};
  return Game(n, "additive", d, total, [weights](PlayerSet s) {
    double sum = 0;
    for (int p : s.members()) sum += weights[p];
    return sum;
  });
}

Game make_cardinality(int n) {
  Json d{{"family", "cardinality"}, {"n", n}, {"params", Json::object()}};
  return Game(n, "cardinality", d, n, [](PlayerSet s) {
    return static_cast<double>(s.cardinality());
  });
}

Game make_coverage(const std::vector<std::vector<int>>& covers) {
  int n = static_cast<int>(covers.size());
  CoverageTable t = build_coverage_table(covers);
  Json d{{"family", "coverage"}, {"n", n}, {"params", {{"covers", covers}}}};
  return Game(n, "coverage", d, t.universe_size, coverage_eval(std::move(t)));
}

Game make_table(int n, const std::vector<double>& values) {
  if (n > 20) throw ConstructionError("table games limited to n <= 20");
  if (values.size() != (std::size_t{1} << n)) {
    throw ConstructionError("table game needs 2^n values");
  }
  if (values[0] != 0.0) throw ConstructionError("table game needs C(empty)=0");
  double max_cost = 0;
  for (double v : values) {
    if (!(v >= 0) || !std::isfinite(v)) {
      throw ConstructionError("table values must be nonnegative");
    }
    max_cost = std::max(max_cost, v);
  }
  Json d{{"family", "table"}, {"n", n}, {"params", {{"values", values}}}};
  return Game(n, "table", d, max_cost,
              [values](PlayerSet s) { return values[s.bits()]; });
}

PlayerSet partition_block(int n, double eps, int part_index) {
  long long inv = snap_integral(1.0 / eps, "1/eps");
  long long block = snap_integral(eps * n, "eps*n");
  if (inv < 1 || block < 1 || inv * block != n) {
    throw ConstructionError("partition blocks do not tile the ground set");
  }
  if (part_index < 1 || part_index > inv) {
    throw ConstructionError("part index out of range");
  }
  std::uint64_t bits = PlayerSet::full_set(static_cast<int>(block)).bits()
                       << ((part_index - 1) * block);
  return PlayerSet(bits);
}

Game make_partition_hard_game(int n, double eps, int part_index) {
  PlayerSet a = partition_block(n, eps, part_index);
  long long inv = snap_integral(1.0 / eps, "1/eps");
  long long block = snap_integral(eps * n, "eps*n");
  // Cap (1+eps)*eps*n/2 on the hidden block's contribution.
  double cap = static_cast<double>(block * (inv + 1)) / (2.0 * inv);
  Json d{{"family", "partition-hard"},
         {"n", n},
         {"params", {{"eps", eps}, {"part_index", part_index}}}};
  double max_cost = static_cast<double>(n - block) + cap;
  return Game(n, "partition-hard", d, max_cost, [a, cap](PlayerSet s) {
    double outside = s.cardinality() - s.intersect(a).cardinality();
    return outside + std::min(static_cast<double>(s.intersect(a).cardinality()), cap);
  });
}

// --- Curvature pair -------------------------------------------------------

CurvaturePairShape curvature_pair_shape(int n, double kappa, double eps_prime) {
  if (!(kappa >= 0.0) || kappa >= 1.0) {
    throw ConstructionError("curvature must be in [0, 1)");
  }
  if (eps_prime <= 0.0 || eps_prime >= 1.0) {
    throw ConstructionError("eps_prime must be in (0, 1)");
  }
  CurvaturePairShape shape;
  shape.n = n;
  shape.kappa = kappa;
  shape.eps_prime = eps_prime;
  shape.low = static_cast<int>(std::floor((1.0 - eps_prime) * n / 2.0));
  shape.high = static_cast<int>(std::ceil((1.0 + eps_prime) * n / 2.0));
  shape.sqrt_n = static_cast<int>(std::llround(std::sqrt(static_cast<double>(n))));
  if (shape.low < 2) {
    throw ConstructionError("construction needs L >= 2; increase n");
  }
  if (shape.high + shape.sqrt_n + 2 > n) {
    throw ConstructionError("construction needs n >= H + sqrt(n) + 2");
  }
  return shape;
}

double CurvaturePairShape::first_value(int s) const {
  if (s < low) return s;
  return low + (s - low) * (1.0 - kappa);
}

// Slopes of the second game's closed form: non-star players contribute
// a = (L-(1-k))/(L-1) per head below L, 1-k in the middle band, and
// b = 1-k - (k(1-k))/sqrt(n) past H + sqrt(n). The star contributes 1-k up
// front, decays linearly across (H, H+sqrt(n)], and settles at (1-k)^2.
double CurvaturePairShape::second_without_star(int s) const {
  double a = (low - (1.0 - kappa)) / (low - 1.0);
  double delta = kappa * (1.0 - kappa);
  double b = 1.0 - kappa - delta / sqrt_n;
  int edge = high + sqrt_n;
  if (s < low) return s * a;
  if (s <= edge) return low + (s - low) * (1.0 - kappa);
  return low + (edge - low) * (1.0 - kappa) + (s - edge) * b;
}

double CurvaturePairShape::second_with_star(int s) const {
  if (s == 0) return 0.0;
  double a = (low - (1.0 - kappa)) / (low - 1.0);
  double delta = kappa * (1.0 - kappa);
  double b = 1.0 - kappa - delta / sqrt_n;
  int edge = high + sqrt_n;
  if (s < low) return (1.0 - kappa) + (s - 1) * a;
  if (s <= high) return low + (s - low) * (1.0 - kappa);
  if (s <= edge) {
    // s-1 non-star members at the middle slope plus the star's decayed share.
    return low + (s - low) * (1.0 - kappa) - (s - 1 - high) * delta / sqrt_n;
  }
  return low + (edge - low) * (1.0 - kappa) + (1.0 - kappa) * (1.0 - kappa) +
         (s - 1 - edge) * b;
}

double CurvaturePairShape::first_marginal(int size) const {
  return first_value(size + 1) - first_value(size);
}

double CurvaturePairShape::second_star_marginal(int size) const {
  return second_with_star(size + 1) - second_without_star(size);
}

double CurvaturePairShape::second_other_marginal(int size, bool with_star) const {
  if (with_star) return second_with_star(size + 1) - second_with_star(size);
  return second_without_star(size + 1) - second_without_star(size);
}

std::vector<CurvaturePairShape::MarginalMismatch>
CurvaturePairShape::marginal_table_mismatches() const {
  double a = (low - (1.0 - kappa)) / (low - 1.0);
  double delta = kappa * (1.0 - kappa);
  double b = 1.0 - kappa - delta / sqrt_n;
  std::vector<MarginalMismatch> out;
  // Star player: table value vs. closed form, over all set sizes it can join.
  for (int size = 0; size <= n - 1; ++size) {
    double table;
    if (size <= high) {
      table = 1.0 - kappa;
    } else if (size <= high + sqrt_n) {
      table = 1.0 - kappa - (size - high) * delta / sqrt_n;
    } else {
      table = (1.0 - kappa) * (1.0 - kappa);
    }
    double cf = second_star_marginal(size);
    if (std::abs(cf - table) > 1e-12) out.push_back({size, false, cf, table});
  }
  // Non-star players, joining sets with and without the star.
  for (int star = 0; star <= 1; ++star) {
    for (int size = star ? 1 : 0; size <= n - 2 + star; ++size) {
      bool with_star = star == 1;
      double table;
      if (size < low - 1 || (size == low - 1 && with_star)) {
        table = a;
      } else if ((size == low - 1 && !with_star) ||
                 (size >= low && size <= high) ||
                 (size >= high && size <= high + sqrt_n && !with_star)) {
        table = 1.0 - kappa;
      } else {
        table = b;
      }
      double cf = second_other_marginal(size, with_star);
      if (std::abs(cf - table) > 1e-12) out.push_back({size, with_star, cf, table});
    }
  }
  return out;
}

double CurvaturePairShape::first_shapley() const {
  KahanSum sum;
  for (int j = 0; j <= n - 1; ++j) sum.add(first_marginal(j));
  return sum.value() / n;
}

double CurvaturePairShape::second_star_shapley() const {
  KahanSum sum;
  for (int j = 0; j <= n - 1; ++j) sum.add(second_star_marginal(j));
  return sum.value() / n;
}

double CurvaturePairShape::second_other_shapley() const {
  // Condition on whether the star is among the j earlier arrivals.
  KahanSum sum;
  for (int j = 0; j <= n - 1; ++j) {
    double p_star = static_cast<double>(j) / (n - 1);
    sum.add(p_star * second_other_marginal(j, true) +
            (1.0 - p_star) * second_other_marginal(j, false));
  }
  return sum.value() / n;
}

GamePair make_curvature_pair(int n, double kappa, double eps_prime) {
  CurvaturePairShape shape = curvature_pair_shape(n, kappa, eps_prime);
  Json params{{"kappa", kappa}, {"eps_prime", eps_prime}};
  Json d1{{"family", "curvature-pair-first"}, {"n", n}, {"params", params}};
  Json d2{{"family", "curvature-pair-second"}, {"n", n}, {"params", params}};
  Game first(n, "curvature-pair-first", d1, shape.first_value(n),
             [shape](PlayerSet s) { return shape.first_value(s.cardinality()); });
  Game second(n, "curvature-pair-second", d2, shape.second_with_star(n),
              [shape](PlayerSet s) {
                int size = s.cardinality();
                return s.contains(0) ? shape.second_with_star(size)
                                     : shape.second_without_star(size);
              });
  return GamePair{std::move(first), std::move(second), 0, n};
}

// --- Coverage pair --------------------------------------------------------

CoveragePairShape coverage_pair_shape(int n, double alpha) {
  if (n < 2 || n % 2 != 0) {
    throw ConstructionError("coverage pair needs even n");
  }
  if (!(alpha > 0.0) || alpha >= 1.0) {
    throw ConstructionError("alpha must be in (0, 1)");
  }
  CoveragePairShape shape;
  shape.n = n;
  shape.alpha = alpha;
  shape.b_count =
      static_cast<int>(snap_integral(1.0 / (alpha * alpha), "1/alpha^2"));
  shape.half_a = PlayerSet((std::uint64_t{1} << (n / 2)) - 1);
  shape.half_b = shape.half_a.complement(n);
  return shape;
}

double CoveragePairShape::shapley_half_a() const { return 2.0 / n; }

double CoveragePairShape::shapley_half_b() const {
  return 2.0 * b_count / n;
}

double CoveragePairShape::uniform_disagreement_prob() const {
  // Exactly one half unsampled (the empty set agrees).
  double p_half_empty = std::pow(0.5, n / 2.0);
  return 2.0 * (p_half_empty - p_half_empty * p_half_empty);
}

GamePair make_coverage_pair(int n, double alpha) {
  CoveragePairShape shape = coverage_pair_shape(n, alpha);
  // Universe element 0 is 'a'; 1..b_count are the b's.
  std::vector<int> b_cover(shape.b_count);
  for (int i = 0; i < shape.b_count; ++i) b_cover[i] = i + 1;
  std::vector<std::vector<int>> covers1(n), covers2(n);
  for (int p = 0; p < n; ++p) {
    bool in_a = shape.half_a.contains(p);
    covers1[p] = in_a ? std::vector<int>{0} : b_cover;
    covers2[p] = in_a ? b_cover : std::vector<int>{0};
  }
  Json params{{"alpha", alpha}};
  Json d1{{"family", "coverage-pair-first"}, {"n", n}, {"params", params}};
  Json d2{{"family", "coverage-pair-second"}, {"n", n}, {"params", params}};
  double max_cost = 1.0 + shape.b_count;
  Game first(n, "coverage-pair-first", d1, max_cost,
             coverage_eval(build_coverage_table(covers1)));
  Game second(n, "coverage-pair-second", d2, max_cost,
              coverage_eval(build_coverage_table(covers2)));
  return GamePair{std::move(first), std::move(second), std::nullopt, n};
}

// --- Descriptors ----------------------------------------------------------

Json game_descriptor(const Game& game) { return game.descriptor(); }

Game game_from_descriptor(const Json& d) {
  if (!d.is_object() || !d.contains("family") || !d.contains("n")) {
    throw ConstructionError("game descriptor needs {family, n, params}");
  }
  std::string family = d.at("family").get<std::string>();
  int n = d.at("n").get<int>();
  Json params = d.value("params", Json::object());
  if (family == "additive") {
    return make_additive(params.at("weights").get<std::vector<double>>());
  }
  if (family == "cardinality") {
    return make_cardinality(n);
  }
  if (family == "coverage") {
    return make_coverage(params.at("covers").get<std::vector<std::vector<int>>>());
  }
  if (family == "table") {
    return make_table(n, params.at("values").get<std::vector<double>>());
  }
  if (family == "partition-hard") {
    return make_partition_hard_game(n, params.at("eps").get<double>(),
                                    params.at("part_index").get<int>());
  }
  if (family == "curvature-pair-first" || family == "curvature-pair-second") {
    GamePair pair = make_curvature_pair(n, params.at("kappa").get<double>(),
                                        params.at("eps_prime").get<double>());
    return family == "curvature-pair-first" ? pair.first : pair.second;
  }
  if (family == "coverage-pair-first" || family == "coverage-pair-second") {
    GamePair pair = make_coverage_pair(n, params.at("alpha").get<double>());
    return family == "coverage-pair-first" ? pair.first : pair.second;
  }
  throw ConstructionError("unknown game family: " + family);
}

GamePair pair_from_descriptor(const Json& d) {
  if (!d.is_object() || !d.contains("family") || !d.contains("n")) {
    throw ConstructionError("pair descriptor needs {family, n, params}");
  }
  std::string family = d.at("family").get<std::string>();
  int n = d.at("n").get<int>();
  Json params = d.value("params", Json::object());
  if (family == "curvature-pair") {
    return make_curvature_pair(n, params.at("kappa").get<double>(),
                               params.at("eps_prime").get<double>());
  }
  if (family == "coverage-pair") {
    return make_coverage_pair(n, params.at("alpha").get<double>());
  }
  if (family == "partition-vs-cardinality") {
    Game hidden = make_partition_hard_game(n, params.at("eps").get<double>(),
                                           params.at("part_index").get<int>());
    return GamePair{std::move(hidden), make_cardinality(n), std::nullopt, n};
  }
  throw ConstructionError("unknown pair family: " + family);
}

}  // namespace statcost
