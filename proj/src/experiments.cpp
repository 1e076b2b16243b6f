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

#include "statcost/experiments.hpp"

#include <atomic>
#include <cmath>
#include <cstdlib>
#include <thread>

#include "statcost/combinatorics.hpp"
#include "statcost/errors.hpp"
#include "statcost/estimators.hpp"
#include "statcost/structure.hpp"

namespace statcost {

namespace {

// Purpose keys for deriving independent streams inside one cell.
constexpr std::uint64_t kTrainKey = 0;
constexpr std::uint64_t kFreshKey = 1;
constexpr std::uint64_t kInstanceKey = 2;

int worker_count() {
  if (const char* env = std::getenv("STATCOST_WORKERS")) {
    int v = std::atoi(env);
    if (v >= 1) return v;
  }
  unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : static_cast<int>(hw);
}

double least_squares_slope(const std::vector<double>& x,
                           const std::vector<double>& y) {
  double n = static_cast<double>(x.size());
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t k = 0; k < x.size(); ++k) {
    sx += x[k];
    sy += y[k];
    sxx += x[k] * x[k];
    sxy += x[k] * y[k];
  }
  return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

// Exact per-draw Pr[C1(S) != C2(S)] under the uniform distribution;
// analytic for the built-in pair families, enumeration otherwise.
std::optional<double> exact_uniform_disagreement(const GamePair& pair) {
  std::string family = pair.first.descriptor().value("family", "");
  int n = pair.shared_n;
  if (family == "coverage-pair-first") {
    const Json& params = pair.first.descriptor().at("params");
    return coverage_pair_shape(n, params.at("alpha").get<double>())
        .uniform_disagreement_prob();
  }
  if (family == "partition-hard") {
    const Json& params = pair.first.descriptor().at("params");
    double eps = params.at("eps").get<double>();
    long long block = std::llround(eps * n);
    double cap = block * (std::llround(1.0 / eps) + 1) / (2.0 * std::llround(1.0 / eps));
    return binomial_half_upper_tail(static_cast<int>(block),
                                    static_cast<int>(std::floor(cap)) + 1);
  }
  if (family == "curvature-pair-first") {
    const Json& params = pair.first.descriptor().at("params");
    CurvaturePairShape shape = curvature_pair_shape(
        n, params.at("kappa").get<double>(), params.at("eps_prime").get<double>());
    double p = 0.0;
    for (int s = 0; s <= n; ++s) {
      double c1 = shape.first_value(s);
      if (s >= 1 && std::abs(c1 - shape.second_with_star(s)) > 1e-12) {
        p += std::ldexp(binomial(n - 1, s - 1), -n);
      }
      if (s <= n - 1 && std::abs(c1 - shape.second_without_star(s)) > 1e-12) {
        p += std::ldexp(binomial(n - 1, s), -n);
      }
    }
    return p;
  }
  if (n <= kExhaustiveLimit) {
    KahanSum p;
    for (PlayerSet s : all_subsets(n)) {
      if (pair.first.evaluate(s) != pair.second.evaluate(s)) {
        p.add(std::ldexp(1.0, -n));
      }
    }
    return p.value();
  }
  return std::nullopt;
}

std::optional<double> paper_disagreement_bound(const GamePair& pair) {
  std::string family = pair.first.descriptor().value("family", "");
  int n = pair.shared_n;
  if (family == "coverage-pair-first") return 2.0 * std::exp(-n / 16.0);
  if (family == "partition-hard") {
    double eps = pair.first.descriptor().at("params").at("eps").get<double>();
    return std::exp(-eps * eps * n / 6.0);
  }
  if (family == "curvature-pair-first") {
    double ep = pair.first.descriptor().at("params").at("eps_prime").get<double>();
    return 2.0 * std::exp(-ep * ep * n / 6.0);
  }
  return std::nullopt;
}

}  // namespace

ExperimentSpec spec_from_json(const Json& j) {
  ExperimentSpec spec;
  spec.name = j.at("name").get<std::string>();
  spec.kind = j.at("kind").get<std::string>();
  spec.payload = j.value("payload", Json::object());
  spec.base_seed = j.contains("base_seed")
                       ? j.at("base_seed").get<std::uint64_t>()
                       : hash_name(spec.name);
  return spec;
}

Json spec_to_json(const ExperimentSpec& spec) {
  return Json{{"name", spec.name},
              {"kind", spec.kind},
              {"payload", spec.payload},
              {"base_seed", spec.base_seed}};
}

std::string ExperimentReport::to_ndjson() const {
  std::string out = meta.dump();
  out += '\n';
  for (const auto& cell : cells) {
    out += cell.dump();
    out += '\n';
  }
  for (const auto& agg : aggregates) {
    out += agg.dump();
    out += '\n';
  }
  return out;
}

bool ExperimentReport::all_cells_ok() const {
  for (const auto& cell : cells) {
    if (cell.value("status", "ok") == "error") return false;
  }
  return true;
}

std::vector<Json> run_cells(int count, const std::function<Json(int)>& cell_fn) {
  std::vector<Json> out(count);
  std::atomic<int> next{0};
  int workers = std::min(worker_count(), std::max(count, 1));
  auto worker = [&] {
    for (int i = next.fetch_add(1); i < count; i = next.fetch_add(1)) {
      try {
        Json cell = cell_fn(i);
        cell["type"] = "cell";
        if (!cell.contains("status")) cell["status"] = "ok";
        out[i] = std::move(cell);
      } catch (const std::exception& e) {
        out[i] = Json{{"type", "cell"}, {"status", "error"}, {"error", e.what()}};
      }
    }
  };
  if (workers <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (int w = 0; w < workers; ++w) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }
  return out;
}

Json approximation_record(const std::vector<int>& players, const Vector& exact,
                          const Vector& estimate, double floor, double band_lo,
                          double band_hi) {
  Json entries = Json::array();
  double min_ratio = std::numeric_limits<double>::infinity();
  double max_ratio = -std::numeric_limits<double>::infinity();
  bool any_ratio = false;
  for (int i : players) {
    Json entry{{"player", i + 1},
               {"exact", exact[i]},
               {"estimate", estimate[i]},
               {"abs_error", std::abs(estimate[i] - exact[i])}};
    if (std::abs(exact[i]) >= floor) {
      double ratio = estimate[i] / exact[i];
      entry["ratio"] = ratio;
      entry["ratio_suppressed"] = false;
      entry["in_band"] = ratio >= band_lo && ratio <= band_hi;
      min_ratio = std::min(min_ratio, ratio);
      max_ratio = std::max(max_ratio, ratio);
      any_ratio = true;
    } else {
      entry["ratio"] = nullptr;
      entry["ratio_suppressed"] = true;
      entry["in_band"] = nullptr;
    }
    entries.push_back(std::move(entry));
  }
  Json record{{"players", entries},
              {"band", {band_lo, band_hi}},
              {"floor", floor}};
  record["min_ratio"] = any_ratio ? Json(min_ratio) : Json(nullptr);
  record["max_ratio"] = any_ratio ? Json(max_ratio) : Json(nullptr);
  return record;
}

namespace {

Json make_meta(const ExperimentSpec& spec) {
  return Json{{"type", "meta"},
              {"version", kArtifactVersion},
              {"spec", spec_to_json(spec)}};
}

}  // namespace

// --- core generalization ----------------------------------------------------

ExperimentReport run_core_generalization(const ExperimentSpec& spec) {
  const Json& p = spec.payload;
  Game game = game_from_descriptor(p.at("game"));
  int n = game.n();
  SetDistribution dist = p.contains("dist")
                             ? SetDistribution::from_descriptor(p.at("dist"))
                             : SetDistribution::uniform(n);
  bool bounded = p.value("mode", "lp") == "bounded";
  std::vector<long> m_grid = p.value("m", std::vector<long>{64, 256, 1024, 4096});
  int seeds = p.value("seeds", 50);
  double epsilon = p.value("epsilon", 0.0);
  double delta = p.value("delta", 0.1);
  int fresh_m = p.value("fresh_m", 10000);
  bool exhaustive = p.value("exhaustive", n <= kPairwiseLimit);
  double max_cost = p.value("max_cost", game.max_cost());
  double grand = game.grand_cost();

  ExperimentReport report;
  report.meta = make_meta(spec);
  // Precondition record: the approach assumes a nonempty true core.
  if (n <= kExhaustiveLimit) {
    ExactCoreResult core = exact_core(game);
    report.meta["exact_core_nonempty"] = core.nonempty;
  }
  try {
    // Reference sample counts: the dimension-based bound (n + log(1/D))/d^2
    // with its absolute constant taken as 1, and the spread-based bound
    // ((1-e)/(e d))^2 (128 t^2 log 2n + 8 t^2 log(2/D)); at desk scale the
    // latter usually dwarfs the calibrated m, which is reported alongside.
    double tau = spread(game);
    double spread_m =
        std::pow((1.0 - epsilon) / (std::max(epsilon, 0.1) * delta), 2.0) *
        (128.0 * tau * tau * std::log(2.0 * n) +
         8.0 * tau * tau * std::log(2.0 / delta));
    report.meta["theoretical"] = Json{
        {"dimension_bound_m_at_c1", (n + std::log(1.0 / delta)) / (delta * delta)},
        {"spread_bound_m", spread_m},
        {"spread", tau}};
  } catch (const Error&) {
    report.meta["theoretical"] = nullptr;
  }

  int cell_count = static_cast<int>(m_grid.size()) * seeds;
  report.cells = run_cells(cell_count, [&](int index) {
    int im = index / seeds;
    int is = index % seeds;
    long m = m_grid[im];
    Json cell{{"key", {{"m", m}, {"seed", is}}}};
    std::uint64_t cell_seed = derive_seed(spec.base_seed, index);
    cell["cell_seed"] = cell_seed;
    if (m == 0) throw EmptyInputError("m = 0 cell");
    Dataset ds = generate(game, dist, static_cast<int>(m),
                          derive_seed(cell_seed, kTrainKey));
    EmpiricalCoreResult trained =
        bounded ? empirical_core_bounded(ds, grand, max_cost)
                : empirical_core(ds, grand);
    cell["distinct"] = trained.distinct_constraints;
    if (trained.status != SolveStatus::kFeasible) {
      cell["status"] = trained.status == SolveStatus::kInfeasible
                           ? "infeasible"
                           : "numerical-failure";
      return cell;
    }
    cell["margin"] = trained.margin;
    const Vector& psi = trained.allocation->shares;
    cell["l1_norm"] = psi.lpNorm<1>();
    StabilityReport fresh = evaluate_stability_fresh(
        psi, game, dist, epsilon, fresh_m, derive_seed(cell_seed, kFreshKey));
    cell["fresh_rate"] = fresh.violation_rate;
    cell["fresh_worst"] = fresh.worst_violation;
    if (exhaustive) {
      StabilityReport exact = evaluate_stability_exhaustive(psi, game, dist, epsilon);
      cell["exhaustive_rate"] = exact.violation_rate;
    }
    return cell;
  });

  for (std::size_t im = 0; im < m_grid.size(); ++im) {
    double sum_fresh = 0, max_fresh = 0, sum_exh = 0;
    int ok = 0, with_exh = 0;
    for (int is = 0; is < seeds; ++is) {
      const Json& cell = report.cells[im * seeds + is];
      if (cell.value("status", "") != "ok") continue;
      ++ok;
      double rate = cell.value("fresh_rate", 0.0);
      sum_fresh += rate;
      max_fresh = std::max(max_fresh, rate);
      if (cell.contains("exhaustive_rate")) {
        sum_exh += cell["exhaustive_rate"].get<double>();
        ++with_exh;
      }
    }
    Json agg{{"type", "aggregate"},
             {"m", m_grid[im]},
             {"cells_ok", ok},
             {"mean_fresh_rate", ok ? sum_fresh / ok : 0.0},
             {"max_fresh_rate", max_fresh}};
    if (with_exh) agg["mean_exhaustive_rate"] = sum_exh / with_exh;
    report.aggregates.push_back(agg);
    report.plot_data.emplace_back(static_cast<double>(m_grid[im]),
                                  ok ? sum_fresh / ok : 0.0, "mean-fresh-rate");
  }

  if (p.value("calibrate", false)) {
    // Smallest power-of-two m whose mean fresh violation rate meets delta.
    int calib_seeds = p.value("calibrate_seeds", 10);
    long calibrated = -1;
    Json curve = Json::array();
    for (long m = 16; m <= 16384; m *= 2) {
      double sum = 0;
      int ok = 0;
      for (int is = 0; is < calib_seeds; ++is) {
        std::uint64_t s = derive_seed(spec.base_seed, 0xC0000000ULL + m * 64 + is);
        Dataset ds = generate(game, dist, static_cast<int>(m),
                              derive_seed(s, kTrainKey));
        EmpiricalCoreResult trained =
            bounded ? empirical_core_bounded(ds, grand, max_cost)
                    : empirical_core(ds, grand);
        if (trained.status != SolveStatus::kFeasible) continue;
        sum += evaluate_stability_fresh(trained.allocation->shares, game, dist,
                                        epsilon, fresh_m,
                                        derive_seed(s, kFreshKey))
                   .violation_rate;
        ++ok;
      }
      double mean = ok ? sum / ok : 1.0;
      curve.push_back(Json{{"m", m}, {"mean_fresh_rate", mean}});
      if (mean <= delta) {
        calibrated = m;
        break;
      }
    }
    report.aggregates.push_back(Json{{"type", "aggregate"},
                                     {"calibration",
                                      {{"target_delta", delta},
                                       {"calibrated_m", calibrated},
                                       {"curve", curve}}}});
  }
  return report;
}

// --- curvature ---------------------------------------------------------------

ExperimentReport run_curvature_experiment(const ExperimentSpec& spec) {
  const Json& p = spec.payload;
  int n = p.value("n", 64);
  double eps_prime = p.value("eps_prime", 0.25);
  std::vector<double> kappas = p.value("kappa", std::vector<double>{0.25, 0.5, 0.75});
  long m = p.value("m", 1000000L);
  int seeds = p.value("seeds", 20);
  double band_eps = p.value("band_epsilon", 0.05);

  ExperimentReport report;
  report.meta = make_meta(spec);

  std::vector<int> players = p.value("players", std::vector<int>{0});
  int cell_count = static_cast<int>(kappas.size()) * seeds;
  report.cells = run_cells(cell_count, [&](int index) {
    int ik = index / seeds;
    int is = index % seeds;
    double kappa = kappas[ik];
    CurvaturePairShape shape = curvature_pair_shape(n, kappa, eps_prime);
    GamePair pair = make_curvature_pair(n, kappa, eps_prime);
    std::uint64_t cell_seed = derive_seed(spec.base_seed, index);
    Dataset ds = generate(pair.first, SetDistribution::uniform(n),
                          static_cast<int>(m), derive_seed(cell_seed, kTrainKey));
    int star = *pair.distinguished_player;
    double exact_phi = shape.first_shapley();  // symmetric across players
    double floor = 1e-6 * pair.first.max_cost();
    Vector exact = Vector::Constant(n, exact_phi);
    Vector scaled_est = Vector::Zero(n), plain_est = Vector::Zero(n);
    for (int i : players) {
      plain_est[i] = marginal_estimate(ds, i);
      scaled_est[i] = curvature_scale_factor(kappa) * plain_est[i];
    }
    double plain = plain_est[star];
    double scaled = scaled_est[star];
    double lo = std::sqrt(1.0 - kappa) - band_eps;
    double hi = 1.0 / lo;
    double weak_lo = 1.0 - kappa - band_eps;
    Json cell{{"key", {{"kappa", kappa}, {"seed", is}}},
              {"cell_seed", cell_seed},
              {"exact_shapley", exact_phi},
              {"scaled_estimate", scaled},
              {"plain_estimate", plain},
              {"scaled_ratio", scaled / exact_phi},
              {"plain_ratio", plain / exact_phi},
              {"band", {lo, hi}},
              {"weak_band", {weak_lo, 1.0 / weak_lo}},
              {"scaled_in_band", scaled / exact_phi >= lo && scaled / exact_phi <= hi},
              {"plain_in_band", plain / exact_phi >= lo && plain / exact_phi <= hi},
              {"scaled", approximation_record(players, exact, scaled_est, floor,
                                              lo, hi)},
              {"plain", approximation_record(players, exact, plain_est, floor,
                                             weak_lo, 1.0 / weak_lo)}};
    return cell;
  });

  for (std::size_t ik = 0; ik < kappas.size(); ++ik) {
    int scaled_in = 0, plain_in = 0, ok = 0;
    for (int is = 0; is < seeds; ++is) {
      const Json& cell = report.cells[ik * seeds + is];
      if (cell.value("status", "") != "ok") continue;
      ++ok;
      scaled_in += cell.value("scaled_in_band", false) ? 1 : 0;
      plain_in += cell.value("plain_in_band", false) ? 1 : 0;
    }
    report.aggregates.push_back(Json{{"type", "aggregate"},
                                     {"kappa", kappas[ik]},
                                     {"cells_ok", ok},
                                     {"scaled_in_band", scaled_in},
                                     {"plain_in_band", plain_in}});
    report.plot_data.emplace_back(kappas[ik],
                                  ok ? static_cast<double>(scaled_in) / ok : 0.0,
                                  "scaled-in-band-frac");
  }
  return report;
}

// --- dsh ----------------------------------------------------------------------

ExperimentReport run_dsh_experiment(const ExperimentSpec& spec) {
  const Json& p = spec.payload;
  ExperimentReport report;
  report.meta = make_meta(spec);

  if (p.value("mode", "convergence") == "non-identification") {
    GamePair pair = pair_from_descriptor(p.at("pair"));
    int n = pair.shared_n;
    long m = p.value("m", 100000L);
    int seeds = p.value("seeds", 20);
    if (auto gap = exact_uniform_disagreement(pair)) {
      report.meta["exact_disagreement_prob"] = *gap;
    }
    report.cells = run_cells(seeds, [&](int is) {
      std::uint64_t cell_seed = derive_seed(spec.base_seed, is);
      Dataset ds1 = generate(pair.first, SetDistribution::uniform(n),
                             static_cast<int>(m), cell_seed);
      Dataset ds2 = generate(pair.second, SetDistribution::uniform(n),
                             static_cast<int>(m), cell_seed);
      double max_diff = 0;
      for (int i = 0; i < n; ++i) {
        double e1 = shapley_dsh_estimate_imputed(ds1, i).value;
        double e2 = shapley_dsh_estimate_imputed(ds2, i).value;
        max_diff = std::max(max_diff, std::abs(e1 - e2));
      }
      long disagreements = 0;
      for (int k = 0; k < static_cast<int>(m); ++k) {
        if (ds1.records[k].cost != ds2.records[k].cost) ++disagreements;
      }
      return Json{{"key", {{"seed", is}}},
                  {"estimate_max_diff", max_diff},
                  {"sample_disagreements", disagreements}};
    });
    if (pair.first.descriptor().value("family", "") == "coverage-pair-first") {
      CoveragePairShape shape = coverage_pair_shape(
          n, pair.first.descriptor().at("params").at("alpha").get<double>());
      report.meta["exact_gap"] =
          Json{{"first_half_a", shape.shapley_half_a()},
               {"first_half_b", shape.shapley_half_b()},
               {"ratio", shape.shapley_half_b() / shape.shapley_half_a()}};
    }
    return report;
  }

  Game game = game_from_descriptor(p.at("game"));
  int n = game.n();
  std::vector<long> m_grid =
      p.value("m", std::vector<long>{1000, 10000, 100000, 1000000});
  int seeds = p.value("seeds", 20);
  Vector phi = exact_shapley(game);
  double scale = phi.cwiseAbs().maxCoeff();
  report.meta["exact_shapley"] = std::vector<double>(phi.begin(), phi.end());

  int cell_count = static_cast<int>(m_grid.size()) * seeds;
  report.cells = run_cells(cell_count, [&](int index) {
    int im = index / seeds;
    int is = index % seeds;
    long m = m_grid[im];
    std::uint64_t cell_seed = derive_seed(spec.base_seed, index);
    Dataset ds = generate(game, SetDistribution::shapley(n),
                          static_cast<int>(m), cell_seed);
    Json cell{{"key", {{"m", m}, {"seed", is}}}, {"cell_seed", cell_seed}};
    double max_err = 0;
    try {
      for (int i = 0; i < n; ++i) {
        max_err = std::max(max_err, std::abs(shapley_dsh_estimate(ds, i) - phi[i]));
      }
    } catch (const InsufficientDataError& e) {
      cell["status"] = "skipped";
      cell["missing"] = e.what();
      return cell;
    }
    cell["max_err"] = max_err;
    cell["max_err_rel"] = max_err / scale;
    return cell;
  });

  std::vector<double> log_m, log_err;
  for (std::size_t im = 0; im < m_grid.size(); ++im) {
    double sum = 0;
    int ok = 0;
    for (int is = 0; is < seeds; ++is) {
      const Json& cell = report.cells[im * seeds + is];
      if (cell.value("status", "") != "ok") continue;
      sum += cell["max_err"].get<double>();
      ++ok;
    }
    double mean = ok ? sum / ok : 0.0;
    report.aggregates.push_back(Json{{"type", "aggregate"},
                                     {"m", m_grid[im]},
                                     {"cells_ok", ok},
                                     {"mean_max_err", mean}});
    report.plot_data.emplace_back(static_cast<double>(m_grid[im]), mean,
                                  "dsh-mean-max-err");
    if (ok && mean > 0) {
      log_m.push_back(std::log10(static_cast<double>(m_grid[im])));
      log_err.push_back(std::log10(mean));
    }
  }
  if (log_m.size() >= 2) {
    report.aggregates.push_back(Json{
        {"type", "aggregate"},
        {"loglog_slope", least_squares_slope(log_m, log_err)}});
  }
  return report;
}

// --- data-dependent Shapley audit ---------------------------------------------

namespace {

SetDistribution random_audit_dist(int n, int which, Rng& rng) {
  switch (which % 4) {
    case 0:
      return SetDistribution::uniform(n);
    case 1: {
      std::vector<double> marginals(n);
      for (double& q : marginals) q = 0.1 + 0.8 * rng.next_double();
      return SetDistribution::product(std::move(marginals), 0.05, 0.95);
    }
    case 2:
      return SetDistribution::shapley(n);
    default: {
      PlayerSet s1(rng.next_u64() & PlayerSet::full_set(n).bits());
      PlayerSet s2(rng.next_u64() & PlayerSet::full_set(n).bits());
      return SetDistribution::mixture(
          {{0.25, SetDistribution::point_mass(n, s1)},
           {0.25, SetDistribution::point_mass(n, s2)},
           {0.5, SetDistribution::uniform(n)}});
    }
  }
}

Game random_table_game(int n, double max_value, Rng& rng) {
  std::vector<double> values(std::size_t{1} << n, 0.0);
  for (std::size_t k = 1; k < values.size(); ++k) {
    values[k] = std::floor(rng.next_double() * (max_value + 1));
  }
  return make_table(n, values);
}

double expected_cost(const Game& game, const SetDistribution& dist) {
  KahanSum sum;
  for (PlayerSet s : all_subsets(game.n())) {
    double pr = dist.prob(s);
    if (pr != 0.0) sum.add(pr * game.evaluate(s));
  }
  return sum.value();
}

}  // namespace

ExperimentReport run_dd_shapley_audit(const ExperimentSpec& spec) {
  const Json& p = spec.payload;
  int instances = p.value("instances", 50);
  int n = p.value("n", 10);
  double max_value = p.value("max_value", 100.0);
  std::vector<long> m_grid = p.value("m", std::vector<long>{1000, 10000, 100000});
  int conv_seeds = p.value("conv_seeds", 10);

  ExperimentReport report;
  report.meta = make_meta(spec);

  // Part (a): axiom audit on random (game, distribution) instances.
  std::vector<Json> audit_cells = run_cells(instances, [&](int inst) {
    std::uint64_t cell_seed = derive_seed(spec.base_seed, derive_seed(kInstanceKey, inst));
    Rng rng(cell_seed);
    Game game = random_table_game(n, max_value, rng);
    SetDistribution d1 = random_audit_dist(n, inst, rng);
    SetDistribution d2 = random_audit_dist(n, inst + 1, rng);

    // Balance against the enumerated expectation.
    KahanSum total;
    for (int i = 0; i < n; ++i) total.add(exact_dd_shapley(game, d1, i));
    double balance_err = std::abs(total.value() - expected_cost(game, d1));

    // Additivity over a mixture.
    SetDistribution mixed = mix(0.3, d1, 0.7, d2);
    double add_err = 0;
    for (int i = 0; i < n; ++i) {
      double lhs = exact_dd_shapley(game, mixed, i);
      double rhs = 0.3 * exact_dd_shapley(game, d1, i) +
                   0.7 * exact_dd_shapley(game, d2, i);
      add_err = std::max(add_err, std::abs(lhs - rhs));
    }

    // Symmetry: support only sets containing both of {1,2} or neither.
    PlayerSet both = PlayerSet::of({0, 1});
    PlayerSet s_with = both.unite(PlayerSet(rng.next_u64() & PlayerSet::full_set(n).bits()));
    PlayerSet s_without =
        PlayerSet(rng.next_u64() & PlayerSet::full_set(n).bits()).intersect(both.complement(n));
    SetDistribution sym = SetDistribution::mixture(
        {{0.6, SetDistribution::point_mass(n, s_with)},
         {0.4, SetDistribution::point_mass(n, s_without)}});
    bool symmetry_exact =
        exact_dd_shapley(game, sym, 0) == exact_dd_shapley(game, sym, 1);

    // Zero element: player 0 out of the support.
    SetDistribution zero = SetDistribution::point_mass(n, s_without.without(0));
    bool zero_exact = exact_dd_shapley(game, zero, 0) == 0.0;

    return Json{{"key", {{"instance", inst}}},
                {"cell_seed", cell_seed},
                {"balance_err", balance_err},
                {"additivity_err", add_err},
                {"symmetry_exact", symmetry_exact},
                {"zero_exact", zero_exact}};
  });

  // Part (b): empirical estimator convergence under the uniform distribution.
  int conv_count = static_cast<int>(m_grid.size()) * conv_seeds;
  std::vector<Json> conv_cells = run_cells(conv_count, [&](int index) {
    int im = index / conv_seeds;
    int is = index % conv_seeds;
    long m = m_grid[im];
    Rng game_rng(derive_seed(spec.base_seed, 0xDD00 + is));
    Game game = random_table_game(n, max_value, game_rng);
    SetDistribution dist = SetDistribution::uniform(n);
    std::uint64_t cell_seed = derive_seed(spec.base_seed, 0xEE00 + index);
    Dataset ds = generate(game, dist, static_cast<int>(m), cell_seed);
    Vector emp = empirical_dd_shapley_all(ds);
    double max_err = 0;
    for (int i = 0; i < n; ++i) {
      max_err = std::max(max_err, std::abs(emp[i] - exact_dd_shapley(game, dist, i)));
    }
    KahanSum mean_cost;
    for (const auto& r : ds.records) mean_cost.add(r.cost);
    double balance_gap = std::abs(emp.sum() - mean_cost.value() / ds.m());
    return Json{{"key", {{"m", m}, {"seed", is}}},
                {"cell_seed", cell_seed},
                {"max_err", max_err},
                {"max_err_rel", max_err / game.max_cost()},
                {"empirical_balance_gap", balance_gap}};
  });

  report.cells = std::move(audit_cells);
  report.cells.insert(report.cells.end(), conv_cells.begin(), conv_cells.end());

  double worst_balance = 0, worst_add = 0;
  bool all_sym = true, all_zero = true;
  for (int inst = 0; inst < instances; ++inst) {
    const Json& cell = report.cells[inst];
    if (cell.value("status", "") != "ok") continue;
    worst_balance = std::max(worst_balance, cell["balance_err"].get<double>());
    worst_add = std::max(worst_add, cell["additivity_err"].get<double>());
    all_sym = all_sym && cell["symmetry_exact"].get<bool>();
    all_zero = all_zero && cell["zero_exact"].get<bool>();
  }
  report.aggregates.push_back(Json{{"type", "aggregate"},
                                   {"audit",
                                    {{"worst_balance_err", worst_balance},
                                     {"worst_additivity_err", worst_add},
                                     {"symmetry_all_exact", all_sym},
                                     {"zero_all_exact", all_zero}}}});
  for (std::size_t im = 0; im < m_grid.size(); ++im) {
    double sum = 0;
    int ok = 0;
    for (int is = 0; is < conv_seeds; ++is) {
      const Json& cell = report.cells[instances + im * conv_seeds + is];
      if (cell.value("status", "") != "ok") continue;
      sum += cell["max_err_rel"].get<double>();
      ++ok;
    }
    report.aggregates.push_back(Json{{"type", "aggregate"},
                                     {"m", m_grid[im]},
                                     {"mean_max_err_rel", ok ? sum / ok : 0.0}});
    report.plot_data.emplace_back(static_cast<double>(m_grid[im]),
                                  ok ? sum / ok : 0.0, "dd-mean-max-err-rel");
  }
  return report;
}

// --- indistinguishability -------------------------------------------------------

ExperimentReport run_indistinguishability(const ExperimentSpec& spec) {
  const Json& p = spec.payload;
  GamePair pair = pair_from_descriptor(p.at("pair"));
  int n = pair.shared_n;
  long m = p.value("m", 100000L);
  int seeds = p.value("seeds", 20);

  ExperimentReport report;
  report.meta = make_meta(spec);
  if (auto exact = exact_uniform_disagreement(pair)) {
    report.meta["exact_disagreement_prob"] = *exact;
  }
  if (auto bound = paper_disagreement_bound(pair)) {
    report.meta["paper_bound"] = *bound;
  }
  std::string family = pair.first.descriptor().value("family", "");
  if (family == "coverage-pair-first") {
    CoveragePairShape shape = coverage_pair_shape(
        n, pair.first.descriptor().at("params").at("alpha").get<double>());
    report.meta["shapley_gap"] =
        Json{{"first_half_a", shape.shapley_half_a()},
             {"first_half_b", shape.shapley_half_b()},
             {"ratio", shape.shapley_half_b() / shape.shapley_half_a()}};
  } else if (family == "curvature-pair-first") {
    const Json& params = pair.first.descriptor().at("params");
    CurvaturePairShape shape = curvature_pair_shape(
        n, params.at("kappa").get<double>(), params.at("eps_prime").get<double>());
    report.meta["shapley_gap"] =
        Json{{"star_first", shape.first_shapley()},
             {"star_second", shape.second_star_shapley()},
             {"ratio", shape.second_star_shapley() / shape.first_shapley()}};
  } else if (family == "partition-hard") {
    // The construction's eps and the stability-violation eps' play different
    // roles; report both to avoid conflating them.
    double eps = pair.first.descriptor().at("params").at("eps").get<double>();
    report.meta["eps_roles"] =
        Json{{"construction_eps", eps},
             {"guaranteed_violation_factor", (1.0 + eps) / (2.0 * (1.0 - eps))},
             {"derived_eps_prime", (1.0 + eps) / (2.0 * (1.0 - eps)) - 0.5}};
  }

  report.cells = run_cells(seeds, [&](int is) {
    std::uint64_t cell_seed = derive_seed(spec.base_seed, is);
    long disagreements = 0;
    for (long k = 0; k < m; ++k) {
      Rng rng(derive_seed(cell_seed, static_cast<std::uint64_t>(k)));
      PlayerSet s = SetDistribution::uniform(n).sample(rng);
      if (pair.first.evaluate(s) != pair.second.evaluate(s)) ++disagreements;
    }
    return Json{{"key", {{"seed", is}}},
                {"cell_seed", cell_seed},
                {"m", m},
                {"disagreements", disagreements},
                {"fraction", static_cast<double>(disagreements) / m}};
  });

  long total = 0, worst = 0;
  for (const auto& cell : report.cells) {
    if (cell.value("status", "") != "ok") continue;
    long d = cell["disagreements"].get<long>();
    total += d;
    worst = std::max(worst, d);
  }
  report.aggregates.push_back(Json{{"type", "aggregate"},
                                   {"total_disagreements", total},
                                   {"max_per_seed", worst},
                                   {"mean_fraction",
                                    static_cast<double>(total) / (m * seeds)}});
  return report;
}

// --- additive warm-up ------------------------------------------------------------

ExperimentReport run_additive_warmup(const ExperimentSpec& spec) {
  const Json& p = spec.payload;
  std::vector<double> weights =
      p.value("weights", std::vector<double>{1, 2, 3, 4, 5, 6, 7, 8});
  long m = p.value("m", 100000L);
  int seeds = p.value("seeds", 100);
  double epsilon = p.value("epsilon", 0.1);
  Game game = make_additive(weights);
  int n = game.n();
  double grand = game.grand_cost();

  ExperimentReport report;
  report.meta = make_meta(spec);

  report.cells = run_cells(seeds, [&](int is) {
    std::uint64_t cell_seed = derive_seed(spec.base_seed, is);
    Dataset ds = generate(game, SetDistribution::uniform(n), static_cast<int>(m),
                          cell_seed);
    Json v_ok = Json::array();
    bool all_v = true;
    for (int i = 0; i < n; ++i) {
      double v = marginal_estimate(ds, i);
      bool ok = v > (1.0 - epsilon) * weights[i] && v < (1.0 + epsilon) * weights[i];
      v_ok.push_back(ok);
      all_v = all_v && ok;
    }
    CostAllocation alloc = additive_core_allocation(ds, grand);
    bool core_ok = true;
    for (PlayerSet s : all_subsets(n)) {
      double share = 0;
      for (int q : s.members()) share += alloc.shares[q];
      if ((1.0 - epsilon) * share > game.evaluate(s) + kFeasibilityTol) {
        core_ok = false;
        break;
      }
    }
    return Json{{"key", {{"seed", is}}},
                {"cell_seed", cell_seed},
                {"marginals_in_band", v_ok},
                {"all_marginals_ok", all_v},
                {"approx_core_ok", core_ok},
                {"balance_gap", std::abs(alloc.shares.sum() - grand)}};
  });

  std::vector<int> per_player(n, 0);
  int core_count = 0, ok_cells = 0;
  for (const auto& cell : report.cells) {
    if (cell.value("status", "") != "ok") continue;
    ++ok_cells;
    const auto& flags = cell["marginals_in_band"];
    for (int i = 0; i < n; ++i) per_player[i] += flags[i].get<bool>() ? 1 : 0;
    core_count += cell["approx_core_ok"].get<bool>() ? 1 : 0;
  }
  report.aggregates.push_back(Json{{"type", "aggregate"},
                                   {"cells_ok", ok_cells},
                                   {"marginal_pass_per_player", per_player},
                                   {"approx_core_pass", core_count}});
  return report;
}

ExperimentReport run_experiment(const ExperimentSpec& spec) {
  if (spec.kind == "core-generalization") return run_core_generalization(spec);
  if (spec.kind == "curvature") return run_curvature_experiment(spec);
  if (spec.kind == "dsh") return run_dsh_experiment(spec);
  if (spec.kind == "dd-audit") return run_dd_shapley_audit(spec);
  if (spec.kind == "indistinguishability") return run_indistinguishability(spec);
  if (spec.kind == "additive-warmup") return run_additive_warmup(spec);
  throw Error("unknown experiment kind: " + spec.kind);
}

std::vector<ExperimentSpec> experiment_presets() {
  std::vector<ExperimentSpec> presets;
  {
    ExperimentSpec s;
    s.name = "additive-warmup";
    s.kind = "additive-warmup";
    s.payload = Json{{"weights", {1, 2, 3, 4, 5, 6, 7, 8}},
                     {"m", 100000},
                     {"seeds", 100},
                     {"epsilon", 0.1}};
    s.base_seed = hash_name(s.name);
    presets.push_back(s);
  }
  {
    ExperimentSpec s;
    s.name = "core-generalization-coverage-n10";
    s.kind = "core-generalization";
    s.payload = Json{
        {"game",
         {{"family", "coverage"},
          {"n", 10},
          {"params",
           {{"covers", Json::parse(R"([[0,1,2],[2,3],[3,4,5],[5,6],[6,7,8],
              [8,9],[9,10,11],[11,12],[12,13,14],[14,0]])")}}}}},
        {"m", {64, 256, 1024, 4096}},
        {"seeds", 50},
        {"delta", 0.1},
        {"calibrate", true}};
    s.base_seed = hash_name(s.name);
    presets.push_back(s);
  }
  {
    ExperimentSpec s;
    s.name = "curvature-band-n64";
    s.kind = "curvature";
    s.payload = Json{{"n", 64},
                     {"kappa", {0.25, 0.5, 0.75}},
                     {"eps_prime", 0.25},
                     {"m", 1000000},
                     {"seeds", 20}};
    s.base_seed = hash_name(s.name);
    presets.push_back(s);
  }
  {
    ExperimentSpec s;
    s.name = "dsh-random-n8";
    s.kind = "dsh";
    s.payload = Json{{"game",
                      {{"family", "coverage"},
                       {"n", 8},
                       {"params",
                        {{"covers", Json::parse(R"([[0,1,2,3],[3,4],[4,5,6],
                          [6,7,8,9],[9,10],[10,11,12],[12,13],[13,14,0]])")}}}}},
                     {"m", {1000, 10000, 100000, 1000000}},
                     {"seeds", 20}};
    s.base_seed = hash_name(s.name);
    presets.push_back(s);
  }
  {
    ExperimentSpec s;
    s.name = "dd-audit-n10";
    s.kind = "dd-audit";
    s.payload = Json{{"instances", 50}, {"n", 10}};
    s.base_seed = hash_name(s.name);
    presets.push_back(s);
  }
  {
    ExperimentSpec s;
    s.name = "coverage-indistinguishability-n32";
    s.kind = "indistinguishability";
    s.payload = Json{{"pair",
                      {{"family", "coverage-pair"},
                       {"n", 32},
                       {"params", {{"alpha", 0.5}}}}},
                     {"m", 5000},
                     {"seeds", 20}};
    s.base_seed = hash_name(s.name);
    presets.push_back(s);
  }
  return presets;
}

}  // namespace statcost
