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

#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "statcost/core_solvers.hpp"
#include "statcost/errors.hpp"
#include "statcost/exact_oracles.hpp"
#include "statcost/experiments.hpp"

namespace {

using namespace statcost;

// Inline JSON or @path to a JSON file.
Json read_json_arg(const std::string& arg) {
  if (!arg.empty() && arg[0] == '@') {
    std::ifstream in(arg.substr(1));
    if (!in) throw IoError("cannot open '" + arg.substr(1) + "'");
    return Json::parse(in);
  }
  return Json::parse(arg);
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open '" + path + "' for writing");
  out << text;
}

void emit(const Json& record, const std::string& out_path) {
  if (out_path.empty()) {
    std::cout << record.dump() << "\n";
  } else {
    write_file(out_path, record.dump() + "\n");
  }
}

int run_generate(const std::string& game_arg, const std::string& dist_arg,
                 int m, std::uint64_t seed, const std::string& out_path) {
  Game game = game_from_descriptor(read_json_arg(game_arg));
  SetDistribution dist = SetDistribution::from_descriptor(read_json_arg(dist_arg));
  Dataset ds = generate(game, dist, m, seed);
  if (out_path.empty()) {
    std::cout << serialize(ds);
  } else {
    save(ds, out_path);
    std::cerr << "wrote " << ds.m() << " records to " << out_path << "\n";
  }
  return 0;
}

int run_estimate(const std::string& method, const std::string& in_path,
                 int player_1based, bool all_players, double kappa,
                 const std::string& out_path) {
  Dataset ds = load(in_path);
  std::vector<int> players;
  if (all_players) {
    for (int i = 0; i < ds.n; ++i) players.push_back(i);
  } else {
    if (player_1based < 1 || player_1based > ds.n) {
      throw Error("--player must be in 1.." + std::to_string(ds.n));
    }
    players.push_back(player_1based - 1);
  }
  std::string lines;
  for (int i : players) {
    Json record{{"i", i + 1}, {"method", method}, {"m", ds.m()}};
    Json diagnostics = Json::object();
    try {
      double estimate = 0;
      if (method == "marginal") {
        estimate = marginal_estimate(ds, i);
      } else if (method == "dsh") {
        estimate = shapley_dsh_estimate(ds, i);
      } else if (method == "curvature") {
        estimate = curvature_scaled_estimate(ds, i, kappa);
        diagnostics["kappa"] = kappa;
        diagnostics["scale_factor"] = curvature_scale_factor(kappa);
      } else if (method == "dd-empirical") {
        estimate = empirical_dd_shapley(ds, i);
      } else if (method == "dd-exact") {
        Game game = game_from_descriptor(ds.game);
        SetDistribution dist = SetDistribution::from_descriptor(ds.dist);
        estimate = exact_dd_shapley(game, dist, i);
        diagnostics["source"] = "dataset metadata";
      } else {
        throw Error("unknown method '" + method + "'");
      }
      record["estimate"] = estimate;
      record["status"] = "ok";
    } catch (const Error& e) {
      record["status"] = "error";
      record["error"] = e.what();
    }
    record["diagnostics"] = diagnostics;
    lines += record.dump() + "\n";
  }
  if (out_path.empty()) {
    std::cout << lines;
  } else {
    write_file(out_path, lines);
  }
  return 0;
}

int run_core(const std::string& mode, const std::string& in_path,
             double grand_cost, double max_cost, const std::string& out_path) {
  Dataset ds = load(in_path);
  EmpiricalCoreResult result;
  if (mode == "lp") {
    result = empirical_core(ds, grand_cost);
  } else if (mode == "bounded") {
    if (max_cost <= 0) {
      // Default upper estimate: largest magnitude the samples exhibit.
      max_cost = std::abs(grand_cost);
      for (const auto& r : ds.records) max_cost = std::max(max_cost, std::abs(r.cost));
    }
    result = empirical_core_bounded(ds, grand_cost, max_cost);
  } else {
    throw Error("unknown core mode '" + mode + "'");
  }
  if (result.status != SolveStatus::kFeasible) {
    // Infeasibility is a finding ("no empirical core"), not a failure.
    Json record{{"status", result.status == SolveStatus::kInfeasible
                               ? "no-empirical-core"
                               : "numerical-failure"},
                {"raw_m", result.raw_m},
                {"distinct_constraints", result.distinct_constraints}};
    emit(record, "");
    return result.status == SolveStatus::kInfeasible ? 0 : 2;
  }
  Json record = allocation_to_json(*result.allocation);
  record["status"] = "ok";
  emit(record, out_path);
  return 0;
}

int run_stability(const std::string& alloc_path, const std::string& game_arg,
                  const std::string& dist_arg, double epsilon,
                  const std::string& eval_mode, std::uint64_t seed) {
  CostAllocation alloc = allocation_from_json(Json::parse(read_file(alloc_path)));
  Game game = game_from_descriptor(read_json_arg(game_arg));
  SetDistribution dist = SetDistribution::from_descriptor(read_json_arg(dist_arg));
  StabilityReport report;
  if (eval_mode == "exhaustive") {
    report = evaluate_stability_exhaustive(alloc, game, dist, epsilon);
  } else if (eval_mode.rfind("fresh:", 0) == 0) {
    int m_prime = std::stoi(eval_mode.substr(6));
    report = evaluate_stability_fresh(alloc, game, dist, epsilon, m_prime, seed);
  } else {
    throw Error("--eval must be 'exhaustive' or 'fresh:<m>'");
  }
  Json record{{"epsilon", report.epsilon},
              {"violation_rate", report.violation_rate},
              {"eval_mode", report.eval_mode},
              {"worst_violation", report.worst_violation}};
  if (report.eval_mode == "fresh-samples") {
    record["fresh_m"] = report.fresh_m;
    record["fresh_seed"] = report.fresh_seed;
  }
  emit(record, "");
  return 0;
}

int run_oracle(const std::string& what, const std::string& game_arg,
               const std::string& dist_arg, int player_1based) {
  Game game = game_from_descriptor(read_json_arg(game_arg));
  if (what == "shapley") {
    Vector phi = exact_shapley(game);
    Json record{{"what", "shapley"},
                {"n", game.n()},
                {"phi", std::vector<double>(phi.begin(), phi.end())},
                {"balance", phi.sum()}};
    emit(record, "");
    return 0;
  }
  if (what == "profile") {
    int i = player_1based < 1 ? 1 : player_1based;
    MarginalProfile profile = marginal_profile(game, i - 1);
    Json record{{"what", "profile"},
                {"player", i},
                {"by_size", profile.by_size}};
    emit(record, "");
    return 0;
  }
  if (what == "core") {
    ExactCoreResult core = exact_core(game);
    Json record{{"what", "core"}, {"nonempty", core.nonempty}};
    if (core.nonempty) {
      record["psi"] = std::vector<double>(core.point->begin(), core.point->end());
      record["margin"] = core.margin;
    }
    emit(record, "");
    return 0;
  }
  if (what == "expected-marginal") {
    SetDistribution dist = SetDistribution::from_descriptor(read_json_arg(dist_arg));
    Json values = Json::array();
    for (int i = 0; i < game.n(); ++i) {
      values.push_back(exact_expected_marginal(game, dist, i));
    }
    Json record{{"what", "expected-marginal"}, {"v", values}};
    emit(record, "");
    return 0;
  }
  throw Error("unknown oracle '" + what + "'");
}

// Accepts a preset name, a spec file, or a previous report file (NDJSON whose
// first record embeds the spec).
ExperimentSpec resolve_spec(const std::string& arg) {
  for (const auto& preset : experiment_presets()) {
    if (preset.name == arg) return preset;
  }
  std::string text = read_file(arg);
  std::istringstream in(text);
  std::string first_line;
  std::getline(in, first_line);
  Json first = Json::parse(first_line);
  if (first.value("type", "") == "meta") {
    return spec_from_json(first.at("spec"));
  }
  return spec_from_json(Json::parse(text));
}

int run_experiment_cmd(const std::string& spec_arg, const std::string& out_path,
                       const std::string& plot_path) {
  ExperimentSpec spec = resolve_spec(spec_arg);
  ExperimentReport report = run_experiment(spec);
  if (out_path.empty()) {
    std::cout << report.to_ndjson();
  } else {
    write_file(out_path, report.to_ndjson());
  }
  // Human summary on stderr so stdout stays machine-readable.
  int ok = 0, err = 0;
  for (const auto& cell : report.cells) {
    (cell.value("status", "ok") == "error" ? err : ok)++;
  }
  std::cerr << "experiment '" << spec.name << "' (" << spec.kind << "): "
            << ok << " cells ok, " << err << " errored, "
            << report.aggregates.size() << " aggregates\n";
  if (!plot_path.empty()) {
    std::string plot;
    for (const auto& [x, y, series] : report.plot_data) {
      plot += std::to_string(x) + " " + std::to_string(y) + " " + series + "\n";
    }
    write_file(plot_path, plot);
  }
  return report.all_cells_ok() ? 0 : 2;
}

int run_list() {
  std::cout << "experiment kinds: core-generalization, curvature, dsh, "
               "dd-audit, indistinguishability, additive-warmup\n";
  std::cout << "presets:\n";
  for (const auto& preset : experiment_presets()) {
    std::cout << "  " << preset.name << " [" << preset.kind << "]\n";
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"statcost: statistical cost sharing toolkit"};
  app.require_subcommand(1);

  std::string game_arg, dist_arg, out_path, in_path, method = "marginal";
  std::string mode = "lp", alloc_path, eval_mode = "exhaustive", what;
  std::string spec_arg, plot_path;
  int m = 0, player = 0;
  bool all_players = false;
  double kappa = 0.0, grand_cost = 0.0, max_cost = 0.0, epsilon = 0.0;
  std::uint64_t seed = 0;

  auto* gen = app.add_subcommand("generate", "draw a labeled sample dataset");
  gen->add_option("--game", game_arg, "game descriptor (JSON or @file)")->required();
  gen->add_option("--dist", dist_arg, "distribution descriptor (JSON or @file)")->required();
  gen->add_option("-m,--samples", m, "number of samples")->required();
  gen->add_option("--seed", seed, "generation seed")->required();
  gen->add_option("-o,--out", out_path, "output path (stdout if omitted)");

  auto* est = app.add_subcommand("estimate", "sample-based value estimators");
  est->add_option("--method", method,
                  "marginal|dsh|curvature|dd-empirical|dd-exact")->required();
  est->add_option("--in", in_path, "dataset path")->required();
  est->add_option("--player", player, "1-based player index");
  est->add_flag("--all", all_players, "estimate every player");
  est->add_option("--kappa", kappa, "curvature for --method curvature");
  est->add_option("-o,--out", out_path, "output path (stdout if omitted)");

  auto* core = app.add_subcommand("core", "train an empirical core allocation");
  core->add_option("--mode", mode, "lp|bounded")->required();
  core->add_option("--in", in_path, "dataset path")->required();
  core->add_option("--grand-cost", grand_cost, "C(N)")->required();
  core->add_option("--max-cost", max_cost, "max_S |C(S)| bound for bounded mode");
  core->add_option("-o,--out", out_path, "allocation output path");

  auto* stab = app.add_subcommand("stability", "evaluate an allocation's stability");
  stab->add_option("--alloc", alloc_path, "allocation file")->required();
  stab->add_option("--game", game_arg, "game descriptor")->required();
  stab->add_option("--dist", dist_arg, "distribution descriptor")->required();
  stab->add_option("--epsilon", epsilon, "relaxation epsilon")->required();
  stab->add_option("--eval", eval_mode, "exhaustive or fresh:<m>");
  stab->add_option("--seed", seed, "seed for fresh draws");

  auto* oracle = app.add_subcommand("oracle", "exact enumeration oracles");
  oracle->add_option("--what", what, "shapley|profile|core|expected-marginal")->required();
  oracle->add_option("--game", game_arg, "game descriptor")->required();
  oracle->add_option("--dist", dist_arg, "distribution descriptor");
  oracle->add_option("--player", player, "1-based player for --what profile");

  auto* exp = app.add_subcommand("experiment", "run or list experiments");
  auto* exp_run = exp->add_subcommand("run", "run a spec file, preset, or report");
  exp_run->add_option("spec", spec_arg, "spec file, preset name, or report file")->required();
  exp_run->add_option("-o,--out", out_path, "report output path (stdout if omitted)");
  exp_run->add_option("--emit-plot-data", plot_path, "write (x, y, series) triples");
  auto* exp_list = exp->add_subcommand("list", "list kinds and presets");
  exp->require_subcommand(1);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 1;  // 0 for --help, 1 for usage errors
  }

  try {
    if (*gen) return run_generate(game_arg, dist_arg, m, seed, out_path);
    if (*est) {
      if (!all_players && player == 0) {
        std::cerr << "estimate: pass --player <i> or --all\n";
        return 1;
      }
      return run_estimate(method, in_path, player, all_players, kappa, out_path);
    }
    if (*core) return run_core(mode, in_path, grand_cost, max_cost, out_path);
    if (*stab) return run_stability(alloc_path, game_arg, dist_arg, epsilon,
                                    eval_mode, seed);
    if (*oracle) return run_oracle(what, game_arg, dist_arg, player);
    if (*exp) {
      if (*exp_run) return run_experiment_cmd(spec_arg, out_path, plot_path);
      if (*exp_list) return run_list();
    }
  } catch (const Json::exception& e) {
    std::cerr << "error: bad JSON: " << e.what() << "\n";
    return 1;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 1;
}
