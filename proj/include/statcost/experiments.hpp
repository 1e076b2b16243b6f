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

#include <functional>
#include <string>
#include <tuple>
#include <vector>

#include "statcost/core_solvers.hpp"
#include "statcost/dataset.hpp"
#include "statcost/exact_oracles.hpp"

namespace statcost {

inline constexpr const char* kArtifactVersion = "statcost/1.0.0";

// An experiment: a named kind plus its parameter payload (game/pair and
// distribution descriptors, m grid, seed count, tolerances). The base seed
// defaults to a hash of the name; per-cell seeds are derived by index, so no
// seed bookkeeping is needed for reproducibility.
struct ExperimentSpec {
  std::string name;
  std::string kind;
  Json payload = Json::object();
  std::uint64_t base_seed = 0;
};

ExperimentSpec spec_from_json(const Json& j);
Json spec_to_json(const ExperimentSpec& spec);

// Newline-delimited report: one meta record embedding the full spec and the
// artifact version, one record per grid cell, then aggregate records. Cell
// errors are recorded in place and never abort the grid. Reports contain no
// timestamps: re-running the embedded spec reproduces the bytes exactly.
struct ExperimentReport {
  Json meta;
  std::vector<Json> cells;
  std::vector<Json> aggregates;
  // (x, y, series) triples for external plotting via --emit-plot-data.
  std::vector<std::tuple<double, double, std::string>> plot_data;

  std::string to_ndjson() const;
  bool all_cells_ok() const;
};

// Dispatch on spec.kind: "core-generalization", "curvature", "dsh",
// "dd-audit", "indistinguishability", "additive-warmup".
ExperimentReport run_experiment(const ExperimentSpec& spec);

ExperimentReport run_core_generalization(const ExperimentSpec& spec);
ExperimentReport run_curvature_experiment(const ExperimentSpec& spec);
ExperimentReport run_dsh_experiment(const ExperimentSpec& spec);
ExperimentReport run_dd_shapley_audit(const ExperimentSpec& spec);
ExperimentReport run_indistinguishability(const ExperimentSpec& spec);
ExperimentReport run_additive_warmup(const ExperimentSpec& spec);

// Bundled example specs, one per kind, runnable by name via the CLI.
std::vector<ExperimentSpec> experiment_presets();

// Per-player comparison of an estimate against exact values. Ratios are
// suppressed (null) when |exact| < floor, per the small-value convention;
// a ratio is never reported without both operands present in the record.
Json approximation_record(const std::vector<int>& players, const Vector& exact,
                          const Vector& estimate, double floor, double band_lo,
                          double band_hi);

// Runs cells 0..count-1 through a worker pool (STATCOST_WORKERS, default
// hardware concurrency); results keep index order and exceptions become
// {"status":"error"} records, so parallelism never changes the report.
std::vector<Json> run_cells(int count, const std::function<Json(int)>& cell_fn);

}  // namespace statcost
