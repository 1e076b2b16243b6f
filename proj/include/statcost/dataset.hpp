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

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"
#include "statcost/game.hpp"
#include "statcost/set_distribution.hpp"

namespace statcost {

// One observation (S, C(S)). The cost equals the generating game's value of
// the subset at generation time; it is re-checkable whenever the stored game
// descriptor is available.
struct SampleRecord {
  PlayerSet subset;
  double cost = 0.0;
};

// The statistical input: an ordered list of i.i.d. samples plus full
// generation provenance. Immutable after generation; m = 0 is a valid
// container (estimators reject it with EmptyInputError).
struct Dataset {
  int n = 0;
  std::uint64_t seed = 0;
  Json game;  // descriptor of the generating game
  Json dist;  // descriptor of the sampling distribution
  std::vector<SampleRecord> records;

  int m() const { return static_cast<int>(records.size()); }
};

// Draws m i.i.d. subsets and labels them with exact costs. Record k is drawn
// from an independent substream derived from (seed, k), so generation can
// shard by index range and still produce the as-if-sequential order.
Dataset generate(const Game& game, const SetDistribution& dist, int m,
                 std::uint64_t seed);

// Order-preserving partition of the records by membership of player i.
std::pair<std::vector<SampleRecord>, std::vector<SampleRecord>>
split_by_membership(const Dataset& ds, int player);

// Double partition by (|S|, i in S); buckets[j] = (S^j_i, S^j_{-i}) for
// j = 0..n. Buckets may be empty.
std::vector<std::pair<std::vector<SampleRecord>, std::vector<SampleRecord>>>
split_by_size_and_membership(const Dataset& ds, int player);

// Line-oriented persistence, version "statcost-ds/1": one header line of
// metadata, then one "<mask-hex> <cost>" record per line with costs printed
// to 17 significant digits for exact double round-trip. load(save(ds)) is
// the identity, including metadata.
void save(const Dataset& ds, const std::string& path);
Dataset load(const std::string& path);

std::string serialize(const Dataset& ds);
Dataset deserialize(const std::string& text);

// Re-checks the generation invariant cost = game.evaluate(subset) against the
// stored game descriptor; returns the number of mismatching records.
int verify_costs(const Dataset& ds);

}  // namespace statcost
