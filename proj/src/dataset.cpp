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

#include "statcost/dataset.hpp"

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "statcost/errors.hpp"

namespace statcost {

namespace {

constexpr const char* kFormatTag = "statcost-ds/1";

std::string format_cost(double cost) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", cost);
  return buf;
}

}  // namespace

Dataset generate(const Game& game, const SetDistribution& dist, int m,
                 std::uint64_t seed) {
  if (game.n() != dist.n()) {
    throw ConstructionError("game has n = " + std::to_string(game.n()) +
                            " but distribution has n = " +
                            std::to_string(dist.n()));
  }
  if (m < 0) throw ConstructionError("sample count must be nonnegative");
  Dataset ds;
  ds.n = game.n();
  ds.seed = seed;
  ds.game = game.descriptor();
  ds.dist = dist.descriptor();
  ds.records.reserve(m);
  for (int k = 0; k < m; ++k) {
    Rng rng(derive_seed(seed, static_cast<std::uint64_t>(k)));
    PlayerSet s = dist.sample(rng);
    ds.records.push_back({s, game.evaluate(s)});
  }
  return ds;
}

std::pair<std::vector<SampleRecord>, std::vector<SampleRecord>>
split_by_membership(const Dataset& ds, int player) {
  if (player < 0 || player >= ds.n) {
    throw Error("player index out of range");
  }
  std::pair<std::vector<SampleRecord>, std::vector<SampleRecord>> out;
  for (const auto& r : ds.records) {
    (r.subset.contains(player) ? out.first : out.second).push_back(r);
  }
  return out;
}

std::vector<std::pair<std::vector<SampleRecord>, std::vector<SampleRecord>>>
split_by_size_and_membership(const Dataset& ds, int player) {
  if (player < 0 || player >= ds.n) {
    throw Error("player index out of range");
  }
  std::vector<std::pair<std::vector<SampleRecord>, std::vector<SampleRecord>>>
      buckets(ds.n + 1);
  for (const auto& r : ds.records) {
    auto& bucket = buckets[r.subset.cardinality()];
    (r.subset.contains(player) ? bucket.first : bucket.second).push_back(r);
  }
  return buckets;
}

std::string serialize(const Dataset& ds) {
  Json meta{{"n", ds.n},
            {"m", ds.m()},
            {"seed", ds.seed},
            {"game", ds.game},
            {"dist", ds.dist}};
  std::string out = std::string(kFormatTag) + " " + meta.dump() + "\n";
  for (const auto& r : ds.records) {
    out += to_hex(r.subset);
    out += ' ';
    out += format_cost(r.cost);
    out += '\n';
  }
  return out;
}

Dataset deserialize(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  if (!std::getline(in, line)) {
    throw IoError("line 1: empty dataset file");
  }
  std::string tag = line.substr(0, line.find(' '));
  if (tag != kFormatTag) {
    throw IoError("line 1: expected format tag '" + std::string(kFormatTag) +
                  "', got '" + tag + "'");
  }
  Json meta;
  try {
    meta = Json::parse(line.substr(tag.size() + 1));
  } catch (const Json::exception& e) {
    throw IoError(std::string("line 1: bad metadata: ") + e.what());
  }
  Dataset ds;
  ds.n = meta.at("n").get<int>();
  ds.seed = meta.at("seed").get<std::uint64_t>();
  ds.game = meta.at("game");
  ds.dist = meta.at("dist");
  int expected_m = meta.at("m").get<int>();
  ds.records.reserve(expected_m);
  int line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    std::size_t space = line.find(' ');
    if (space == std::string::npos) {
      throw IoError("line " + std::to_string(line_no) + ": expected '<mask> <cost>'");
    }
    PlayerSet subset;
    try {
      subset = player_set_from_hex(line.substr(0, space));
    } catch (const IoError& e) {
      throw IoError("line " + std::to_string(line_no) + ": " + e.what());
    }
    if (!subset.fits(ds.n)) {
      throw IoError("line " + std::to_string(line_no) +
                    ": coalition exceeds ground set");
    }
    const char* cost_text = line.c_str() + space + 1;
    char* end = nullptr;
    double cost = std::strtod(cost_text, &end);
    if (end == cost_text || *end != '\0') {
      throw IoError("line " + std::to_string(line_no) + ": bad cost '" +
                    std::string(cost_text) + "'");
    }
    ds.records.push_back({subset, cost});
  }
  if (ds.m() != expected_m) {
    throw IoError("line " + std::to_string(line_no + 1) + ": header declares m = " +
                  std::to_string(expected_m) + " but file has " +
                  std::to_string(ds.m()) + " records");
  }
  return ds;
}

void save(const Dataset& ds, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open '" + path + "' for writing");
  out << serialize(ds);
  if (!out) throw IoError("write failed for '" + path + "'");
}

Dataset load(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open '" + path + "' for reading");
  std::ostringstream buf;
  buf << in.rdbuf();
  return deserialize(buf.str());
}

int verify_costs(const Dataset& ds) {
  Game game = game_from_descriptor(ds.game);
  int mismatches = 0;
  for (const auto& r : ds.records) {
    if (game.evaluate(r.subset) != r.cost) ++mismatches;
  }
  return mismatches;
}

}  // namespace statcost
