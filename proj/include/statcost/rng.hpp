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
#include <string_view>

namespace statcost {

// SplitMix64 (Steele, Lea & Flood 2014): a counter-based generator with a
// stable cross-platform stream. The state is a counter advanced by a fixed
// odd gamma; each output is an avalanche mix of the counter. All sampling in
// this library goes through this type -- never through <random> distributions,
// whose streams are implementation-defined.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next_u64() {
    state_ += 0x9E3779B97F4A7C15ULL;
    std::uint64_t z = state_;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }

  // Uniform on [0, 1) with 53 random mantissa bits.
  double next_double() {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
  }

  bool next_bernoulli(double p) { return next_double() < p; }

  // Unbiased uniform integer in [0, bound); bound >= 1.
  std::uint64_t next_below(std::uint64_t bound);

 private:
  std::uint64_t state_;
};

// Deterministic sub-seed derivation; independent streams for workers and
// per-record generation come from (seed, key) pairs, never from sharing one
// stream.
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t key);

// FNV-1a hash of a name, used to default experiment base seeds.
std::uint64_t hash_name(std::string_view name);

}  // namespace statcost
