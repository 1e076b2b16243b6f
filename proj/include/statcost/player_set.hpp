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

#include <bit>
#include <cstdint>
#include <string>
#include <vector>

namespace statcost {

// A coalition over a ground set of at most 63 players, encoded as a bit
// mask. Player p (0-based in the API) lives at bit p; reports and the CLI
// print players 1-based, so bit p is shown as element p+1.
class PlayerSet {
 public:
  constexpr PlayerSet() : bits_(0) {}
  constexpr explicit PlayerSet(std::uint64_t bits) : bits_(bits) {}

  static constexpr PlayerSet empty_set() { return PlayerSet(0); }
  static constexpr PlayerSet full_set(int n) {
    return PlayerSet(n >= 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << n) - 1);
  }
  static PlayerSet singleton(int player) {
    return PlayerSet(std::uint64_t{1} << player);
  }
  // Builds a set from 0-based player indices.
  static PlayerSet of(std::initializer_list<int> players) {
    std::uint64_t b = 0;
    for (int p : players) b |= std::uint64_t{1} << p;
    return PlayerSet(b);
  }

  constexpr std::uint64_t bits() const { return bits_; }
  constexpr bool contains(int player) const {
    return (bits_ >> player) & std::uint64_t{1};
  }
  constexpr int cardinality() const { return std::popcount(bits_); }
  constexpr bool is_empty() const { return bits_ == 0; }

  constexpr PlayerSet with(int player) const {
    return PlayerSet(bits_ | (std::uint64_t{1} << player));
  }
  constexpr PlayerSet without(int player) const {
    return PlayerSet(bits_ & ~(std::uint64_t{1} << player));
  }
  constexpr PlayerSet unite(PlayerSet o) const {
    return PlayerSet(bits_ | o.bits_);
  }
  constexpr PlayerSet intersect(PlayerSet o) const {
    return PlayerSet(bits_ & o.bits_);
  }
  // Complement within the ground set {0..n-1}.
  constexpr PlayerSet complement(int n) const {
    return PlayerSet(~bits_ & full_set(n).bits_);
  }

  // True when every set bit index is < n.
  constexpr bool fits(int n) const { return (bits_ & ~full_set(n).bits_) == 0; }

  std::vector<int> members() const;

  // Set literal with 1-based players, e.g. "{1,3,5}"; "{}" when empty.
  std::string to_string() const;

  friend constexpr bool operator==(PlayerSet a, PlayerSet b) {
    return a.bits_ == b.bits_;
  }
  friend constexpr bool operator!=(PlayerSet a, PlayerSet b) {
    return a.bits_ != b.bits_;
  }
  friend constexpr bool operator<(PlayerSet a, PlayerSet b) {
    return a.bits_ < b.bits_;
  }

 private:
  std::uint64_t bits_;
};

// Iterates subsets in ascending bit-mask order: for (auto s : all_subsets(n)).
class SubsetRange {
 public:
  explicit SubsetRange(int n) : count_(std::uint64_t{1} << n) {}
  class Iterator {
   public:
    explicit Iterator(std::uint64_t v) : v_(v) {}
    PlayerSet operator*() const { return PlayerSet(v_); }
    Iterator& operator++() {
      ++v_;
      return *this;
    }
    bool operator!=(const Iterator& o) const { return v_ != o.v_; }

   private:
    std::uint64_t v_;
  };
  Iterator begin() const { return Iterator(0); }
  Iterator end() const { return Iterator(count_); }

 private:
  std::uint64_t count_;
};

inline SubsetRange all_subsets(int n) { return SubsetRange(n); }

// Wire encoding of a coalition: lowercase hex of the bit mask, "0x" prefixed.
std::string to_hex(PlayerSet s);
PlayerSet player_set_from_hex(const std::string& text);

}  // namespace statcost
