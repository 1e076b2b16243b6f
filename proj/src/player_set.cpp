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

#include "statcost/player_set.hpp"

#include <charconv>

#include "statcost/errors.hpp"

namespace statcost {

std::vector<int> PlayerSet::members() const {
  std::vector<int> out;
  out.reserve(cardinality());
  std::uint64_t b = bits_;
  while (b) {
    int p = std::countr_zero(b);
    out.push_back(p);
    b &= b - 1;
  }
  return out;
}

std::string PlayerSet::to_string() const {
  std::string out = "{";
  bool first = true;
  for (int p : members()) {
    if (!first) out += ',';
    out += std::to_string(p + 1);
    first = false;
  }
  out += '}';
  return out;
}

std::string to_hex(PlayerSet s) {
  char buf[19];
  auto [end, ec] = std::to_chars(buf, buf + sizeof(buf), s.bits(), 16);
  return "0x" + std::string(buf, end);
}

PlayerSet player_set_from_hex(const std::string& text) {
  if (text.size() < 3 || text[0] != '0' || text[1] != 'x') {
    throw IoError("malformed coalition mask: '" + text + "'");
  }
  std::uint64_t bits = 0;
  auto [ptr, ec] =
      std::from_chars(text.data() + 2, text.data() + text.size(), bits, 16);
  if (ec != std::errc() || ptr != text.data() + text.size()) {
    throw IoError("malformed coalition mask: '" + text + "'");
  }
  return PlayerSet(bits);
}

}  // namespace statcost
