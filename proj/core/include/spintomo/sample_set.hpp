// Copyright 2026 The Spintomo Authors
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
#include <iosfwd>
#include <string>
#include <vector>

namespace spintomo {

// How samples produced by a named scheme relate to the state under study.
// Raw outcomes are never rewritten; consumers apply these at reconstruction.
struct SchemeTraits {
  double outcome_sign;     // -1: outcomes sample the negated projection
  double rotation_rad;     // phase rotation the scheme imprinted (to be undone)
  bool pairs;              // true when records carry (outcome_1, outcome_2)
};

// Registry keyed by scheme name; throws config_error for unknown names.
const SchemeTraits& scheme_traits(const std::string& scheme);

struct SampleRecord {
  double angle_rad;
  double outcome_1;
  double outcome_2;  // unused (0.0) unless the scheme records pairs
};

// Angle-tagged measurement outcomes of one scheme run. Serializes to CSV
// with header (scheme, seed, angle_rad, outcome_1[, outcome_2]); doubles are
// written with 17 significant digits so the round-trip is bit-exact.
struct SampleSet {
  std::string scheme;
  std::uint64_t seed = 0;
  std::vector<SampleRecord> records;

  const SchemeTraits& traits() const { return scheme_traits(scheme); }

  void to_csv(std::ostream& out) const;
  void save(const std::string& path) const;
  static SampleSet from_csv(std::istream& in, const std::string& origin = "<stream>");
  static SampleSet load(const std::string& path);
};

}  // namespace spintomo
