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

#include "spintomo/sample_set.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <map>
#include <sstream>

#include "spintomo/errors.hpp"

namespace spintomo {

namespace {

const std::map<std::string, SchemeTraits>& registry() {
  // two_pass_tomography / fock_tomography: the transducer hands -j_y to the
  //   detector, so outcomes carry an overall minus sign.
  // three_pass_husimi: the swap leaves the light state as the pi/2-rotated
  //   image of the spin state.
  static const std::map<std::string, SchemeTraits> reg = {
      {"single_pass_probe", {+1.0, 0.0, false}},
      {"two_pass_tomography", {-1.0, 0.0, false}},
      {"fock_tomography", {-1.0, 0.0, false}},
      {"three_pass_husimi", {+1.0, M_PI_2, true}},
  };
  return reg;
}

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

double parse_double(const std::string& token, const std::string& origin, std::size_t line) {
  char* end = nullptr;
  const double v = std::strtod(token.c_str(), &end);
  if (end == token.c_str() || *end != '\0')
    throw config_error(origin + ":" + std::to_string(line) + ": malformed number '" + token + "'");
  return v;
}

std::vector<std::string> split_csv(const std::string& line) {
  std::vector<std::string> out;
  std::string field;
  std::istringstream ss(line);
  while (std::getline(ss, field, ',')) out.push_back(field);
  if (!line.empty() && line.back() == ',') out.emplace_back();
  return out;
}

}  // namespace

const SchemeTraits& scheme_traits(const std::string& scheme) {
  const auto& reg = registry();
  const auto it = reg.find(scheme);
  if (it == reg.end()) throw config_error("unknown scheme '" + scheme + "'");
  return it->second;
}

void SampleSet::to_csv(std::ostream& out) const {
  const bool pairs = traits().pairs;
  out << "scheme,seed,angle_rad,outcome_1";
  if (pairs) out << ",outcome_2";
  out << '\n';
  for (const auto& rec : records) {
    out << scheme << ',' << seed << ',' << format_double(rec.angle_rad) << ','
        << format_double(rec.outcome_1);
    if (pairs) out << ',' << format_double(rec.outcome_2);
    out << '\n';
  }
}

void SampleSet::save(const std::string& path) const {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw config_error(path + ": cannot open for writing");
  to_csv(out);
  if (!out) throw config_error(path + ": write failed");
}

SampleSet SampleSet::from_csv(std::istream& in, const std::string& origin) {
  std::string line;
  if (!std::getline(in, line)) throw config_error(origin + ":1: empty sample file");
  bool pairs;
  if (line == "scheme,seed,angle_rad,outcome_1")
    pairs = false;
  else if (line == "scheme,seed,angle_rad,outcome_1,outcome_2")
    pairs = true;
  else
    throw config_error(origin + ":1: unrecognized sample header '" + line + "'");

  SampleSet set;
  std::size_t lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    const auto fields = split_csv(line);
    if (fields.size() != (pairs ? 5u : 4u))
      throw config_error(origin + ":" + std::to_string(lineno) + ": expected " +
                         std::to_string(pairs ? 5 : 4) + " fields, got " +
                         std::to_string(fields.size()));
    if (set.records.empty()) {
      set.scheme = fields[0];
      if (scheme_traits(set.scheme).pairs != pairs)
        throw config_error(origin + ":" + std::to_string(lineno) + ": scheme '" + set.scheme +
                           "' does not match the header column count");
      char* end = nullptr;
      set.seed = std::strtoull(fields[1].c_str(), &end, 10);
      if (end == fields[1].c_str() || *end != '\0')
        throw config_error(origin + ":" + std::to_string(lineno) + ": malformed seed");
    } else if (fields[0] != set.scheme) {
      throw config_error(origin + ":" + std::to_string(lineno) + ": mixed schemes in one file");
    }
    SampleRecord rec{parse_double(fields[2], origin, lineno),
                     parse_double(fields[3], origin, lineno),
                     pairs ? parse_double(fields[4], origin, lineno) : 0.0};
    set.records.push_back(rec);
  }
  if (set.records.empty()) throw config_error(origin + ": no sample records");
  return set;
}

SampleSet SampleSet::load(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw config_error(path + ": cannot open");
  return from_csv(in, path);
}

}  // namespace spintomo
