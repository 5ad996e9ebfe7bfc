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

#include "spintomo/config.hpp"

#include <cctype>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "spintomo/errors.hpp"

namespace spintomo {

namespace {

std::string trim(const std::string& s) {
  std::size_t a = 0, b = s.size();
  while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
  while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
  return s.substr(a, b - a);
}

bool valid_key(const std::string& k) {
  if (k.empty() || k.front() == '.' || k.back() == '.') return false;
  for (char c : k) {
    if (!(std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '.'))
      return false;
  }
  return true;
}

std::string loc(const std::string& origin, int line) {
  return origin + ":" + std::to_string(line);
}

}  // namespace

Config Config::parse_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw config_error("cannot open config file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_string(buf.str(), path);
}

Config Config::parse_string(const std::string& text, const std::string& origin) {
  Config cfg;
  cfg.origin_ = origin;
  std::istringstream in(text);
  std::string raw;
  int line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    // '#' starts a comment anywhere on the line, including after a value.
    const std::string line = trim(raw.substr(0, raw.find('#')));
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw config_error(loc(origin, line_no) + ": expected 'key = value'");
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (!valid_key(key))
      throw config_error(loc(origin, line_no) + ": invalid key '" + key + "'");
    if (value.empty())
      throw config_error(loc(origin, line_no) + ": empty value for '" + key + "'");
    auto [it, inserted] = cfg.entries_.emplace(key, Entry{value, line_no, false});
    if (!inserted)
      throw config_error(loc(origin, line_no) + ": duplicate key '" + key +
                         "' (first set at line " + std::to_string(it->second.line) + ")");
  }
  const long version = cfg.get_long("config_version", -1);
  if (version != 1)
    throw config_error(origin + ": config_version = 1 is required");
  return cfg;
}

void Config::fail(const std::string& key, const std::string& what) const {
  const auto it = entries_.find(key);
  if (it == entries_.end()) throw config_error(origin_ + ": " + what);
  throw config_error(loc(origin_, it->second.line) + ": " + what);
}

const Config::Entry& Config::require(const std::string& key) {
  auto it = entries_.find(key);
  if (it == entries_.end())
    throw config_error(origin_ + ": missing required key '" + key + "'");
  it->second.consumed = true;
  return it->second;
}

std::string Config::get_string(const std::string& key) { return require(key).value; }

std::string Config::get_string(const std::string& key, const std::string& fallback) {
  return has(key) ? get_string(key) : fallback;
}

double Config::get_double(const std::string& key) {
  const std::string& v = require(key).value;
  char* end = nullptr;
  const double x = std::strtod(v.c_str(), &end);
  if (end == v.c_str() || *end != '\0')
    fail(key, "key '" + key + "': '" + v + "' is not a number");
  return x;
}

double Config::get_double(const std::string& key, double fallback) {
  return has(key) ? get_double(key) : fallback;
}

long Config::get_long(const std::string& key) {
  const std::string& v = require(key).value;
  char* end = nullptr;
  const long x = std::strtol(v.c_str(), &end, 10);
  if (end == v.c_str() || *end != '\0')
    fail(key, "key '" + key + "': '" + v + "' is not an integer");
  return x;
}

long Config::get_long(const std::string& key, long fallback) {
  return has(key) ? get_long(key) : fallback;
}

std::uint64_t Config::get_u64(const std::string& key) {
  const std::string& v = require(key).value;
  char* end = nullptr;
  const unsigned long long x = std::strtoull(v.c_str(), &end, 10);
  if (end == v.c_str() || *end != '\0' || v.front() == '-')
    fail(key, "key '" + key + "': '" + v + "' is not a non-negative integer");
  return x;
}

bool Config::get_bool(const std::string& key, bool fallback) {
  if (!has(key)) return fallback;
  const std::string v = require(key).value;
  if (v == "true" || v == "1") return true;
  if (v == "false" || v == "0") return false;
  fail(key, "key '" + key + "': '" + v + "' is not a boolean");
}

void Config::override_value(const std::string& key, const std::string& value) {
  entries_[key] = Entry{value, 0, false};
}

void Config::finish() const {
  for (const auto& [key, entry] : entries_) {
    if (!entry.consumed)
      throw config_error(loc(origin_, entry.line) + ": unknown key '" + key + "'");
  }
}

std::string Config::canonical_text() const {
  std::string out;
  for (const auto& [key, entry] : entries_) {  // std::map iterates sorted
    if (key == "run.threads" || key == "run.out") continue;
    out += key;
    out += '=';
    out += entry.value;
    out += '\n';
  }
  return out;
}

std::uint64_t Config::config_hash() const {
  std::uint64_t h = 14695981039346656037ull;
  for (unsigned char c : canonical_text()) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

std::string Config::config_hash_hex() const {
  char buf[17];
  std::snprintf(buf, sizeof(buf), "%016llx",
                static_cast<unsigned long long>(config_hash()));
  return buf;
}

}  // namespace spintomo
