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
#include <map>
#include <string>

namespace spintomo {

// Flat `key = value` configuration with dotted section keys, `#` comments and
// a mandatory `config_version = 1` line. Keys are fetched through the typed
// getters, which record consumption; finish() then rejects anything left
// over, so typos in key names fail loudly with their line number.
class Config {
 public:
  static Config parse_file(const std::string& path);
  static Config parse_string(const std::string& text,
                             const std::string& origin = "<string>");

  const std::string& origin() const { return origin_; }
  bool has(const std::string& key) const { return entries_.count(key) != 0; }

  std::string get_string(const std::string& key);
  std::string get_string(const std::string& key, const std::string& fallback);
  double get_double(const std::string& key);
  double get_double(const std::string& key, double fallback);
  long get_long(const std::string& key);
  long get_long(const std::string& key, long fallback);
  std::uint64_t get_u64(const std::string& key);
  bool get_bool(const std::string& key, bool fallback);

  // Insert or replace a value from outside the file (CLI overrides).
  void override_value(const std::string& key, const std::string& value);

  // Throws config_error naming the first unconsumed key and its line.
  void finish() const;

  // Sorted `key=value` lines over the effective entries. `run.threads` and
  // `run.out` are excluded: neither influences the computed results, and the
  // hash must be invariant under the worker count and artifact location.
  std::string canonical_text() const;
  std::uint64_t config_hash() const;   // FNV-1a 64 over canonical_text()
  std::string config_hash_hex() const;

 private:
  struct Entry {
    std::string value;
    int line = 0;  // 0 for CLI overrides
    bool consumed = false;
  };

  [[noreturn]] void fail(const std::string& key, const std::string& what) const;
  const Entry& require(const std::string& key);

  std::string origin_ = "<none>";
  std::map<std::string, Entry> entries_;
};

}  // namespace spintomo
