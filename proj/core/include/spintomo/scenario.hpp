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

#include <string>
#include <vector>

#include "spintomo/config.hpp"

namespace spintomo {

struct RunResult {
  std::vector<std::string> artifacts;  // file names written under the out dir
  std::string summary;                 // one line for stdout
};

// Executes one subcommand: scheme | tomography | husimi | benchmark |
// oracle-check | folded-search. Consumes the relevant config keys (rejecting
// leftovers), writes the artifacts plus a manifest.json into run.out, and is
// byte-deterministic for a fixed config+seed regardless of run.threads.
//
// Throws config_error for schema problems and invariant_error when a
// numerical invariant fails (oracle-check exceeding its tolerance).
RunResult run_subcommand(const std::string& subcommand, Config& cfg);

}  // namespace spintomo
