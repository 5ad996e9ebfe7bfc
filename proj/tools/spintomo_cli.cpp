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

#include <cstdint>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "spintomo/config.hpp"
#include "spintomo/errors.hpp"
#include "spintomo/scenario.hpp"
#include "spintomo/version.hpp"

namespace {

constexpr struct {
  const char* name;
  const char* help;
} kSubcommands[] = {
    {"scheme", "run an acquisition scheme and emit the raw sample CSV"},
    {"tomography", "acquire angle-resolved samples and reconstruct the Wigner grid"},
    {"husimi", "acquire paired samples and estimate the Husimi-Q grid"},
    {"benchmark", "evaluate a channel against the classical fidelity bound"},
    {"oracle-check", "compare the Gaussian engine against the truncated-space oracle"},
    {"folded-search", "enumerate folded pass templates matching a target map"},
};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"spintomo: multi-pass light-atom interface simulator and analysis toolkit"};
  app.set_version_flag("--version", spintomo::kVersion);
  app.require_subcommand(1);

  std::string config_path;
  std::optional<std::uint64_t> seed;
  std::optional<std::string> out_dir;
  std::optional<int> threads;
  app.add_option("--config", config_path, "configuration file (key = value lines)")
      ->required();
  app.add_option("--seed", seed, "override run.seed");
  app.add_option("--out", out_dir, "override run.out");
  app.add_option("--threads", threads, "override run.threads");

  for (const auto& sub : kSubcommands)
    app.add_subcommand(sub.name, sub.help)->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  const std::string subcommand = app.get_subcommands().front()->get_name();
  try {
    spintomo::Config cfg = spintomo::Config::parse_file(config_path);
    if (seed) cfg.override_value("run.seed", std::to_string(*seed));
    if (out_dir) cfg.override_value("run.out", *out_dir);
    if (threads) cfg.override_value("run.threads", std::to_string(*threads));
    const spintomo::RunResult result = spintomo::run_subcommand(subcommand, cfg);
    std::cout << result.summary << "\n";
    return 0;
  } catch (const spintomo::config_error& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "invariant failure: " << e.what() << "\n";
    return 3;
  }
}
