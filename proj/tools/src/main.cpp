// Copyright 2026 The Serenade Simulator Authors
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

#include <iostream>

#include "CLI11.hpp"
#include "serenade/errors.hpp"
#include "serenade_cli/cli.hpp"

using serenade::cli::Command;
using serenade::cli::RunManifest;

namespace {

void add_common_flags(CLI::App* sub, RunManifest& m) {
  sub->add_option("--config", m.config_path, "JSON configuration file")->check(CLI::ExistingFile);
  sub->add_option("--seed", m.seed, "Override the configured base seed");
  sub->add_option("--out", m.out_path, "Output CSV path (default: standard output)");
  sub->add_option("--jobs", m.jobs, "Worker threads for grid points")->check(CLI::PositiveNumber);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Crossbar scheduling simulator"};
  app.require_subcommand(1);
  RunManifest m;

  struct Entry {
    const char* name;
    const char* help;
    Command command;
  };
  for (const Entry& e : {Entry{"simulate", "Run a (variant x matrix x load) grid", Command::Simulate},
                         Entry{"stats", "Monte-Carlo cycle statistics", Command::Stats},
                         Entry{"verify", "Oracle-equivalence and invariant suites", Command::Verify},
                         Entry{"msgcost", "Per-port message cost table", Command::Msgcost}}) {
    auto* sub = app.add_subcommand(e.name, e.help);
    add_common_flags(sub, m);
    sub->callback([&m, c = e.command] { m.command = c; });
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : serenade::cli::kExitConfigError;
  }

  try {
    return serenade::cli::dispatch(m, std::cerr);
  } catch (const serenade::ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return serenade::cli::kExitConfigError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return serenade::cli::kExitVerifyFailed;
  }
}
