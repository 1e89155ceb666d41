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

#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace serenade::cli {

enum class Command { Simulate, Stats, Verify, Msgcost };

struct RunManifest {
  Command command = Command::Simulate;
  std::string config_path;
  std::optional<std::uint64_t> seed;
  /// Empty means standard output.
  std::string out_path;
  unsigned jobs = 1;
};

inline constexpr int kExitOk = 0;
inline constexpr int kExitVerifyFailed = 1;
inline constexpr int kExitConfigError = 2;

/// Worst-case per-port bytes of one slot's decision procedure.
struct MessageCostRow {
  std::size_t n_ports = 0;
  double c_bytes = 0.0;
  double o_bytes = 0.0;
  double e_bytes = 0.0;
};

/// Closed-form encoding model.
MessageCostRow formula_cost(std::size_t n);

/// Largest per-port totals over `trials` random instances with halting off.
MessageCostRow measured_cost(std::size_t n, std::uint64_t trials, std::uint64_t seed);

struct SuiteResult {
  std::string name;
  std::uint64_t trials = 0;
  std::uint64_t failures = 0;
  bool passed() const { return failures == 0; }
};

struct VerifyOptions {
  std::uint64_t trials = 1000;
  std::vector<std::size_t> n_ports{8, 16, 32, 64};
  /// Perturb one knowledge-set weight in the first knowledge trial.
  bool fault_injection = false;
  std::uint64_t seed = 1;
};

std::vector<SuiteResult> run_verify_suites(const VerifyOptions& options);

/// Command entry points. Each writes its table to the manifest's output and
/// progress to `err`, and returns a process exit code. Configuration
/// problems throw ConfigError.
int cmd_simulate(const RunManifest& m, std::ostream& err);
int cmd_stats(const RunManifest& m, std::ostream& err);
int cmd_verify(const RunManifest& m, std::ostream& err);
int cmd_msgcost(const RunManifest& m, std::ostream& err);

int dispatch(const RunManifest& m, std::ostream& err);

}  // namespace serenade::cli
