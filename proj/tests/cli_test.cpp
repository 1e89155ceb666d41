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

#include "serenade_cli/cli.hpp"

#include <filesystem>
#include <fstream>
#include <sstream>

#include "doctest.h"
#include "serenade/errors.hpp"

using namespace serenade;
using namespace serenade::cli;

namespace {

class TempDir {
 public:
  TempDir() : path_(std::filesystem::temp_directory_path() / ("serenade_cli_" + std::to_string(counter_++))) {
    std::filesystem::create_directories(path_);
  }
  ~TempDir() { std::filesystem::remove_all(path_); }
  std::string file(const std::string& name) const { return (path_ / name).string(); }

 private:
  static inline int counter_ = 0;
  std::filesystem::path path_;
};

std::string write(const TempDir& d, const std::string& name, const std::string& text) {
  const auto p = d.file(name);
  std::ofstream(p) << text;
  return p;
}

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::size_t lines(const std::string& s) { return static_cast<std::size_t>(std::count(s.begin(), s.end(), '\n')); }

RunManifest manifest(Command c, const std::string& config, const std::string& out) {
  RunManifest m;
  m.command = c;
  m.config_path = config;
  m.out_path = out;
  return m;
}

}  // namespace

TEST_CASE("simulate grid cardinality and determinism") {
  TempDir d;
  const auto cfg = write(d, "grid.json", R"({
    "seed": 5,
    "simulate": {"n_ports": 8, "slots": 300, "warmup_slots": 50,
                 "variants": ["serena", "c", "so:0.1"],
                 "matrices": ["uniform", "quasi-diagonal", "log-diagonal", "diagonal"],
                 "loads": [0.3, 0.6, 0.9]}
  })");
  std::ostringstream err;
  REQUIRE(dispatch(manifest(Command::Simulate, cfg, d.file("a.csv")), err) == kExitOk);
  const auto a = slurp(d.file("a.csv"));
  CHECK(lines(a) == 37);
  CHECK(a.rfind("variant,matrix,load,n_ports,slots,seed,mean_delay,throughput,max_queue,"
                "msg_bits_per_port_per_slot\n", 0) == 0);

  auto m = manifest(Command::Simulate, cfg, d.file("b.csv"));
  m.jobs = 3;
  REQUIRE(dispatch(m, err) == kExitOk);
  CHECK(slurp(d.file("b.csv")) == a);
}

TEST_CASE("single grid point") {
  TempDir d;
  const auto cfg = write(d, "one.json", R"({"simulate": {"n_ports": 4, "slots": 100,
    "warmup_slots": 10, "variants": ["e"], "loads": [0.5]}})");
  std::ostringstream err;
  REQUIRE(dispatch(manifest(Command::Simulate, cfg, d.file("o.csv")), err) == kExitOk);
  CHECK(lines(slurp(d.file("o.csv"))) == 2);
}

TEST_CASE("configuration errors") {
  TempDir d;
  std::ostringstream err;
  const auto bad_variant = write(d, "v.json", R"({"simulate": {"variants": ["x"]}})");
  CHECK_THROWS_AS(dispatch(manifest(Command::Simulate, bad_variant, ""), err), ConfigError);
  const auto bad_matrix = write(d, "m.json", R"({"simulate": {"matrices": ["banded"]}})");
  CHECK_THROWS_AS(dispatch(manifest(Command::Simulate, bad_matrix, ""), err), ConfigError);
  const auto bad_key = write(d, "k.json", R"({"stats": {"n": [64]}})");
  CHECK_THROWS_AS(dispatch(manifest(Command::Stats, bad_key, ""), err), ConfigError);
  const auto bad_n = write(d, "n.json", R"({"stats": {"n_ports": [48]}})");
  CHECK_THROWS_AS(dispatch(manifest(Command::Stats, bad_n, ""), err), ConfigError);
  const auto bad_json = write(d, "j.json", "{ nope");
  CHECK_THROWS_AS(dispatch(manifest(Command::Verify, bad_json, ""), err), ConfigError);
  CHECK_THROWS_AS(dispatch(manifest(Command::Verify, d.file("missing.json"), ""), err), ConfigError);
}

TEST_CASE("stats rows") {
  TempDir d;
  std::ostringstream err;
  const auto empty = write(d, "e.json", R"({"stats": {"n_ports": [], "samples": 10}})");
  REQUIRE(dispatch(manifest(Command::Stats, empty, d.file("e.csv")), err) == kExitOk);
  CHECK(lines(slurp(d.file("e.csv"))) == 1);
  const auto two = write(d, "t.json", R"({"stats": {"n_ports": [16, 64], "samples": 50}})");
  REQUIRE(dispatch(manifest(Command::Stats, two, d.file("t1.csv")), err) == kExitOk);
  REQUIRE(dispatch(manifest(Command::Stats, two, d.file("t2.csv")), err) == kExitOk);
  CHECK(lines(slurp(d.file("t1.csv"))) == 3);
  CHECK(slurp(d.file("t1.csv")) == slurp(d.file("t2.csv")));
}

TEST_CASE("verify suites") {
  TempDir d;
  std::ostringstream err;
  const auto ok = write(d, "ok.json", R"({"verify": {"trials": 50}})");
  CHECK(dispatch(manifest(Command::Verify, ok, d.file("ok.csv")), err) == kExitOk);
  const auto fault = write(d, "f.json", R"({"verify": {"trials": 5, "fault_injection": true}})");
  CHECK(dispatch(manifest(Command::Verify, fault, d.file("f.csv")), err) == kExitVerifyFailed);
  CHECK(slurp(d.file("f.csv")).find("knowledge_equals_oracle,20,1,FAIL") != std::string::npos);
  const auto none = write(d, "z.json", R"({"verify": {"trials": 0}})");
  std::ostringstream warn;
  CHECK(dispatch(manifest(Command::Verify, none, d.file("z.csv")), warn) == kExitOk);
  CHECK(warn.str().find("warning") != std::string::npos);
}

TEST_CASE("message cost formulas") {
  const auto r = formula_cost(64);
  CHECK(r.c_bytes == 36.75);
  CHECK(r.o_bytes == 42);
  CHECK(r.e_bytes == 44.25);
  CHECK(formula_cost(128).c_bytes == 44);
  CHECK(formula_cost(128).o_bytes == 51);
  CHECK(formula_cost(512).e_bytes == 73.625);
  const auto m = measured_cost(128, 10, 1);
  CHECK(m.c_bytes == 44);
  CHECK(m.o_bytes == 51);
  CHECK(m.e_bytes == 53.25);
}
