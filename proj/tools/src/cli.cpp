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

#include <algorithm>
#include <atomic>
#include <bit>
#include <exception>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <mutex>
#include <sstream>
#include <thread>

#include "json.hpp"
#include "serenade/bits.hpp"
#include "serenade/common.hpp"
#include "serenade/errors.hpp"
#include "serenade/merge_oracle.hpp"
#include "serenade/ouroboros_stats.hpp"
#include "serenade/populate.hpp"
#include "serenade/switch_sim.hpp"
#include "serenade/variants.hpp"

namespace serenade::cli {

namespace {

using nlohmann::json;

json load_config(const std::string& path) {
  if (path.empty()) return json::object();
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file '" + path + "'");
  try {
    json j = json::parse(in);
    if (!j.is_object()) throw ConfigError("config root must be an object");
    return j;
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("config parse error: ") + e.what());
  }
}

void check_keys(const json& obj, std::initializer_list<std::string_view> allowed,
                const std::string& where) {
  if (!obj.is_object()) throw ConfigError(where + " must be an object");
  for (const auto& [key, value] : obj.items())
    if (std::find(allowed.begin(), allowed.end(), key) == allowed.end())
      throw ConfigError("unknown key '" + key + "' in " + where);
}

template <class T>
T get_or(const json& obj, const char* key, T fallback, const std::string& where) {
  if (!obj.contains(key)) return fallback;
  try {
    return obj.at(key).get<T>();
  } catch (const json::exception&) {
    throw ConfigError("bad value for '" + std::string(key) + "' in " + where);
  }
}

json section(const json& root, const char* name) {
  check_keys(root, {"seed", "simulate", "stats", "verify", "msgcost"}, "config");
  return root.contains(name) ? root.at(name) : json::object();
}

std::uint64_t base_seed(const json& root, const RunManifest& m) {
  if (m.seed) return *m.seed;
  return get_or<std::uint64_t>(root, "seed", 1, "config");
}

std::vector<std::size_t> port_list(const json& obj, const char* key,
                                   std::vector<std::size_t> fallback, const std::string& where) {
  auto ns = get_or(obj, key, fallback, where);
  for (auto n : ns)
    if (!is_power_of_two(n))
      throw ConfigError("'" + std::string(key) + "' in " + where + ": " + std::to_string(n) +
                        " is not a power of 2");
  return ns;
}

/// Runs f(0..count-1) on up to `jobs` threads; the first exception is rethrown.
template <class F>
void parallel_for(std::size_t count, unsigned jobs, F f) {
  const unsigned workers = std::max(1u, std::min<unsigned>(jobs, static_cast<unsigned>(count)));
  if (workers <= 1) {
    for (std::size_t i = 0; i < count; ++i) f(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr error;
  std::mutex error_mutex;
  std::vector<std::thread> pool;
  for (unsigned w = 0; w < workers; ++w)
    pool.emplace_back([&] {
      for (std::size_t i; (i = next++) < count;) {
        try {
          f(i);
        } catch (...) {
          std::lock_guard lock(error_mutex);
          if (!error) error = std::current_exception();
        }
      }
    });
  for (auto& t : pool) t.join();
  if (error) std::rethrow_exception(error);
}

class Output {
 public:
  explicit Output(const std::string& path) {
    if (path.empty()) return;
    file_.open(path);
    if (!file_) throw ConfigError("cannot write output file '" + path + "'");
  }
  std::ostream& stream() { return file_.is_open() ? file_ : std::cout; }

 private:
  std::ofstream file_;
};

std::string fixed(double v, int digits = 6) {
  std::ostringstream os;
  os << std::fixed << std::setprecision(digits) << v;
  return os.str();
}

std::string general(double v) {
  std::ostringstream os;
  os << std::setprecision(10) << v;
  return os.str();
}

std::uint64_t grid_seed(std::uint64_t base, MatrixKind kind, double load) {
  return Rng(base, {static_cast<std::uint64_t>(kind), std::bit_cast<std::uint64_t>(load)}).next_u64();
}

/// Largest per-port bit total over the given kinds.
std::uint64_t max_port_bits(const MessageLog& log, std::initializer_list<MessageKind> kinds) {
  std::vector<std::uint64_t> bits(log.n_ports() + 1, 0);
  for (const auto& msg : log.messages())
    if (std::find(kinds.begin(), kinds.end(), msg.kind) != kinds.end()) bits[msg.src] += msg.size_bits;
  return *std::max_element(bits.begin() + 1, bits.end());
}

constexpr std::initializer_list<MessageKind> kCommonKinds{
    MessageKind::KnowledgeFwd, MessageKind::KnowledgeBwd, MessageKind::Iter0OutputToInput,
    MessageKind::Iter0Relay};

struct RandomInstance {
  FullMatching s_r;
  FullMatching s_g;
  WeightMatrix q;
};

RandomInstance random_instance(std::size_t n, Rng& rng, Weight max_weight) {
  RandomInstance in{FullMatching{sample_uniform_permutation(n, rng)},
                    FullMatching{sample_uniform_permutation(n, rng)}, WeightMatrix(n)};
  for (VertexId i = 1; i <= n; ++i) {
    in.q.set(i, in.s_r.output_of(i), rng.below(max_weight));
    in.q.set(i, in.s_g.output_of(i), rng.below(max_weight));
  }
  return in;
}

}  // namespace

MessageCostRow formula_cost(std::size_t n) {
  const double k = log2_exact(n);
  MessageCostRow r;
  r.n_ports = n;
  r.c_bytes = 2.0 * (1.0 + k) * (15.0 + k) / 8.0;
  r.o_bytes = r.c_bytes + (1.0 + k) * k / 8.0;
  r.e_bytes = r.o_bytes + MessageSizes::baton(static_cast<unsigned>(k)) / 8.0;
  return r;
}

MessageCostRow measured_cost(std::size_t n, std::uint64_t trials, std::uint64_t seed) {
  MessageCostRow r;
  r.n_ports = n;
  std::uint64_t c_bits = 0, o_bits = 0, e_bits = 0;
  for (std::uint64_t t = 0; t < trials; ++t) {
    Rng rng(seed, {n, t});
    const auto in = random_instance(n, rng, 100);
    CommonConfig cfg;
    cfg.halting = false;
    MessageLog plain(n);
    run_common(in.s_r, in.s_g, in.q, cfg, plain);
    c_bits = std::max(c_bits, max_port_bits(plain, kCommonKinds));

    cfg.mode = CommonMode::WithLeaders;
    MessageLog lead(n);
    const auto common = run_common(in.s_r, in.s_g, in.q, cfg, lead);
    o_bits = std::max(o_bits, max_port_bits(lead, kCommonKinds));
    e_serenade(common, in.s_r, in.s_g, lead);
    e_bits = std::max(e_bits, max_port_bits(lead, {MessageKind::KnowledgeFwd, MessageKind::KnowledgeBwd,
                                                   MessageKind::Iter0OutputToInput, MessageKind::Iter0Relay,
                                                   MessageKind::BinarySearchBaton}));
  }
  r.c_bytes = static_cast<double>(c_bits) / 8.0;
  r.o_bytes = static_cast<double>(o_bits) / 8.0;
  r.e_bytes = static_cast<double>(e_bits) / 8.0;
  return r;
}

std::vector<SuiteResult> run_verify_suites(const VerifyOptions& options) {
  SuiteResult e{"e_equals_serena"}, pop{"populate_parallel_equals_serial"},
      know{"knowledge_equals_oracle"}, cnd{"c_non_degenerative"};
  bool fault_pending = options.fault_injection;
  for (std::size_t n : options.n_ports) {
    log2_exact(n);
    for (std::uint64_t t = 0; t < options.trials; ++t) {
      Rng rng(options.seed, {n, t});
      const auto in = random_instance(n, rng, 1 + rng.below(8));
      MessageLog log(n, false);

      CommonConfig cfg;
      cfg.mode = CommonMode::WithLeaders;
      const auto lead = run_common(in.s_r, in.s_g, in.q, cfg, log);
      ++e.trials;
      if (!(e_serenade(lead, in.s_r, in.s_g, log).matching == serena_merge(in.s_r, in.s_g, in.q)))
        ++e.failures;

      const auto plain = run_common(in.s_r, in.s_g, in.q, {}, log);
      ++cnd.trials;
      if (matching_weight(c_serenade(plain, in.s_r, in.s_g), in.q) < matching_weight(in.s_g, in.q))
        ++cnd.failures;

      cfg.halting = false;
      auto full = run_common(in.s_r, in.s_g, in.q, cfg, log);
      if (fault_pending) {
        auto& victim = full.states[rng.below(n)];
        victim.phi_plus[rng.below(victim.levels())].red += 1;
        fault_pending = false;
      }
      const auto g = cycle_graph(in.s_r, in.s_g, in.q);
      bool ok = true;
      for (const auto& s : full.states)
        for (unsigned k = 0; k < s.levels(); ++k) {
          const auto h = std::int64_t{1} << k;
          const auto fw = g.walk(s.id, 0, h);
          const auto bw = g.walk(s.id, -h, 0);
          ok = ok && s.phi_plus[k] == KnowledgeSet{g.decomposition().power(s.id, h), fw.red, fw.green, false};
          ok = ok && s.phi_minus[k] == KnowledgeSet{g.decomposition().power(s.id, -h), bw.red, bw.green, false};
        }
      ++know.trials;
      if (!ok) ++know.failures;

      std::vector<std::optional<VertexId>> partial(n);
      for (VertexId i = 1; i <= n; ++i)
        if (rng.below(2)) partial[i - 1] = in.s_r.output_of(i);
      const PartialMatching pm(std::move(partial));
      ++pop.trials;
      if (!(populate_parallel(pm, log) == populate_serial(pm))) ++pop.failures;
    }
  }
  return {e, pop, know, cnd};
}

int cmd_simulate(const RunManifest& m, std::ostream& err) {
  const json root = load_config(m.config_path);
  const json sim = section(root, "simulate");
  const std::string where = "simulate";
  check_keys(sim, {"n_ports", "slots", "warmup_slots", "variants", "matrices", "loads", "burst",
                   "check_populate"},
             where);
  const std::uint64_t seed = base_seed(root, m);

  ExperimentConfig base;
  base.n_ports = get_or<std::size_t>(sim, "n_ports", 16, where);
  base.slots = get_or<std::uint64_t>(sim, "slots", 100000, where);
  base.warmup_slots = get_or<std::uint64_t>(sim, "warmup_slots", base.slots / 10, where);
  base.check_populate = get_or(sim, "check_populate", true, where);
  if (sim.contains("burst")) {
    const json& b = sim.at("burst");
    check_keys(b, {"p", "q"}, "simulate.burst");
    base.traffic.burst = BurstParams{get_or(b, "p", 0.5, "simulate.burst"),
                                     get_or(b, "q", 0.5, "simulate.burst")};
  }

  std::vector<SchedulerKind> variants;
  for (const auto& v : get_or<std::vector<std::string>>(
           sim, "variants", {"serena", "c", "o", "e", "sc:0.01", "so:0.01"}, where))
    variants.push_back(SchedulerKind::parse(v));
  std::vector<MatrixKind> matrices;
  for (const auto& v : get_or<std::vector<std::string>>(sim, "matrices", {"uniform"}, where))
    matrices.push_back(parse_matrix_kind(v));
  const auto loads = get_or<std::vector<double>>(sim, "loads", {0.5}, where);

  std::vector<ExperimentConfig> grid;
  for (auto mk : matrices)
    for (double load : loads)
      for (const auto& v : variants) {
        ExperimentConfig c = base;
        c.scheduler = v;
        c.traffic.matrix = mk;
        c.traffic.load = load;
        c.seed = grid_seed(seed, mk, load);
        c.validate();
        grid.push_back(c);
      }

  std::vector<DelayStats> results(grid.size());
  std::mutex err_mutex;
  parallel_for(grid.size(), m.jobs, [&](std::size_t i) {
    results[i] = run(grid[i]);
    std::lock_guard lock(err_mutex);
    err << "simulate: " << grid[i].scheduler.name() << ' ' << to_string(grid[i].traffic.matrix)
        << " load " << grid[i].traffic.load << " done\n";
  });

  Output out(m.out_path);
  auto& os = out.stream();
  os << "variant,matrix,load,n_ports,slots,seed,mean_delay,throughput,max_queue,"
        "msg_bits_per_port_per_slot\n";
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const auto& c = grid[i];
    const auto& r = results[i];
    os << c.scheduler.name() << ',' << to_string(c.traffic.matrix) << ',' << general(c.traffic.load)
       << ',' << c.n_ports << ',' << c.slots << ',' << c.seed << ',' << fixed(r.mean_delay) << ','
       << fixed(r.throughput) << ',' << r.max_total_queue << ','
       << fixed(r.msg_bits_per_port_per_slot) << '\n';
  }
  return kExitOk;
}

int cmd_stats(const RunManifest& m, std::ostream& err) {
  const json root = load_config(m.config_path);
  const json st = section(root, "stats");
  check_keys(st, {"n_ports", "samples"}, "stats");
  const auto ns = port_list(st, "n_ports", {64, 128, 256}, "stats");
  const auto samples = get_or<std::uint64_t>(st, "samples", 2000, "stats");
  const std::uint64_t seed = base_seed(root, m);

  std::vector<StatsReport> rows(ns.size());
  std::mutex err_mutex;
  parallel_for(ns.size(), m.jobs, [&](std::size_t i) {
    rows[i] = collect_stats(ns[i], samples, Rng(seed, {ns[i]}).next_u64());
    std::lock_guard lock(err_mutex);
    err << "stats: n=" << ns[i] << " done\n";
  });

  Output out(m.out_path);
  out.stream() << stats_csv_header() << '\n';
  for (const auto& r : rows) out.stream() << to_csv_row(r) << '\n';
  return kExitOk;
}

int cmd_verify(const RunManifest& m, std::ostream& err) {
  const json root = load_config(m.config_path);
  const json v = section(root, "verify");
  check_keys(v, {"trials", "n_ports", "fault_injection"}, "verify");
  VerifyOptions opt;
  opt.trials = get_or<std::uint64_t>(v, "trials", opt.trials, "verify");
  opt.n_ports = port_list(v, "n_ports", opt.n_ports, "verify");
  opt.fault_injection = get_or(v, "fault_injection", false, "verify");
  opt.seed = base_seed(root, m);
  if (opt.trials == 0 || opt.n_ports.empty())
    err << "verify: warning: no trials configured, suites pass vacuously\n";

  const auto suites = run_verify_suites(opt);
  Output out(m.out_path);
  out.stream() << "suite,trials,failures,status\n";
  bool all = true;
  for (const auto& s : suites) {
    out.stream() << s.name << ',' << s.trials << ',' << s.failures << ','
                 << (s.passed() ? "pass" : "FAIL") << '\n';
    all = all && s.passed();
  }
  return all ? kExitOk : kExitVerifyFailed;
}

int cmd_msgcost(const RunManifest& m, std::ostream& err) {
  const json root = load_config(m.config_path);
  const json mc = section(root, "msgcost");
  check_keys(mc, {"n_ports", "trials"}, "msgcost");
  const auto ns = port_list(mc, "n_ports", {64, 128, 256, 512, 1024}, "msgcost");
  const auto trials = get_or<std::uint64_t>(mc, "trials", 20, "msgcost");
  const std::uint64_t seed = base_seed(root, m);

  Output out(m.out_path);
  auto& os = out.stream();
  os << "n_ports,c_bytes,o_bytes,e_bytes,c_measured,o_measured,e_measured\n";
  bool match = true;
  for (std::size_t n : ns) {
    const auto f = formula_cost(n);
    os << n << ',' << general(f.c_bytes) << ',' << general(f.o_bytes) << ',' << general(f.e_bytes);
    if (trials > 0) {
      const auto x = measured_cost(n, trials, seed);
      os << ',' << general(x.c_bytes) << ',' << general(x.o_bytes) << ',' << general(x.e_bytes);
      match = match && x.c_bytes == f.c_bytes && x.o_bytes == f.o_bytes && x.e_bytes == f.e_bytes;
    } else {
      os << ",,,";
    }
    os << '\n';
    err << "msgcost: n=" << n << " done\n";
  }
  if (!match) err << "msgcost: measured totals differ from the encoding model\n";
  return match ? kExitOk : kExitVerifyFailed;
}

int dispatch(const RunManifest& m, std::ostream& err) {
  switch (m.command) {
    case Command::Simulate: return cmd_simulate(m, err);
    case Command::Stats: return cmd_stats(m, err);
    case Command::Verify: return cmd_verify(m, err);
    case Command::Msgcost: return cmd_msgcost(m, err);
  }
  return kExitConfigError;
}

}  // namespace serenade::cli
