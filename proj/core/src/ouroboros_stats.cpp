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

#include "serenade/ouroboros_stats.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

#include "serenade/bits.hpp"
#include "serenade/common.hpp"
#include "serenade/errors.hpp"
#include "serenade/matching.hpp"
#include "serenade/variants.hpp"

namespace serenade {

namespace {

struct CycleScan {
  std::uint64_t all_ouroboros = 0;
  std::uint64_t non_ouroboros_cycles = 0;
  std::vector<std::uint64_t> histogram;
};

CycleScan scan_cycles(std::size_t n, std::uint64_t samples, std::uint64_t seed) {
  log2_exact(n);
  const auto table = ouroboros_table(n);
  CycleScan s;
  s.histogram.assign(n + 1, 0);
  for (std::uint64_t t = 0; t < samples; ++t) {
    Rng rng = trial_rng(seed, t);
    const auto cd = decompose(sample_uniform_permutation(n, rng));
    bool all = true;
    for (const auto& c : cd.cycles()) {
      ++s.histogram[c.size()];
      if (!table[c.size()]) {
        all = false;
        ++s.non_ouroboros_cycles;
      }
    }
    s.all_ouroboros += all ? 1 : 0;
  }
  return s;
}

double ratio(std::uint64_t num, std::uint64_t den) {
  return den == 0 ? 0.0 : static_cast<double>(num) / static_cast<double>(den);
}

}  // namespace

Permutation sample_uniform_permutation(std::size_t n, Rng& rng) {
  if (n == 0) throw PreconditionError("sample_uniform_permutation: n must be positive");
  std::vector<VertexId> v(n);
  std::iota(v.begin(), v.end(), VertexId{1});
  for (std::size_t i = n - 1; i > 0; --i) std::swap(v[i], v[rng.below(i + 1)]);
  return Permutation(std::move(v));
}

Rng trial_rng(std::uint64_t seed, std::uint64_t trial) { return Rng(seed, {trial}); }

double mc_ouroboros_probability(std::size_t n, std::uint64_t samples, std::uint64_t seed) {
  return ratio(scan_cycles(n, samples, seed).all_ouroboros, samples);
}

double mc_non_ouroboros_cycle_count(std::size_t n, std::uint64_t samples, std::uint64_t seed) {
  return ratio(scan_cycles(n, samples, seed).non_ouroboros_cycles, samples);
}

BsearchMoves mc_bsearch_moves(std::size_t n, std::uint64_t samples, std::uint64_t seed) {
  const unsigned k = log2_exact(n);
  BsearchMoves r;
  std::uint64_t slot_sum = 0;
  std::uint64_t cycle_sum = 0;
  CommonConfig cfg;
  cfg.mode = CommonMode::WithLeaders;
  const FullMatching s_g{Permutation::identity(n)};
  WeightMatrix q(n);
  for (std::uint64_t t = 0; t < samples; ++t) {
    Rng rng = trial_rng(seed, t);
    const FullMatching s_r{sample_uniform_permutation(n, rng)};
    Rng weights(seed, {t, 1});
    for (VertexId i = 1; i <= n; ++i) {
      q.set(i, s_r.output_of(i), weights.below(100));
      q.set(i, i, weights.below(100));
    }
    MessageLog log(n, false);
    const auto common = run_common(s_r, s_g, q, cfg, log);
    unsigned slot_max = 0;
    bool searched = false;
    for (const auto& s : common.states) {
      if (s.verdict || s.cycle_leader() != s.id) continue;
      const auto b = binary_search_on_cycle(s.id, common, log);
      searched = true;
      slot_max = std::max(slot_max, b.admin_moves);
      cycle_sum += b.admin_moves;
      ++r.cycles_searched;
    }
    for (VertexId i = 1; i <= n; ++i) {
      q.set(i, s_r.output_of(i), 0);
      q.set(i, i, 0);
    }
    if (!searched) continue;
    ++r.permutations_with_search;
    slot_sum += slot_max;
    r.max_moves = std::max(r.max_moves, slot_max);
  }
  r.per_slot_over_log2n = ratio(slot_sum, r.permutations_with_search) / k;
  r.per_cycle_over_log2n = ratio(cycle_sum, r.cycles_searched) / k;
  return r;
}

double exact_ouroboros_probability(std::size_t n) {
  const auto table = ouroboros_table(n);
  std::vector<double> a(n + 1, 0.0);
  a[0] = 1.0;
  for (std::size_t m = 1; m <= n; ++m) {
    double s = 0.0;
    for (std::size_t l = 1; l <= m; ++l)
      if (table[l]) s += a[m - l];
    a[m] = s / static_cast<double>(m);
  }
  return a[n];
}

double exact_non_ouroboros_cycle_count(std::size_t n) {
  const auto table = ouroboros_table(n);
  double s = 0.0;
  for (std::size_t l = n; l >= 1; --l)
    if (!table[l]) s += 1.0 / static_cast<double>(l);
  return s;
}

StatsReport collect_stats(std::size_t n, std::uint64_t samples, std::uint64_t seed) {
  const auto scan = scan_cycles(n, samples, seed);
  StatsReport r;
  r.n_ports = n;
  r.samples = samples;
  r.p_ouroboros = ratio(scan.all_ouroboros, samples);
  r.mean_non_ouroboros_cycles = ratio(scan.non_ouroboros_cycles, samples);
  r.cycle_length_histogram = scan.histogram;
  if (n >= 2) {
    const auto b = mc_bsearch_moves(n, samples, seed);
    r.mean_bsearch_moves_over_log2n = b.per_slot_over_log2n;
    r.mean_bsearch_moves_per_cycle_over_log2n = b.per_cycle_over_log2n;
  }
  return r;
}

std::string stats_csv_header() {
  return "n_ports,samples,p_ouroboros,mean_non_ouroboros_cycles,mean_bsearch_moves_over_log2n,"
         "mean_bsearch_moves_per_cycle_over_log2n";
}

std::string to_csv_row(const StatsReport& r) {
  std::ostringstream os;
  os.precision(6);
  os << std::fixed << r.n_ports << ',' << r.samples << ',' << r.p_ouroboros << ','
     << r.mean_non_ouroboros_cycles << ',' << r.mean_bsearch_moves_over_log2n << ','
     << r.mean_bsearch_moves_per_cycle_over_log2n;
  return os.str();
}

}  // namespace serenade
