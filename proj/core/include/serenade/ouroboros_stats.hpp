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
#include <string>
#include <vector>

#include "serenade/permutation.hpp"
#include "serenade/rng.hpp"

namespace serenade {

/// Fisher-Yates shuffle of the identity.
Permutation sample_uniform_permutation(std::size_t n, Rng& rng);

/// Rng for trial `trial` of an estimator seeded with `seed`.
Rng trial_rng(std::uint64_t seed, std::uint64_t trial);

/// Fraction of sampled permutations all of whose cycle lengths are ouroboros.
double mc_ouroboros_probability(std::size_t n, std::uint64_t samples, std::uint64_t seed);

/// Mean number of non-ouroboros cycles per sampled permutation.
double mc_non_ouroboros_cycle_count(std::size_t n, std::uint64_t samples, std::uint64_t seed);

struct BsearchMoves {
  /// Mean over permutations with at least one non-ouroboros cycle of the
  /// largest baton count among its cycles, divided by log2 n.
  double per_slot_over_log2n = 0.0;
  /// Mean baton count over all non-ouroboros cycles, divided by log2 n.
  double per_cycle_over_log2n = 0.0;
  std::uint64_t permutations_with_search = 0;
  std::uint64_t cycles_searched = 0;
  unsigned max_moves = 0;
};

/// Runs the common stage with leaders and the binary search on sampled
/// permutations. Weights are drawn at random; move counts do not depend on them.
BsearchMoves mc_bsearch_moves(std::size_t n, std::uint64_t samples, std::uint64_t seed);

/// Exact P(every cycle length of a uniform permutation is ouroboros), from
/// the cycle-index recurrence a_m = (1/m) sum_{l in A, l <= m} a_{m-l}.
double exact_ouroboros_probability(std::size_t n);

/// Exact expected number of non-ouroboros cycles: sum over l not in A of 1/l.
double exact_non_ouroboros_cycle_count(std::size_t n);

struct StatsReport {
  std::size_t n_ports = 0;
  std::uint64_t samples = 0;
  double p_ouroboros = 0.0;
  double mean_non_ouroboros_cycles = 0.0;
  double mean_bsearch_moves_over_log2n = 0.0;
  double mean_bsearch_moves_per_cycle_over_log2n = 0.0;
  /// Index l holds the number of sampled cycles of length l.
  std::vector<std::uint64_t> cycle_length_histogram;
};

StatsReport collect_stats(std::size_t n, std::uint64_t samples, std::uint64_t seed);

std::string stats_csv_header();
std::string to_csv_row(const StatsReport& r);

}  // namespace serenade
