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
#include <string_view>
#include <vector>

#include "serenade/common.hpp"
#include "serenade/merge_oracle.hpp"
#include "serenade/rng.hpp"

namespace serenade {

enum class Variant : std::uint8_t { Serena, C, O, E, SC, SO };

struct SchedulerKind {
  Variant variant = Variant::Serena;
  /// Probability of running E in a slot (hybrids only).
  double alpha = 0.01;
  Weight cow_threshold = kDefaultCowThreshold;

  /// Accepts serena, c, o, e, sc[:alpha], so[:alpha[:threshold]], with an
  /// optional "-serenade" suffix on the variant name. Throws ConfigError.
  static SchedulerKind parse(std::string_view text);
  std::string name() const;
  bool is_hybrid() const { return variant == Variant::SC || variant == Variant::SO; }
  bool operator==(const SchedulerKind&) const = default;
};

struct LeaderDecision {
  VertexId leader = 0;
  bool pick_red = false;
  bool operator==(const LeaderDecision&) const = default;
};

struct OSerenadeResult {
  FullMatching matching;
  /// One entry per non-ouroboros cycle, ascending leader id.
  std::vector<LeaderDecision> decisions;
  /// Bitmap broadcast form: bit i-1 set iff vertex i takes its red edge.
  std::vector<std::uint8_t> bitmap;
};

struct ESerenadeResult {
  FullMatching matching;
  std::vector<LeaderDecision> decisions;
  /// Largest baton count over the slot's binary searches.
  unsigned max_admin_moves = 0;
};

struct BinarySearchResult {
  Weight red = 0;
  Weight green = 0;
  unsigned admin_moves = 0;
  /// Length of the closed walk whose weights were returned.
  std::uint64_t walk_edges = 0;
};

FullMatching c_serenade(const CommonResult& common, const FullMatching& s_r,
                        const FullMatching& s_g);

/// Leader decisions, controller report and broadcast are logged into `log`.
OSerenadeResult o_serenade(const CommonResult& common, const FullMatching& s_r,
                           const FullMatching& s_g, MessageLog& log);

ESerenadeResult e_serenade(const CommonResult& common, const FullMatching& s_r,
                           const FullMatching& s_g, MessageLog& log);

/// Distributed binary search started at sigma^N(leader). Baton messages are
/// logged with iteration numbers from `first_iteration` upward.
BinarySearchResult binary_search_on_cycle(VertexId leader, const CommonResult& common,
                                          MessageLog& log, std::uint32_t first_iteration = 0);

struct ScheduleOutcome {
  FullMatching matching;
  /// Iterations of the slot's decision procedure, common stage included.
  unsigned iterations = 0;
  bool ran_e = false;
};

/// Runs one slot of `kind` on (s_r, s_g, q). The hybrid coin is drawn from
/// `coin` first, and only for hybrid kinds.
ScheduleOutcome schedule(const SchedulerKind& kind, const FullMatching& s_r,
                         const FullMatching& s_g, const WeightMatrix& q, Rng& coin,
                         MessageLog& log);

/// SC / SO step; throws PreconditionError for non-hybrid kinds.
FullMatching hybrid_step(const SchedulerKind& kind, Rng& coin, const FullMatching& s_r,
                         const FullMatching& s_g, const WeightMatrix& q, MessageLog& log);

}  // namespace serenade
