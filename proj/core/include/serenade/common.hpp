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

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "serenade/matching.hpp"
#include "serenade/message_log.hpp"
#include "serenade/permutation.hpp"
#include "serenade/weight_matrix.hpp"

namespace serenade {

/// What a vertex knows about the walk of 2^k hops leaving it (phi_{k+}) or
/// arriving at it (phi_{k-}).
struct KnowledgeSet {
  VertexId endpoint = 0;
  Weight red = 0;
  Weight green = 0;
  /// OR of the per-edge overweight flags along the walk (COW mode only).
  bool overweight = false;

  bool operator==(const KnowledgeSet&) const = default;
};

enum class Situation : std::uint8_t {
  SelfHit,          // i = sigma^{2^n}(i)
  ForwardForward,   // sigma^{2^n}(i) = sigma^{2^m}(i), n < m
  BackwardForward,  // sigma^{-2^n}(i) = sigma^{2^m}(i), n < m
};

enum class CycleSign : std::uint8_t { RedHeavier, GreenHeavierOrEqual };

struct OuroborosVerdict {
  Situation situation = Situation::SelfHit;
  unsigned n = 0;
  unsigned m = 0;  // unused for SelfHit
  CycleSign sign = CycleSign::GreenHeavierOrEqual;

  bool operator==(const OuroborosVerdict&) const = default;
};

/// Inverted index B[1..N] over the endpoints held in a D array: B[v] = k+1
/// iff D[k].endpoint = v for the first such k, else 0.
class InvertedIndex {
 public:
  InvertedIndex() = default;
  explicit InvertedIndex(std::size_t n) : slots_(n, 0) {}

  /// 0 when absent, else level + 1.
  unsigned lookup(VertexId v) const { return slots_[v - 1]; }
  void insert(VertexId v, unsigned level) {
    if (slots_[v - 1] == 0) slots_[v - 1] = static_cast<std::uint8_t>(level + 1);
  }
  /// Clears exactly the entries referenced by `d`.
  void reset(std::span<const KnowledgeSet> d) {
    for (const auto& ks : d) slots_[ks.endpoint - 1] = 0;
  }
  std::size_t nonzero_count() const;

 private:
  std::vector<std::uint8_t> slots_;
};

struct PresumptiveLeader {
  VertexId leader = 0;
  unsigned installed_at = 0;
};

struct VertexState {
  VertexId id = 0;
  /// D arrays: phi_plus[k] = phi_{k+}, phi_minus[k] = phi_{k-}.
  std::vector<KnowledgeSet> phi_plus;
  std::vector<KnowledgeSet> phi_minus;
  InvertedIndex forward;
  InvertedIndex backward;
  /// precinct_leader[k] = min id on sigma^{-2^k}(i) ~> i (leader modes only).
  std::vector<VertexId> precinct_leader;
  std::optional<PresumptiveLeader> presumptive_leader;
  bool halted = false;
  std::optional<OuroborosVerdict> verdict;

  unsigned levels() const { return static_cast<unsigned>(phi_plus.size()); }
  /// Final precinct leader, which is the cycle minimum once all levels ran.
  VertexId cycle_leader() const { return precinct_leader.back(); }
};

enum class CommonMode : std::uint8_t { Plain, WithLeaders, WithLeadersAndCow };

inline constexpr Weight kDefaultCowThreshold = 10000;

struct CommonConfig {
  CommonMode mode = CommonMode::Plain;
  /// Halt a cycle as soon as it is found to be ouroboros.
  bool halting = true;
  /// Run the per-iteration ouroboros check at all.
  bool detect_ouroboros = true;
  /// An edge is overweight when its red or green weight exceeds this.
  Weight cow_threshold = kDefaultCowThreshold;
};

struct CommonResult {
  std::vector<VertexState> states;
  unsigned log2n = 0;
  unsigned iterations_executed = 0;
  CommonConfig config;

  std::size_t size() const { return states.size(); }
  const VertexState& state(VertexId v) const { return states[v - 1]; }
  bool has_leaders() const { return config.mode != CommonMode::Plain; }
};

/// Sorted list of ouroboros numbers w.r.t. n: positive divisors (<= n) of
/// 2^a for a <= log2 n, and of 2^m -/+ 2^a for a < m <= log2 n.
std::vector<std::size_t> ouroboros_numbers(std::size_t n);

/// Membership table for ouroboros_numbers(n); index = cycle length.
std::vector<bool> ouroboros_table(std::size_t n);

/// Payload sizes of the accounting model.
struct MessageSizes {
  /// Weight difference (14 magnitude bits + sign) plus an endpoint id.
  static unsigned knowledge(unsigned log2n) { return 15 + log2n; }
  static unsigned leader_field(unsigned log2n) { return log2n; }
  static unsigned cow_flag() { return 1; }
  /// Weight difference plus the search-depth field.
  static unsigned baton(unsigned log2n);
  static unsigned leader_report(unsigned log2n) { return log2n + 1; }
  static unsigned populate(unsigned log2n) { return log2n; }
};

/// Fresh per-vertex state for an n-port run.
std::vector<VertexState> make_states(std::size_t n, const CommonConfig& config);

/// Two message rounds: output j -> input i_g, then i_g -> i_r.
void run_iteration0(const FullMatching& s_r, const FullMatching& s_g, const WeightMatrix& q,
                    const CommonConfig& config, std::vector<VertexState>& states, MessageLog& log);

/// One distance-doubling iteration over all non-halted vertices.
void run_iteration_k(unsigned k, const CommonConfig& config, std::vector<VertexState>& states,
                     MessageLog& log);

/// Looks sigma^{2^k}(i) up against self and the forward/backward inverted
/// indices, then files level k into both indices.
std::optional<OuroborosVerdict> check_ouroboros(VertexState& state, unsigned k,
                                                bool detect = true);

/// Orders the red and green cycle weights from the coiling walk that the
/// situation closes; ties map to GreenHeavierOrEqual.
CycleSign resolve_cycle_sign(Situation situation, unsigned n, unsigned m,
                             const VertexState& state);

/// Iteration 0 followed by iterations 1..log2 N with ouroboros checks.
CommonResult run_common(const FullMatching& s_r, const FullMatching& s_g, const WeightMatrix& q,
                        const CommonConfig& config, MessageLog& log);

}  // namespace serenade
