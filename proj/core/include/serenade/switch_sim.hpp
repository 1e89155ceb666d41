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

#include <array>
#include <cstdint>
#include <deque>
#include <functional>
#include <optional>
#include <vector>

#include "serenade/matching.hpp"
#include "serenade/message_log.hpp"
#include "serenade/rng.hpp"
#include "serenade/traffic.hpp"
#include "serenade/variants.hpp"
#include "serenade/weight_matrix.hpp"

namespace serenade {

/// Virtual output queues: packet counts plus per-cell arrival timestamps.
class VoqMatrix {
 public:
  explicit VoqMatrix(std::size_t n = 0);

  std::size_t size() const { return q_.size(); }
  const WeightMatrix& weights() const { return q_; }
  Weight at(VertexId i, VertexId j) const { return q_.at(i, j); }
  Weight total() const { return total_; }

  void enqueue(VertexId i, VertexId j, std::uint64_t slot);
  /// Removes the oldest packet of (i, j) and returns its arrival slot.
  std::optional<std::uint64_t> dequeue(VertexId i, VertexId j);

 private:
  WeightMatrix q_;
  std::vector<std::deque<std::uint64_t>> stamps_;
  Weight total_ = 0;
};

struct ExperimentConfig {
  std::size_t n_ports = 16;
  SchedulerKind scheduler;
  TrafficSpec traffic;
  std::uint64_t slots = 10000;
  std::uint64_t warmup_slots = 1000;
  std::uint64_t seed = 1;
  /// Compare populate_parallel against populate_serial every slot.
  bool check_populate = true;

  /// Throws ConfigError when violated.
  void validate() const;
};

/// Everything observable about one slot, read after arrivals are enqueued.
struct SlotRecord {
  std::uint64_t slot = 0;
  FullMatching s_r;
  FullMatching s_prev;
  FullMatching s;
  Weight weight_r = 0;
  Weight weight_prev = 0;
  Weight weight_s = 0;
  unsigned iterations = 0;
  bool ran_e = false;
  std::uint32_t arrivals = 0;
  std::uint32_t departures = 0;
  /// Total queued packets after departures.
  Weight total_queue = 0;
};

struct DelayStats {
  /// Mean of (departure slot - arrival slot) over packets departing after warmup.
  double mean_delay = 0.0;
  /// Departures per port per measured slot.
  double throughput = 0.0;
  /// Arrivals per port per measured slot.
  double offered_load = 0.0;
  Weight max_total_queue = 0;
  std::uint64_t arrivals = 0;
  std::uint64_t departures = 0;
  std::uint64_t measured_slots = 0;
  /// Line-card message bits per port per measured slot.
  double msg_bits_per_port_per_slot = 0.0;
  double mean_iterations = 0.0;
  std::uint64_t e_slots = 0;
  /// Mean total queue over each quarter of the measured window.
  std::array<double, 4> queue_quarter_means{};
};

/// One switch driven slot by slot. Traffic, hybrid-coin and prune-tie draws
/// come from three independent streams of the experiment seed.
class SwitchSimulator {
 public:
  explicit SwitchSimulator(const ExperimentConfig& config);

  const SlotRecord& step();

  std::uint64_t slot() const { return slot_; }
  const VoqMatrix& voq() const { return voq_; }
  const FullMatching& current_matching() const { return s_prev_; }
  const MessageLog& log() const { return log_; }
  std::uint64_t delay_sum() const { return delay_sum_; }
  std::uint64_t departures() const { return departures_; }

 private:
  ExperimentConfig config_;
  TrafficGenerator traffic_;
  Rng coin_;
  Rng ties_;
  VoqMatrix voq_;
  MessageLog log_;
  FullMatching s_prev_;
  SlotRecord record_;
  std::uint64_t slot_ = 0;
  std::uint64_t delay_sum_ = 0;
  std::uint64_t departures_ = 0;
};

using SlotObserver = std::function<void(const SlotRecord&)>;

/// Runs config.slots slots and aggregates the post-warmup window. The
/// observer, if any, sees every slot including warmup.
DelayStats run(const ExperimentConfig& config, const SlotObserver& observer = {});

}  // namespace serenade
