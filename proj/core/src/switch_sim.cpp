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

#include "serenade/switch_sim.hpp"

#include <algorithm>

#include "serenade/bits.hpp"
#include "serenade/errors.hpp"
#include "serenade/merge_oracle.hpp"
#include "serenade/populate.hpp"

namespace serenade {

namespace {
constexpr std::uint64_t kTrafficStream = 0;
constexpr std::uint64_t kCoinStream = 1;
constexpr std::uint64_t kTieStream = 2;
}  // namespace

VoqMatrix::VoqMatrix(std::size_t n) : q_(n), stamps_(n * n) {}

void VoqMatrix::enqueue(VertexId i, VertexId j, std::uint64_t slot) {
  stamps_[(i - 1) * size() + (j - 1)].push_back(slot);
  q_.increment(i, j);
  ++total_;
}

std::optional<std::uint64_t> VoqMatrix::dequeue(VertexId i, VertexId j) {
  auto& d = stamps_[(i - 1) * size() + (j - 1)];
  if (d.empty()) return std::nullopt;
  const std::uint64_t t = d.front();
  d.pop_front();
  q_.decrement(i, j);
  --total_;
  return t;
}

void ExperimentConfig::validate() const {
  log2_exact(n_ports);
  if (warmup_slots >= slots) throw ConfigError("warmup_slots must be smaller than slots");
  if (!(traffic.load >= 0.0 && traffic.load <= 1.0)) throw ConfigError("load must lie in [0, 1]");
  if (scheduler.is_hybrid() && !(scheduler.alpha >= 0.0 && scheduler.alpha <= 1.0))
    throw ConfigError("alpha must lie in [0, 1]");
}

SwitchSimulator::SwitchSimulator(const ExperimentConfig& config)
    : config_(config),
      traffic_((config.validate(), config.traffic), config.n_ports, Rng(config.seed, {kTrafficStream})),
      coin_(config.seed, {kCoinStream}),
      ties_(config.seed, {kTieStream}),
      voq_(config.n_ports),
      log_(config.n_ports, false),
      s_prev_{Permutation::identity(config.n_ports)} {}

const SlotRecord& SwitchSimulator::step() {
  const std::uint64_t t = slot_;
  const ArrivalGraph a = traffic_.next();
  std::uint32_t arrivals = 0;
  for (VertexId i = 1; i <= a.size(); ++i) {
    if (const auto& j = a.dest[i - 1]) {
      voq_.enqueue(i, *j, t);
      ++arrivals;
    }
  }

  const WeightMatrix& q = voq_.weights();
  const PartialMatching pm = prune(a, q, ties_);
  FullMatching s_r = populate_parallel(pm, log_);
  if (config_.check_populate && !(s_r == populate_serial(pm)))
    throw ProtocolError("parallel population disagrees with the serial reference");

  ScheduleOutcome out = schedule(config_.scheduler, s_r, s_prev_, q, coin_, log_);

  record_.slot = t;
  record_.weight_r = matching_weight(s_r, q);
  record_.weight_prev = matching_weight(s_prev_, q);
  record_.weight_s = matching_weight(out.matching, q);
  record_.iterations = out.iterations;
  record_.ran_e = out.ran_e;
  record_.arrivals = arrivals;

  std::uint32_t departures = 0;
  for (VertexId i = 1; i <= out.matching.size(); ++i) {
    if (const auto stamp = voq_.dequeue(i, out.matching.output_of(i))) {
      delay_sum_ += t - *stamp;
      ++departures;
    }
  }
  departures_ += departures;
  record_.departures = departures;
  record_.total_queue = voq_.total();
  record_.s_r = std::move(s_r);
  record_.s_prev = s_prev_;
  record_.s = out.matching;
  s_prev_ = std::move(out.matching);
  ++slot_;
  return record_;
}

DelayStats run(const ExperimentConfig& config, const SlotObserver& observer) {
  config.validate();
  SwitchSimulator sim(config);
  const std::uint64_t measured = config.slots - config.warmup_slots;

  DelayStats st;
  st.measured_slots = measured;
  std::uint64_t delay_base = 0;
  std::uint64_t dep_base = 0;
  std::uint64_t bits_base = 0;
  std::uint64_t iteration_sum = 0;
  std::array<double, 4> quarter_sum{};
  std::array<std::uint64_t, 4> quarter_len{};

  auto line_card_bits = [&] { return sim.log().total_bits() - sim.log().bits_sent_by(kController); };

  for (std::uint64_t t = 0; t < config.slots; ++t) {
    if (t == config.warmup_slots) {
      delay_base = sim.delay_sum();
      dep_base = sim.departures();
      bits_base = line_card_bits();
    }
    const SlotRecord& r = sim.step();
    if (observer) observer(r);
    if (t < config.warmup_slots) continue;
    st.arrivals += r.arrivals;
    iteration_sum += r.iterations;
    st.e_slots += r.ran_e ? 1 : 0;
    st.max_total_queue = std::max(st.max_total_queue, r.total_queue);
    const std::size_t quarter = std::min<std::uint64_t>(3, 4 * (t - config.warmup_slots) / measured);
    quarter_sum[quarter] += static_cast<double>(r.total_queue);
    ++quarter_len[quarter];
  }

  st.departures = sim.departures() - dep_base;
  const double port_slots = static_cast<double>(measured) * static_cast<double>(config.n_ports);
  st.throughput = static_cast<double>(st.departures) / port_slots;
  st.offered_load = static_cast<double>(st.arrivals) / port_slots;
  st.mean_delay = st.departures == 0 ? 0.0
                                     : static_cast<double>(sim.delay_sum() - delay_base) /
                                           static_cast<double>(st.departures);
  st.msg_bits_per_port_per_slot = static_cast<double>(line_card_bits() - bits_base) / port_slots;
  st.mean_iterations = static_cast<double>(iteration_sum) / static_cast<double>(measured);
  for (std::size_t k = 0; k < 4; ++k)
    st.queue_quarter_means[k] = quarter_len[k] ? quarter_sum[k] / static_cast<double>(quarter_len[k]) : 0.0;
  return st;
}

}  // namespace serenade
