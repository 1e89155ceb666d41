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

#include "serenade/common.hpp"

#include <algorithm>
#include <cstdint>

#include "serenade/bits.hpp"
#include "serenade/errors.hpp"

namespace serenade {

namespace {

struct Envelope {
  VertexId src = 0;
  KnowledgeSet knowledge;
  VertexId leader = 0;
  bool present = false;
};

bool leaders_on(const CommonConfig& c) { return c.mode != CommonMode::Plain; }
bool cow_on(const CommonConfig& c) { return c.mode == CommonMode::WithLeadersAndCow; }

std::uint32_t knowledge_bits(unsigned log2n, const CommonConfig& c, bool with_leader) {
  unsigned bits = MessageSizes::knowledge(log2n);
  if (with_leader && leaders_on(c)) bits += MessageSizes::leader_field(log2n);
  if (cow_on(c)) bits += MessageSizes::cow_flag();
  return bits;
}

KnowledgeSet concat(const KnowledgeSet& first, const KnowledgeSet& second, VertexId endpoint) {
  return {endpoint, first.red + second.red, first.green + second.green,
          first.overweight || second.overweight};
}

void update_presumptive(VertexState& s, unsigned k) {
  const VertexId cand = s.precinct_leader[k];
  if (!s.presumptive_leader || cand < s.presumptive_leader->leader)
    s.presumptive_leader = PresumptiveLeader{cand, k};
}

void settle(VertexState& s, unsigned k, const CommonConfig& config) {
  if (leaders_on(config)) update_presumptive(s, k);
  if (auto v = check_ouroboros(s, k, config.detect_ouroboros); v && !s.verdict) s.verdict = v;
}

void apply_halting(std::vector<VertexState>& states, const CommonConfig& config) {
  if (!config.halting) return;
  for (auto& s : states)
    if (s.verdict) s.halted = true;
}

}  // namespace

std::size_t InvertedIndex::nonzero_count() const {
  return static_cast<std::size_t>(
      std::count_if(slots_.begin(), slots_.end(), [](std::uint8_t b) { return b != 0; }));
}

unsigned MessageSizes::baton(unsigned log2n) { return 15 + ceil_log2(log2n); }

std::vector<bool> ouroboros_table(std::size_t n) {
  const unsigned kmax = log2_exact(n);
  std::vector<bool> in(n + 1, false);
  auto mark_divisors = [&](std::uint64_t x) {
    for (std::size_t l = 1; l <= n; ++l)
      if (x % l == 0) in[l] = true;
  };
  for (unsigned m = 0; m <= kmax; ++m) {
    const std::uint64_t pm = std::uint64_t{1} << m;
    mark_divisors(pm);
    for (unsigned a = 0; a < m; ++a) {
      const std::uint64_t pa = std::uint64_t{1} << a;
      mark_divisors(pm - pa);
      mark_divisors(pm + pa);
    }
  }
  return in;
}

std::vector<std::size_t> ouroboros_numbers(std::size_t n) {
  const auto in = ouroboros_table(n);
  std::vector<std::size_t> out;
  for (std::size_t l = 1; l <= n; ++l)
    if (in[l]) out.push_back(l);
  return out;
}

std::vector<VertexState> make_states(std::size_t n, const CommonConfig& config) {
  const unsigned levels = log2_exact(n) + 1;
  std::vector<VertexState> states(n);
  for (std::size_t i = 0; i < n; ++i) {
    auto& s = states[i];
    s.id = static_cast<VertexId>(i + 1);
    s.phi_plus.reserve(levels);
    s.phi_minus.reserve(levels);
    if (leaders_on(config)) s.precinct_leader.reserve(levels);
    s.forward = InvertedIndex(n);
    s.backward = InvertedIndex(n);
  }
  return states;
}

void run_iteration0(const FullMatching& s_r, const FullMatching& s_g, const WeightMatrix& q,
                    const CommonConfig& config, std::vector<VertexState>& states, MessageLog& log) {
  const std::size_t n = states.size();
  if (s_r.size() != n || s_g.size() != n || q.size() != n)
    throw DimensionError("iteration 0: size mismatch");
  const unsigned log2n = log2_exact(n);
  const Permutation r_inv = inverse(s_r.pairing);
  const Permutation g_inv = inverse(s_g.pairing);

  // Round 1: output j tells its green partner who its red partner is.
  std::vector<Envelope> at_green(n);
  for (VertexId j = 1; j <= n; ++j) {
    const VertexId i_r = r_inv(j);
    const VertexId i_g = g_inv(j);
    log.record({j, i_g, MessageKind::Iter0OutputToInput, knowledge_bits(log2n, config, true), 0});
    at_green[i_g - 1] = {j, {i_r, q.at(i_r, j), 0, false}, 0, true};
  }

  // i_g now holds phi_{0-}; round 2 relays it to i_r as phi_{0+}.
  std::vector<Envelope> at_red(n);
  for (VertexId i_g = 1; i_g <= n; ++i_g) {
    auto& s = states[i_g - 1];
    const Envelope& e = at_green[i_g - 1];
    if (!e.present) throw ProtocolError("iteration 0: missing output message");
    KnowledgeSet minus = e.knowledge;
    minus.green = q.at(i_g, e.src);
    minus.overweight = cow_on(config) && std::max(minus.red, minus.green) > config.cow_threshold;
    s.phi_minus.push_back(minus);
    log.record({i_g, minus.endpoint, MessageKind::Iter0Relay, knowledge_bits(log2n, config, false), 0});
    at_red[minus.endpoint - 1] = {i_g, {i_g, minus.red, minus.green, minus.overweight}, 0, true};
  }

  for (VertexId i = 1; i <= n; ++i) {
    auto& s = states[i - 1];
    const Envelope& e = at_red[i - 1];
    if (!e.present) throw ProtocolError("iteration 0: missing relay");
    s.phi_plus.push_back(e.knowledge);
    if (leaders_on(config)) s.precinct_leader.push_back(std::min(i, s.phi_minus[0].endpoint));
    settle(s, 0, config);
  }
  apply_halting(states, config);
}

void run_iteration_k(unsigned k, const CommonConfig& config, std::vector<VertexState>& states,
                     MessageLog& log) {
  if (k == 0) throw PreconditionError("run_iteration_k: k must be positive");
  const std::size_t n = states.size();
  const unsigned log2n = log2_exact(n);
  const bool leaders = leaders_on(config);

  // from_down[i]: phi_{(k-1)+} of i_D; from_up[i]: phi_{(k-1)-} of i_U.
  std::vector<Envelope> from_down(n);
  std::vector<Envelope> from_up(n);
  for (auto& s : states) {
    if (s.halted) continue;
    if (s.levels() != k) throw ProtocolError("iteration k: level mismatch");
    const VertexId up = s.phi_minus[k - 1].endpoint;
    const VertexId down = s.phi_plus[k - 1].endpoint;
    log.record({s.id, up, MessageKind::KnowledgeFwd, knowledge_bits(log2n, config, false), k});
    from_down[up - 1] = {s.id, s.phi_plus[k - 1], 0, true};
    log.record({s.id, down, MessageKind::KnowledgeBwd, knowledge_bits(log2n, config, true), k});
    from_up[down - 1] = {s.id, s.phi_minus[k - 1], leaders ? s.precinct_leader[k - 1] : 0, true};
  }

  for (auto& s : states) {
    const bool got = from_down[s.id - 1].present || from_up[s.id - 1].present;
    if (s.halted) {
      if (got) throw ProtocolError("iteration k: message reached a halted vertex");
      continue;
    }
    const Envelope& fwd = from_down[s.id - 1];
    const Envelope& bwd = from_up[s.id - 1];
    if (!fwd.present || !bwd.present) throw ProtocolError("iteration k: missing message");
    s.phi_plus.push_back(concat(s.phi_plus[k - 1], fwd.knowledge, fwd.knowledge.endpoint));
    s.phi_minus.push_back(concat(bwd.knowledge, s.phi_minus[k - 1], bwd.knowledge.endpoint));
    if (leaders) s.precinct_leader.push_back(std::min(s.precinct_leader[k - 1], bwd.leader));
    settle(s, k, config);
  }
  apply_halting(states, config);
}

std::optional<OuroborosVerdict> check_ouroboros(VertexState& state, unsigned k, bool detect) {
  if (state.levels() <= k) throw PreconditionError("check_ouroboros: level not computed");
  const VertexId target = state.phi_plus[k].endpoint;
  std::optional<OuroborosVerdict> v;
  if (detect) {
    if (target == state.id) {
      v = OuroborosVerdict{Situation::SelfHit, k, 0, {}};
    } else if (const unsigned b = state.forward.lookup(target); b != 0) {
      v = OuroborosVerdict{Situation::ForwardForward, b - 1, k, {}};
    } else if (const unsigned b2 = state.backward.lookup(target); b2 != 0) {
      v = OuroborosVerdict{Situation::BackwardForward, b2 - 1, k, {}};
    }
    if (v) v->sign = resolve_cycle_sign(v->situation, v->n, v->m, state);
  }
  state.forward.insert(target, k);
  state.backward.insert(state.phi_minus[k].endpoint, k);
  return v;
}

CycleSign resolve_cycle_sign(Situation situation, unsigned n, unsigned m,
                             const VertexState& state) {
  std::int64_t red = 0;
  std::int64_t green = 0;
  auto add = [&](const KnowledgeSet& ks, int sign) {
    red += sign * static_cast<std::int64_t>(ks.red);
    green += sign * static_cast<std::int64_t>(ks.green);
  };
  switch (situation) {
    case Situation::SelfHit:
      add(state.phi_plus.at(n), 1);
      break;
    case Situation::ForwardForward:
      add(state.phi_plus.at(m), 1);
      add(state.phi_plus.at(n), -1);
      break;
    case Situation::BackwardForward:
      add(state.phi_minus.at(n), 1);
      add(state.phi_plus.at(m), 1);
      break;
  }
  return red > green ? CycleSign::RedHeavier : CycleSign::GreenHeavierOrEqual;
}

CommonResult run_common(const FullMatching& s_r, const FullMatching& s_g, const WeightMatrix& q,
                        const CommonConfig& config, MessageLog& log) {
  CommonResult result;
  result.config = config;
  result.log2n = log2_exact(s_r.size());
  result.states = make_states(s_r.size(), config);
  run_iteration0(s_r, s_g, q, config, result.states, log);
  result.iterations_executed = 1;
  for (unsigned k = 1; k <= result.log2n; ++k) {
    const bool any_active = std::any_of(result.states.begin(), result.states.end(),
                                        [](const VertexState& s) { return !s.halted; });
    if (!any_active) break;
    run_iteration_k(k, config, result.states, log);
    result.iterations_executed = k + 1;
  }
  return result;
}

}  // namespace serenade
