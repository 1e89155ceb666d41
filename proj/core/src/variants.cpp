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

#include "serenade/variants.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

#include "serenade/errors.hpp"

namespace serenade {

namespace {

std::vector<std::string> split(std::string_view text, char sep) {
  std::vector<std::string> parts;
  std::size_t start = 0;
  while (true) {
    const auto pos = text.find(sep, start);
    parts.emplace_back(text.substr(start, pos - start));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return parts;
}

double parse_double(const std::string& s, std::string_view what) {
  try {
    std::size_t used = 0;
    const double v = std::stod(s, &used);
    if (used != s.size()) throw ConfigError("");
    return v;
  } catch (const std::exception&) {
    throw ConfigError("scheduler: bad " + std::string(what) + " '" + s + "'");
  }
}

FullMatching assemble(const std::vector<SubMatching>& picks, const FullMatching& s_r,
                      const FullMatching& s_g) {
  std::vector<VertexId> out(picks.size());
  std::vector<bool> used(picks.size() + 1, false);
  for (VertexId i = 1; i <= picks.size(); ++i) {
    const VertexId o = picks[i - 1] == SubMatching::Red ? s_r.output_of(i) : s_g.output_of(i);
    if (used[o]) throw ProtocolError("assembled matching has an output collision");
    used[o] = true;
    out[i - 1] = o;
  }
  return FullMatching{Permutation(std::move(out))};
}

SubMatching from_sign(CycleSign s) {
  return s == CycleSign::RedHeavier ? SubMatching::Red : SubMatching::Green;
}

void require_size(const CommonResult& common, const FullMatching& s_r, const FullMatching& s_g) {
  if (common.size() != s_r.size() || common.size() != s_g.size())
    throw DimensionError("variant: size mismatch with common stage");
}

void require_leaders(const CommonResult& common) {
  if (!common.has_leaders()) throw PreconditionError("variant needs a leader-election common stage");
  for (const auto& s : common.states)
    if (!s.verdict && s.levels() != common.log2n + 1)
      throw ProtocolError("non-ouroboros vertex did not complete all iterations");
}

bool is_cycle_leader(const VertexState& s) { return !s.verdict && s.cycle_leader() == s.id; }

/// Applies ouroboros verdicts and per-leader decisions (indexed by leader id).
FullMatching apply_decisions(const CommonResult& common, const std::vector<LeaderDecision>& ds,
                             const FullMatching& s_r, const FullMatching& s_g) {
  std::vector<std::int8_t> by_leader(common.size() + 1, -1);
  for (const auto& d : ds) by_leader[d.leader] = d.pick_red ? 1 : 0;
  std::vector<SubMatching> picks(common.size());
  for (const auto& s : common.states) {
    if (s.verdict) {
      picks[s.id - 1] = from_sign(s.verdict->sign);
      continue;
    }
    const std::int8_t d = by_leader[s.cycle_leader()];
    if (d < 0) throw ProtocolError("no decision broadcast for this cycle's leader");
    picks[s.id - 1] = d ? SubMatching::Red : SubMatching::Green;
  }
  return assemble(picks, s_r, s_g);
}

void log_report_and_broadcast(const CommonResult& common, const std::vector<LeaderDecision>& ds,
                              std::uint32_t iteration, MessageLog& log) {
  if (ds.empty()) return;
  const auto report = MessageSizes::leader_report(common.log2n);
  for (const auto& d : ds) log.record({d.leader, kController, MessageKind::LeaderReport, report, iteration});
  const std::uint64_t list_bits = ds.size() * std::uint64_t{report};
  const auto bits = static_cast<std::uint32_t>(std::min<std::uint64_t>(list_bits, common.size()));
  log.record({kController, kController, MessageKind::Broadcast, bits, iteration});
}

}  // namespace

SchedulerKind SchedulerKind::parse(std::string_view text) {
  std::string lower(text);
  std::transform(lower.begin(), lower.end(), lower.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  auto parts = split(lower, ':');
  std::string head = parts[0];
  if (const auto pos = head.find("-serenade"); pos != std::string::npos && pos + 9 == head.size())
    head.erase(pos);

  SchedulerKind k;
  if (head == "serena") k.variant = Variant::Serena;
  else if (head == "c") k.variant = Variant::C;
  else if (head == "o") k.variant = Variant::O;
  else if (head == "e") k.variant = Variant::E;
  else if (head == "sc") k.variant = Variant::SC;
  else if (head == "so") k.variant = Variant::SO;
  else throw ConfigError("unknown scheduler '" + std::string(text) + "'");

  const std::size_t max_parts = k.variant == Variant::SC ? 2 : k.variant == Variant::SO ? 3 : 1;
  if (parts.size() > max_parts) throw ConfigError("too many parameters in '" + std::string(text) + "'");
  if (parts.size() > 1) k.alpha = parse_double(parts[1], "alpha");
  if (parts.size() > 2) {
    const double t = parse_double(parts[2], "threshold");
    if (t < 0) throw ConfigError("scheduler: negative threshold");
    k.cow_threshold = static_cast<Weight>(t);
  }
  if (k.is_hybrid() && !(k.alpha >= 0.0 && k.alpha <= 1.0))
    throw ConfigError("scheduler: alpha must lie in [0, 1]");
  return k;
}

std::string SchedulerKind::name() const {
  std::ostringstream os;
  switch (variant) {
    case Variant::Serena: return "serena";
    case Variant::C: return "c";
    case Variant::O: return "o";
    case Variant::E: return "e";
    case Variant::SC: os << "sc:" << alpha; break;
    case Variant::SO: os << "so:" << alpha << ':' << cow_threshold; break;
  }
  return os.str();
}

FullMatching c_serenade(const CommonResult& common, const FullMatching& s_r,
                        const FullMatching& s_g) {
  require_size(common, s_r, s_g);
  std::vector<SubMatching> picks(common.size(), SubMatching::Green);
  for (const auto& s : common.states)
    if (s.verdict) picks[s.id - 1] = from_sign(s.verdict->sign);
  return assemble(picks, s_r, s_g);
}

OSerenadeResult o_serenade(const CommonResult& common, const FullMatching& s_r,
                           const FullMatching& s_g, MessageLog& log) {
  require_size(common, s_r, s_g);
  require_leaders(common);
  const bool cow = common.config.mode == CommonMode::WithLeadersAndCow;
  OSerenadeResult r;
  for (const auto& s : common.states) {
    if (!is_cycle_leader(s)) continue;
    const KnowledgeSet& walk = s.phi_plus[common.log2n];
    const bool red = walk.red > walk.green && !(cow && walk.overweight);
    r.decisions.push_back({s.id, red});
  }
  log_report_and_broadcast(common, r.decisions, common.iterations_executed, log);
  r.matching = apply_decisions(common, r.decisions, s_r, s_g);
  r.bitmap.resize(common.size());
  for (VertexId i = 1; i <= common.size(); ++i)
    r.bitmap[i - 1] = r.matching.output_of(i) == s_r.output_of(i) &&
                      r.matching.output_of(i) != s_g.output_of(i);
  return r;
}

BinarySearchResult binary_search_on_cycle(VertexId leader, const CommonResult& common,
                                          MessageLog& log, std::uint32_t first_iteration) {
  if (!common.has_leaders()) throw PreconditionError("binary search needs leader election");
  if (leader == 0 || leader > common.size()) throw PreconditionError("binary search: bad leader id");
  const VertexState& head = common.state(leader);
  if (head.verdict) throw ProtocolError("binary search called on an ouroboros cycle");
  const unsigned big_k = common.log2n;
  if (head.levels() != big_k + 1 || head.cycle_leader() != leader)
    throw ProtocolError("binary search: vertex is not a cycle leader");

  const auto baton_bits = MessageSizes::baton(big_k);
  VertexId i = head.phi_plus[big_k].endpoint;
  unsigned k = big_k;
  const KnowledgeSet& start = common.state(i).phi_minus[big_k];
  BinarySearchResult r{start.red, start.green, 0, std::uint64_t{1} << big_k};

  auto pass = [&](VertexId to, const KnowledgeSet& right) {
    r.red -= right.red;
    r.green -= right.green;
    r.walk_edges -= std::uint64_t{1} << (k - 1);
    log.record({i, to, MessageKind::BinarySearchBaton, baton_bits, first_iteration + r.admin_moves});
    ++r.admin_moves;
  };

  while (i != leader) {
    if (k == 0) throw ProtocolError("binary search ran out of levels");
    const VertexState& admin = common.state(i);
    const KnowledgeSet& right = admin.phi_minus[k - 1];
    const VertexId mid = right.endpoint;
    if (mid == leader) {
      pass(leader, right);
      break;
    }
    if (admin.precinct_leader[k - 1] != leader) {
      pass(mid, right);
      i = mid;
    }
    --k;
  }
  return r;
}

ESerenadeResult e_serenade(const CommonResult& common, const FullMatching& s_r,
                           const FullMatching& s_g, MessageLog& log) {
  require_size(common, s_r, s_g);
  require_leaders(common);
  ESerenadeResult r;
  for (const auto& s : common.states) {
    if (!is_cycle_leader(s)) continue;
    const auto b = binary_search_on_cycle(s.id, common, log, common.iterations_executed);
    r.max_admin_moves = std::max(r.max_admin_moves, b.admin_moves);
    r.decisions.push_back({s.id, merge_choice(b.red, b.green) == SubMatching::Red});
  }
  log_report_and_broadcast(common, r.decisions, common.iterations_executed + r.max_admin_moves,
                           log);
  r.matching = apply_decisions(common, r.decisions, s_r, s_g);
  return r;
}

ScheduleOutcome schedule(const SchedulerKind& kind, const FullMatching& s_r,
                         const FullMatching& s_g, const WeightMatrix& q, Rng& coin,
                         MessageLog& log) {
  Variant v = kind.variant;
  bool cow = false;
  if (kind.is_hybrid()) {
    const bool heads = coin.bernoulli(kind.alpha);
    if (heads) v = Variant::E;
    else if (kind.variant == Variant::SC) v = Variant::C;
    else {
      v = Variant::O;
      cow = true;
    }
  }

  ScheduleOutcome out;
  CommonConfig cfg;
  cfg.cow_threshold = kind.cow_threshold;
  switch (v) {
    case Variant::Serena:
      out.matching = serena_merge(s_r, s_g, q);
      return out;
    case Variant::C: {
      cfg.mode = CommonMode::Plain;
      const auto common = run_common(s_r, s_g, q, cfg, log);
      out.matching = c_serenade(common, s_r, s_g);
      out.iterations = common.iterations_executed;
      return out;
    }
    case Variant::O: {
      cfg.mode = cow ? CommonMode::WithLeadersAndCow : CommonMode::WithLeaders;
      const auto common = run_common(s_r, s_g, q, cfg, log);
      auto o = o_serenade(common, s_r, s_g, log);
      out.matching = std::move(o.matching);
      out.iterations = common.iterations_executed + (o.decisions.empty() ? 0 : 1);
      return out;
    }
    case Variant::E: {
      cfg.mode = CommonMode::WithLeaders;
      const auto common = run_common(s_r, s_g, q, cfg, log);
      auto e = e_serenade(common, s_r, s_g, log);
      out.matching = std::move(e.matching);
      out.iterations =
          common.iterations_executed + (e.decisions.empty() ? 0 : e.max_admin_moves + 1);
      out.ran_e = true;
      return out;
    }
    case Variant::SC:
    case Variant::SO:
      break;
  }
  throw ProtocolError("schedule: unresolved variant");
}

FullMatching hybrid_step(const SchedulerKind& kind, Rng& coin, const FullMatching& s_r,
                         const FullMatching& s_g, const WeightMatrix& q, MessageLog& log) {
  if (!kind.is_hybrid()) throw PreconditionError("hybrid_step needs an SC or SO kind");
  return schedule(kind, s_r, s_g, q, coin, log).matching;
}

}  // namespace serenade
