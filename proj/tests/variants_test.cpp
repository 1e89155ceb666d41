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
#include <numeric>

#include "doctest.h"
#include "serenade/bits.hpp"
#include "serenade/errors.hpp"
#include "test_support.hpp"

using namespace serenade;

namespace {

CommonResult leaders(const testing::Instance& in, MessageLog& log, bool cow = false,
                     Weight threshold = kDefaultCowThreshold) {
  CommonConfig cfg;
  cfg.mode = cow ? CommonMode::WithLeadersAndCow : CommonMode::WithLeaders;
  cfg.cow_threshold = threshold;
  return run_common(in.s_r, in.s_g, in.q, cfg, log);
}

/// One cycle of length l through 1..l, green matching = identity.
testing::Instance single_cycle(std::size_t n, std::size_t l, Weight red, Weight green) {
  std::vector<VertexId> cyc(l);
  for (std::size_t k = 0; k < l; ++k) cyc[k] = static_cast<VertexId>(k + 1);
  testing::Instance in{FullMatching{Permutation::from_cycles(n, {cyc})},
                       FullMatching{Permutation::identity(n)}, WeightMatrix(n)};
  std::vector<Weight> r(n, 1), g(n, 1);
  for (std::size_t k = 0; k < l; ++k) {
    r[k] = red;
    g[k] = green;
  }
  in.q = testing::weights_for_edges(in.s_r, in.s_g, r, g);
  return in;
}

}  // namespace

TEST_CASE("scheduler names parse and print") {
  CHECK(SchedulerKind::parse("serena").variant == Variant::Serena);
  CHECK(SchedulerKind::parse("C-SERENADE").variant == Variant::C);
  CHECK(SchedulerKind::parse("o").variant == Variant::O);
  const auto sc = SchedulerKind::parse("sc:0.25");
  CHECK(sc.variant == Variant::SC);
  CHECK(sc.alpha == doctest::Approx(0.25));
  const auto so = SchedulerKind::parse("so-serenade:0.5:300");
  CHECK(so.cow_threshold == 300);
  CHECK(SchedulerKind::parse(so.name()) == so);
  CHECK_THROWS_AS(SchedulerKind::parse("d"), ConfigError);
  CHECK_THROWS_AS(SchedulerKind::parse("sc:2"), ConfigError);
  CHECK_THROWS_AS(SchedulerKind::parse("c:0.5"), ConfigError);
  CHECK_THROWS_AS(SchedulerKind::parse("so:x"), ConfigError);
}

TEST_CASE("E matches the centralized merge exactly") {
  Rng rng(41);
  for (int t = 0; t < 2000; ++t) {
    const std::size_t n = std::size_t{1} << (1 + rng.below(6));
    const auto in = testing::random_instance(n, rng, 1 + rng.below(6));
    MessageLog log(n, false);
    const auto common = leaders(in, log);
    CHECK(e_serenade(common, in.s_r, in.s_g, log).matching == serena_merge(in.s_r, in.s_g, in.q));
  }
}

TEST_CASE("C uses verdicts and otherwise stays green") {
  Rng rng(42);
  for (int t = 0; t < 500; ++t) {
    const auto in = testing::random_instance(32, rng, 8);
    MessageLog log(32, false);
    const auto common = run_common(in.s_r, in.s_g, in.q, {}, log);
    const auto s = c_serenade(common, in.s_r, in.s_g);
    CHECK(matching_weight(s, in.q) >= matching_weight(in.s_g, in.q));
    const auto oracle = serena_merge(in.s_r, in.s_g, in.q);
    for (const auto& st : common.states) {
      const VertexId o = s.output_of(st.id);
      if (st.verdict) CHECK(o == oracle.output_of(st.id));
      else CHECK(o == in.s_g.output_of(st.id));
    }
  }
  const FullMatching same{Permutation::parse("3 1 2 4")};
  MessageLog log(4);
  Rng r2(1);
  const auto q = testing::random_instance(4, r2).q;
  CHECK(c_serenade(run_common(same, same, q, {}, log), same, same) == same);
}

TEST_CASE("C stays green on a red-heavy non-ouroboros cycle") {
  const auto in = single_cycle(64, 19, 10, 1);
  MessageLog log(64);
  const auto common = run_common(in.s_r, in.s_g, in.q, {}, log);
  const auto s = c_serenade(common, in.s_r, in.s_g);
  CHECK(matching_weight(s, in.q) < matching_weight(serena_merge(in.s_r, in.s_g, in.q), in.q));
  CHECK(matching_weight(s, in.q) >= matching_weight(in.s_g, in.q));
}

TEST_CASE("binary search returns whole laps of the cycle") {
  Rng rng(43);
  for (int t = 0; t < 300; ++t) {
    const std::size_t n = std::size_t{1} << (3 + rng.below(5));
    const auto in = testing::random_instance(n, rng, 50);
    const auto g = cycle_graph(in.s_r, in.s_g, in.q);
    MessageLog log(n);
    const auto common = leaders(in, log);
    for (const auto& s : common.states) {
      if (s.verdict || s.cycle_leader() != s.id) continue;
      const std::size_t l = g.decomposition().cycle_length(s.id);
      const auto b = binary_search_on_cycle(s.id, common, log);
      REQUIRE(b.walk_edges % l == 0);
      const Weight kappa = b.walk_edges / l;
      CHECK(kappa >= 1);
      const auto tot = g.cycle_totals(s.id);
      CHECK(b.red == kappa * tot.red);
      CHECK(b.green == kappa * tot.green);
      CHECK(b.admin_moves <= ceil_log2(l));
    }
  }
}

TEST_CASE("binary search move bound holds for every non-ouroboros length") {
  for (std::size_t n : {16u, 64u, 256u}) {
    const auto table = ouroboros_table(n);
    for (std::size_t l = 2; l <= n; ++l) {
      if (table[l]) continue;
      for (std::size_t shift : {std::size_t{0}, n - l}) {
        const std::size_t stride = std::gcd(l, std::size_t{7}) == 1 ? 7 : 1;
        std::vector<VertexId> cyc(l);
        for (std::size_t k = 0; k < l; ++k) cyc[k] = static_cast<VertexId>(shift + 1 + (k * stride) % l);
        testing::Instance in{FullMatching{Permutation::from_cycles(n, {cyc})},
                             FullMatching{Permutation::identity(n)}, WeightMatrix(n)};
        MessageLog log(n, false);
        const auto common = leaders(in, log);
        const VertexId leader = *std::min_element(cyc.begin(), cyc.end());
        const auto b = binary_search_on_cycle(leader, common, log);
        CHECK(b.admin_moves <= ceil_log2(l));
        CHECK(b.walk_edges % l == 0);
      }
    }
  }
}

TEST_CASE("binary search on an N-cycle finishes at once") {
  auto in = single_cycle(16, 16, 2, 1);
  CommonConfig cfg;
  cfg.mode = CommonMode::WithLeaders;
  cfg.detect_ouroboros = false;
  MessageLog log(16);
  const auto common = run_common(in.s_r, in.s_g, in.q, cfg, log);
  const auto b = binary_search_on_cycle(1, common, log);
  CHECK(b.admin_moves == 0);
  CHECK(b.walk_edges == 16);
  CHECK(b.red == 32);
  CHECK(b.green == 16);
}

TEST_CASE("binary search refuses ouroboros cycles") {
  const auto in = single_cycle(16, 16, 2, 1);
  MessageLog log(16);
  const auto common = leaders(in, log);
  CHECK_THROWS_AS(binary_search_on_cycle(1, common, log), ProtocolError);
  const auto plain = run_common(in.s_r, in.s_g, in.q, {}, log);
  CHECK_THROWS_AS(binary_search_on_cycle(1, plain, log), PreconditionError);
}

TEST_CASE("move counts do not depend on weights") {
  Rng rng(44);
  for (int t = 0; t < 100; ++t) {
    auto a = testing::random_instance(128, rng, 3);
    auto b = a;
    for (VertexId i = 1; i <= 128; ++i)
      for (VertexId j = 1; j <= 128; ++j) b.q.set(i, j, rng.below(1000));
    MessageLog la(128, false), lb(128, false);
    const auto ca = leaders(a, la);
    const auto cb = leaders(b, lb);
    for (const auto& s : ca.states) {
      if (s.verdict || s.cycle_leader() != s.id) continue;
      CHECK(binary_search_on_cycle(s.id, ca, la).admin_moves ==
            binary_search_on_cycle(s.id, cb, lb).admin_moves);
    }
  }
}

TEST_CASE("O follows its leader's view on every cycle") {
  Rng rng(45);
  for (int t = 0; t < 500; ++t) {
    const auto in = testing::random_instance(32, rng, 8);
    MessageLog log(32);
    const auto common = leaders(in, log);
    const auto o = o_serenade(common, in.s_r, in.s_g, log);
    const auto cd = decompose(union_permutation(in.s_r, in.s_g));
    for (const auto& cyc : cd.cycles()) {
      const bool red = o.matching.output_of(cyc.front()) == in.s_r.output_of(cyc.front());
      for (VertexId v : cyc) CHECK((o.matching.output_of(v) == in.s_r.output_of(v)) == red);
    }
    for (const auto& d : o.decisions) {
      const auto& w = common.state(d.leader).phi_plus[common.log2n];
      CHECK(d.pick_red == (w.red > w.green));
    }
    CHECK(log.count(MessageKind::LeaderReport) == o.decisions.size());
    CHECK(log.count(MessageKind::Broadcast) == (o.decisions.empty() ? 0u : 1u));
  }
}

TEST_CASE("O picks red when non-ouroboros green weights vanish") {
  const auto in = single_cycle(64, 19, 3, 0);
  MessageLog log(64);
  const auto common = leaders(in, log);
  const auto o = o_serenade(common, in.s_r, in.s_g, log);
  REQUIRE(o.decisions.size() == 1);
  CHECK(o.decisions[0].leader == 1);
  CHECK(o.decisions[0].pick_red);
  CHECK(log.bits(MessageKind::Broadcast) == 7);
}

TEST_CASE("16-port example: the leader's view settles the 11-cycle") {
  const testing::PaperInstance paper;
  const auto q = testing::paper_consistency_weights(paper);
  const testing::Instance in{paper.s_r, paper.s_g, q};
  MessageLog log(16);
  const auto common = leaders(in, log);
  const auto o = o_serenade(common, in.s_r, in.s_g, log);
  REQUIRE(o.decisions.size() == 1);
  CHECK(o.decisions[0].leader == 2);
  CHECK_FALSE(o.decisions[0].pick_red);
  const auto g = cycle_graph(in.s_r, in.s_g, q);
  CHECK(g.cycle_totals(2) == WalkWeights{14, 15});
  for (VertexId v : {2u, 3u, 4u, 5u, 7u, 8u, 10u, 11u, 12u, 14u, 16u})
    CHECK(o.matching.output_of(v) == in.s_g.output_of(v));
  CHECK(e_serenade(common, in.s_r, in.s_g, log).matching == serena_merge(in.s_r, in.s_g, q));
}

TEST_CASE("O agrees with the oracle on most non-ouroboros cycles") {
  Rng rng(46);
  std::uint64_t agree = 0, total = 0;
  for (int t = 0; t < 2000; ++t) {
    const auto in = testing::random_instance(32, rng, 20);
    const auto g = cycle_graph(in.s_r, in.s_g, in.q);
    MessageLog log(32, false);
    const auto common = leaders(in, log);
    for (const auto& d : o_serenade(common, in.s_r, in.s_g, log).decisions) {
      const auto tot = g.cycle_totals(d.leader);
      agree += d.pick_red == (tot.red > tot.green);
      ++total;
    }
  }
  REQUIRE(total > 0);
  CHECK(double(agree) / double(total) >= 0.85);
}

TEST_CASE("round counts per variant") {
  Rng rng(47);
  for (int t = 0; t < 300; ++t) {
    const std::size_t n = std::size_t{1} << (2 + rng.below(6));
    const unsigned k = log2_exact(n);
    const auto in = testing::random_instance(n, rng);
    for (const char* name : {"c", "o", "e"}) {
      MessageLog log(n);
      Rng coin(1);
      const auto out = schedule(SchedulerKind::parse(name), in.s_r, in.s_g, in.q, coin, log);
      const auto spanned = log.iterations_spanned(
          {MessageKind::KnowledgeFwd, MessageKind::KnowledgeBwd, MessageKind::Iter0OutputToInput,
           MessageKind::Iter0Relay, MessageKind::BinarySearchBaton, MessageKind::LeaderReport,
           MessageKind::Broadcast});
      CHECK(spanned == out.iterations);
      if (name[0] == 'c') CHECK(out.iterations <= 1 + k);
      if (name[0] == 'o') CHECK(out.iterations <= 2 + k);
      if (name[0] == 'e') CHECK(out.iterations <= 2 + 2 * k);
    }
  }
}

TEST_CASE("hybrids") {
  Rng rng(48);
  for (int t = 0; t < 300; ++t) {
    const auto in = testing::random_instance(16, rng, 6);
    MessageLog log(16, false);
    Rng coin(t);
    const auto oracle = serena_merge(in.s_r, in.s_g, in.q);
    CHECK(hybrid_step(SchedulerKind::parse("sc:1"), coin, in.s_r, in.s_g, in.q, log) == oracle);
    CHECK(hybrid_step(SchedulerKind::parse("so:1"), coin, in.s_r, in.s_g, in.q, log) == oracle);

    const auto common = leaders(in, log);
    const auto o = o_serenade(common, in.s_r, in.s_g, log).matching;
    CHECK(hybrid_step(SchedulerKind::parse("so:0"), coin, in.s_r, in.s_g, in.q, log) == o);

    const auto plain = run_common(in.s_r, in.s_g, in.q, {}, log);
    const auto c = c_serenade(plain, in.s_r, in.s_g);
    CHECK(hybrid_step(SchedulerKind::parse("sc:0"), coin, in.s_r, in.s_g, in.q, log) == c);
    auto forced = in;
    for (VertexId i = 1; i <= 16; ++i)
      for (VertexId j = 1; j <= 16; ++j) forced.q.set(i, j, 1 + forced.q.at(i, j));
    const auto cf = c_serenade(run_common(forced.s_r, forced.s_g, forced.q, {}, log), in.s_r, in.s_g);
    CHECK(hybrid_step(SchedulerKind::parse("so:0:0"), coin, forced.s_r, forced.s_g, forced.q, log) == cf);
  }
  MessageLog log(4);
  Rng coin(0);
  const FullMatching id{Permutation::identity(4)};
  CHECK_THROWS_AS(hybrid_step(SchedulerKind::parse("e"), coin, id, id, WeightMatrix(4), log),
                  PreconditionError);
}

TEST_CASE("COW keeps matching weight within the threshold bound") {
  Rng rng(49);
  const Weight threshold = 3;
  for (int t = 0; t < 500; ++t) {
    const auto in = testing::random_instance(32, rng, 6);
    MessageLog log(32, false);
    Rng coin(t);
    const auto s = hybrid_step(SchedulerKind{Variant::SO, 0.0, threshold}, coin, in.s_r, in.s_g, in.q, log);
    const auto ws = static_cast<std::int64_t>(matching_weight(s, in.q));
    const auto wg = static_cast<std::int64_t>(matching_weight(in.s_g, in.q));
    CHECK(ws >= wg - static_cast<std::int64_t>(32 * threshold));
  }
}
