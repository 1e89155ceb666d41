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

#include "serenade/populate.hpp"

#include "doctest.h"
#include "serenade/bits.hpp"
#include "serenade/errors.hpp"
#include "serenade/merge_oracle.hpp"
#include "test_support.hpp"

using namespace serenade;

namespace {

PartialMatching random_partial(std::size_t n, Rng& rng) {
  const auto p = sample_uniform_permutation(n, rng);
  const std::uint64_t keep = rng.below(5);
  std::vector<std::optional<VertexId>> out(n);
  for (VertexId i = 1; i <= n; ++i)
    if (rng.below(4) < keep) out[i - 1] = p(i);
  return PartialMatching(std::move(out));
}

}  // namespace

TEST_CASE("scan on constant bitmaps") {
  MessageLog log(8);
  const std::vector<std::uint8_t> ones(8, 1), zeros(8, 0);
  const auto r = prefix_sum_ranks(ones, log);
  CHECK(r.ranks == std::vector<std::uint32_t>{1, 2, 3, 4, 5, 6, 7, 8});
  CHECK(r.rounds == 5);
  CHECK(prefix_sum_ranks(zeros, log).ranks == std::vector<std::uint32_t>(8, 0));
}

TEST_CASE("scan equals a sequential prefix sum") {
  Rng rng(51);
  for (std::size_t n = 1; n <= 1024; n *= 2) {
    for (int t = 0; t < 20; ++t) {
      std::vector<std::uint8_t> bits(n);
      for (auto& b : bits) b = static_cast<std::uint8_t>(rng.below(2));
      MessageLog log(n);
      const auto r = prefix_sum_ranks(bits, log);
      std::uint32_t acc = 0;
      for (std::size_t i = 0; i < n; ++i) {
        acc += bits[i];
        CHECK(r.prefix[i] == acc);
        CHECK(r.ranks[i] == (bits[i] ? acc : 0u));
      }
      CHECK(r.rounds <= 2 * log2_exact(n));
      CHECK(log.iterations_spanned({MessageKind::PopulateRank}) <= r.rounds);
    }
  }
}

TEST_CASE("broker pairing message counts") {
  MessageLog log(4);
  const std::vector<std::uint8_t> none(4, 0);
  const auto z = prefix_sum_ranks(none, log);
  const auto before = log.total_messages();
  CHECK(broker_pairing(z, z, log).empty());
  CHECK(log.total_messages() == before);

  const std::vector<std::uint8_t> in{0, 0, 1, 0}, out{0, 1, 0, 0};
  const auto ri = prefix_sum_ranks(in, log);
  const auto ro = prefix_sum_ranks(out, log);
  const auto n0 = log.count(MessageKind::PopulateBroker);
  const auto pairs = broker_pairing(ri, ro, log);
  REQUIRE(pairs.size() == 1);
  CHECK(pairs[0] == std::pair<VertexId, VertexId>{3, 2});
  CHECK(log.count(MessageKind::PopulateBroker) - n0 == 3);
  CHECK_THROWS_AS(broker_pairing(ri, z, log), ProtocolError);
}

TEST_CASE("parallel population equals the serial reference") {
  Rng rng(52);
  for (std::size_t n = 1; n <= 256; n *= 2) {
    for (int t = 0; t < 200; ++t) {
      const auto pm = random_partial(n, rng);
      MessageLog log(n);
      const auto s = populate_parallel(pm, log);
      CHECK(s == populate_serial(pm));
      const std::uint64_t unmatched = n - pm.matched_count();
      CHECK(log.count(MessageKind::PopulateBroker) == 3 * unmatched);
    }
  }
}

TEST_CASE("population edge cases") {
  MessageLog log(4);
  CHECK(populate_parallel(PartialMatching(4), log).pairing.is_identity());
  CHECK_THROWS_AS(populate_parallel(PartialMatching({VertexId{2}, std::nullopt, std::nullopt}), log),
                  ConfigError);
}
