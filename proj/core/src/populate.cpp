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

#include "serenade/bits.hpp"
#include "serenade/errors.hpp"

namespace serenade {

RankVector prefix_sum_ranks(std::span<const std::uint8_t> bitmap, MessageLog& log) {
  const std::size_t n = bitmap.size();
  const unsigned k = log2_exact(n);
  const auto bits = static_cast<std::uint32_t>(k);
  RankVector r;
  r.prefix.assign(bitmap.begin(), bitmap.end());
  auto& a = r.prefix;
  auto send = [&](std::size_t from, std::size_t to) {
    log.record({static_cast<VertexId>(from + 1), static_cast<VertexId>(to + 1),
                MessageKind::PopulateRank, bits, r.rounds});
  };

  for (unsigned d = 0; d < k; ++d, ++r.rounds) {
    const std::size_t step = std::size_t{1} << d;
    for (std::size_t i = 2 * step - 1; i < n; i += 2 * step) {
      send(i - step, i);
      a[i] += a[i - step];
    }
  }
  for (unsigned d = k >= 2 ? k - 1 : 0; d-- > 0; ++r.rounds) {
    const std::size_t step = std::size_t{1} << d;
    for (std::size_t i = 2 * step - 1; i + step < n; i += 2 * step) {
      send(i, i + step);
      a[i + step] += a[i];
    }
  }

  r.ranks.resize(n);
  for (std::size_t i = 0; i < n; ++i) r.ranks[i] = bitmap[i] ? a[i] : 0;
  return r;
}

std::vector<std::pair<VertexId, VertexId>> broker_pairing(const RankVector& in_ranks,
                                                          const RankVector& out_ranks,
                                                          MessageLog& log) {
  const std::size_t n = in_ranks.ranks.size();
  if (out_ranks.ranks.size() != n) throw DimensionError("broker_pairing: size mismatch");
  const auto bits = static_cast<std::uint32_t>(log2_exact(n));

  // Brokers are input ports: broker j collects rank-j identities.
  std::vector<VertexId> input_at(n + 1, 0);
  std::vector<VertexId> output_at(n + 1, 0);
  std::vector<unsigned> inbound(n + 1, 0);
  for (VertexId p = 1; p <= n; ++p) {
    if (const auto j = in_ranks.ranks[p - 1]; j != 0) {
      log.record({p, j, MessageKind::PopulateBroker, bits, 0});
      input_at[j] = p;
      ++inbound[j];
    }
    if (const auto j = out_ranks.ranks[p - 1]; j != 0) {
      log.record({p, j, MessageKind::PopulateBroker, bits, 0});
      output_at[j] = p;
      ++inbound[j];
    }
  }

  std::vector<std::pair<VertexId, VertexId>> pairs;
  for (VertexId j = 1; j <= n; ++j) {
    if (inbound[j] > 2) throw ProtocolError("broker received more than two messages");
    if ((input_at[j] == 0) != (output_at[j] == 0))
      throw ProtocolError("broker_pairing: unmatched counts differ");
    if (input_at[j] == 0) continue;
    log.record({j, input_at[j], MessageKind::PopulateBroker, bits, 1});
    pairs.emplace_back(input_at[j], output_at[j]);
  }
  return pairs;
}

FullMatching populate_parallel(const PartialMatching& pm, MessageLog& log) {
  const std::size_t n = pm.size();
  log2_exact(n);
  const auto in_bits = pm.unmatched_inputs();
  const auto out_bits = pm.unmatched_outputs();
  const auto in_ranks = prefix_sum_ranks(in_bits, log);
  const auto out_ranks = prefix_sum_ranks(out_bits, log);
  std::vector<VertexId> out(n, 0);
  for (VertexId i = 1; i <= n; ++i)
    if (const auto& o = pm.output_of(i)) out[i - 1] = *o;
  for (const auto& [i, o] : broker_pairing(in_ranks, out_ranks, log)) out[i - 1] = o;
  return FullMatching{Permutation(std::move(out))};
}

}  // namespace serenade
