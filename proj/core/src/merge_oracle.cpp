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

#include "serenade/merge_oracle.hpp"

#include <string>

namespace serenade {

PartialMatching::PartialMatching(std::vector<std::optional<VertexId>> outputs)
    : out_(std::move(outputs)) {
  std::vector<bool> used(out_.size(), false);
  for (const auto& o : out_) {
    if (!o) continue;
    if (*o < 1 || *o > out_.size() || used[*o - 1]) {
      throw PreconditionError("partial matching reuses or exceeds output " + std::to_string(*o));
    }
    used[*o - 1] = true;
  }
}

std::size_t PartialMatching::matched_count() const {
  std::size_t count = 0;
  for (const auto& o : out_) count += o.has_value() ? 1 : 0;
  return count;
}

std::vector<std::uint8_t> PartialMatching::unmatched_inputs() const {
  std::vector<std::uint8_t> bits(out_.size());
  for (std::size_t k = 0; k < out_.size(); ++k) bits[k] = out_[k] ? 0 : 1;
  return bits;
}

std::vector<std::uint8_t> PartialMatching::unmatched_outputs() const {
  std::vector<std::uint8_t> bits(out_.size(), 1);
  for (const auto& o : out_) {
    if (o) bits[*o - 1] = 0;
  }
  return bits;
}

Weight matching_weight(const FullMatching& s, const WeightMatrix& q) {
  if (s.size() != q.size()) throw DimensionError("matching and weight matrix sizes differ");
  Weight sum = 0;
  for (VertexId i = 1; i <= s.size(); ++i) sum += q.at(i, s.output_of(i));
  return sum;
}

bool extends(const FullMatching& s, const PartialMatching& pm) {
  if (s.size() != pm.size()) return false;
  for (VertexId i = 1; i <= pm.size(); ++i) {
    const auto& o = pm.output_of(i);
    if (o && *o != s.output_of(i)) return false;
  }
  return true;
}

PartialMatching prune(const ArrivalGraph& a, const WeightMatrix& q, Rng& rng) {
  const std::size_t n = a.size();
  if (q.size() != n) throw DimensionError("arrival graph and weight matrix sizes differ");
  std::vector<VertexId> winner(n, 0);
  std::vector<Weight> best(n, 0);
  std::vector<std::uint32_t> ties(n, 0);
  for (VertexId i = 1; i <= n; ++i) {
    const auto& dest = a.dest[i - 1];
    if (!dest) continue;
    const VertexId j = *dest;
    const Weight w = q.at(i, j);
    auto& slot = winner[j - 1];
    if (slot == 0 || w > best[j - 1]) {
      slot = i;
      best[j - 1] = w;
      ties[j - 1] = 1;
    } else if (w == best[j - 1]) {
      // Reservoir choice: the c-th tied edge replaces the survivor w.p. 1/c.
      ++ties[j - 1];
      if (rng.below(ties[j - 1]) == 0) slot = i;
    }
  }
  std::vector<std::optional<VertexId>> out(n);
  for (VertexId j = 1; j <= n; ++j) {
    if (winner[j - 1] != 0) out[winner[j - 1] - 1] = j;
  }
  return PartialMatching(std::move(out));
}

FullMatching populate_serial(const PartialMatching& pm) {
  const std::size_t n = pm.size();
  const auto free_in = pm.unmatched_inputs();
  const auto free_out = pm.unmatched_outputs();
  std::vector<VertexId> images(n, 0);
  for (VertexId i = 1; i <= n; ++i) {
    if (const auto& o = pm.output_of(i)) images[i - 1] = *o;
  }
  std::size_t next_out = 0;
  for (std::size_t i = 0; i < n; ++i) {
    if (!free_in[i]) continue;
    while (!free_out[next_out]) ++next_out;
    images[i] = static_cast<VertexId>(next_out + 1);
    ++next_out;
  }
  return FullMatching{Permutation(std::move(images))};
}

SubMatching merge_choice(Weight red_total, Weight green_total) {
  return red_total > green_total ? SubMatching::Red : SubMatching::Green;
}

Permutation union_permutation(const FullMatching& s_r, const FullMatching& s_g) {
  return compose(inverse(s_g.pairing), s_r.pairing);
}

DualWeightedCycleGraph cycle_graph(const FullMatching& s_r, const FullMatching& s_g,
                                   const WeightMatrix& q) {
  if (s_r.size() != s_g.size() || s_r.size() != q.size()) {
    throw DimensionError("merge operands have different port counts");
  }
  Permutation sigma = union_permutation(s_r, s_g);
  const std::size_t n = sigma.size();
  std::vector<Weight> red(n), green(n);
  for (VertexId i = 1; i <= n; ++i) {
    const VertexId j = s_r.output_of(i);
    red[i - 1] = q.at(i, j);
    green[i - 1] = q.at(sigma(i), j);
  }
  return DualWeightedCycleGraph(std::move(sigma), std::move(red), std::move(green));
}

FullMatching serena_merge(const FullMatching& s_r, const FullMatching& s_g,
                          const WeightMatrix& q) {
  const DualWeightedCycleGraph g = cycle_graph(s_r, s_g, q);
  std::vector<VertexId> images(g.size());
  for (const auto& cycle : g.decomposition().cycles()) {
    Weight red = 0, green = 0;
    for (VertexId v : cycle) {
      red += g.red(v);
      green += g.green(v);
    }
    const bool pick_red = merge_choice(red, green) == SubMatching::Red;
    for (VertexId v : cycle) {
      images[v - 1] = pick_red ? s_r.output_of(v) : s_g.output_of(v);
    }
  }
  return FullMatching{Permutation(std::move(images))};
}

}  // namespace serenade
