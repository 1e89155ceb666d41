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

#include "serenade/permutation.hpp"

#include <algorithm>
#include <charconv>
#include <sstream>

namespace serenade {

Permutation::Permutation(std::vector<VertexId> images) : images_(std::move(images)) {
  if (images_.empty()) {
    throw PreconditionError("permutation must have at least one element");
  }
  std::vector<bool> seen(images_.size(), false);
  for (VertexId v : images_) {
    if (v < 1 || v > images_.size() || seen[v - 1]) {
      throw PreconditionError("image list is not a bijection on {1.." +
                              std::to_string(images_.size()) + "}");
    }
    seen[v - 1] = true;
  }
}

Permutation Permutation::identity(std::size_t n) {
  std::vector<VertexId> images(n);
  for (std::size_t k = 0; k < n; ++k) images[k] = static_cast<VertexId>(k + 1);
  return Permutation(std::move(images));
}

Permutation Permutation::from_cycles(std::size_t n,
                                     const std::vector<std::vector<VertexId>>& cycles) {
  std::vector<VertexId> images(n, 0);
  for (const auto& cycle : cycles) {
    for (std::size_t k = 0; k < cycle.size(); ++k) {
      VertexId from = cycle[k];
      if (from < 1 || from > n || images[from - 1] != 0) {
        throw PreconditionError("cycles are not disjoint or leave the ground set");
      }
      images[from - 1] = cycle[(k + 1) % cycle.size()];
    }
  }
  for (std::size_t k = 0; k < n; ++k) {
    if (images[k] == 0) images[k] = static_cast<VertexId>(k + 1);
  }
  return Permutation(std::move(images));
}

Permutation Permutation::parse(std::string_view line) {
  std::vector<VertexId> images;
  std::size_t pos = 0;
  while (pos < line.size()) {
    while (pos < line.size() && (line[pos] == ' ' || line[pos] == '\t' || line[pos] == '\r' ||
                                 line[pos] == '\n')) {
      ++pos;
    }
    if (pos >= line.size()) break;
    VertexId value = 0;
    auto [next, ec] = std::from_chars(line.data() + pos, line.data() + line.size(), value);
    if (ec != std::errc()) {
      throw PreconditionError("malformed permutation token at offset " + std::to_string(pos));
    }
    images.push_back(value);
    pos = static_cast<std::size_t>(next - line.data());
  }
  return Permutation(std::move(images));
}

bool Permutation::is_identity() const {
  for (std::size_t k = 0; k < images_.size(); ++k) {
    if (images_[k] != k + 1) return false;
  }
  return true;
}

std::string Permutation::to_string() const {
  std::string out;
  for (std::size_t k = 0; k < images_.size(); ++k) {
    if (k != 0) out += ' ';
    out += std::to_string(images_[k]);
  }
  return out;
}

Permutation compose(const Permutation& outer, const Permutation& inner) {
  if (outer.size() != inner.size()) {
    throw DimensionError("compose: sizes " + std::to_string(outer.size()) + " and " +
                         std::to_string(inner.size()) + " differ");
  }
  std::vector<VertexId> images(inner.size());
  for (std::size_t k = 0; k < images.size(); ++k) {
    images[k] = outer(inner(static_cast<VertexId>(k + 1)));
  }
  return Permutation(std::move(images));
}

Permutation inverse(const Permutation& p) {
  std::vector<VertexId> images(p.size());
  for (std::size_t k = 0; k < images.size(); ++k) {
    images[p(static_cast<VertexId>(k + 1)) - 1] = static_cast<VertexId>(k + 1);
  }
  return Permutation(std::move(images));
}

VertexId power_by_steps(const Permutation& p, VertexId i, std::int64_t m) {
  if (m >= 0) {
    for (std::int64_t s = 0; s < m; ++s) i = p(i);
    return i;
  }
  const Permutation inv = inverse(p);
  for (std::int64_t s = 0; s < -m; ++s) i = inv(i);
  return i;
}

CycleDecomposition::CycleDecomposition(const Permutation& p) : position_(p.size()) {
  std::vector<bool> seen(p.size(), false);
  // Scanning in ascending order makes every cycle start at its minimum and
  // emits cycles sorted by minimum.
  for (std::size_t k = 0; k < p.size(); ++k) {
    if (seen[k]) continue;
    std::vector<VertexId> cycle;
    VertexId v = static_cast<VertexId>(k + 1);
    while (!seen[v - 1]) {
      seen[v - 1] = true;
      position_[v - 1] = CyclePosition{cycles_.size(), cycle.size()};
      cycle.push_back(v);
      v = p(v);
    }
    cycles_.push_back(std::move(cycle));
  }
}

VertexId CycleDecomposition::power(VertexId i, std::int64_t m) const {
  const CyclePosition pos = position_[i - 1];
  const auto& cycle = cycles_[pos.cycle];
  const auto len = static_cast<std::int64_t>(cycle.size());
  std::int64_t idx = (static_cast<std::int64_t>(pos.offset) + m) % len;
  if (idx < 0) idx += len;
  return cycle[static_cast<std::size_t>(idx)];
}

std::string CycleDecomposition::to_cycle_notation() const {
  std::string out;
  for (const auto& cycle : cycles_) {
    out += '(';
    for (std::size_t k = 0; k < cycle.size(); ++k) {
      if (k != 0) out += ' ';
      out += std::to_string(cycle[k]);
    }
    out += ')';
  }
  return out;
}

CycleDecomposition decompose(const Permutation& p) { return CycleDecomposition(p); }

VertexId power(const Permutation& p, VertexId i, std::int64_t m) {
  return CycleDecomposition(p).power(i, m);
}

DualWeightedCycleGraph::DualWeightedCycleGraph(Permutation perm, std::vector<Weight> red,
                                               std::vector<Weight> green)
    : perm_(std::move(perm)), cycles_(perm_), red_(std::move(red)), green_(std::move(green)) {
  if (red_.size() != perm_.size() || green_.size() != perm_.size()) {
    throw DimensionError("weight arrays must have one entry per vertex");
  }
  prefix_.reserve(cycles_.cycles().size());
  for (const auto& cycle : cycles_.cycles()) {
    std::vector<WalkWeights> prefix(cycle.size() + 1);
    for (std::size_t k = 0; k < cycle.size(); ++k) {
      prefix[k + 1].red = prefix[k].red + red_[cycle[k] - 1];
      prefix[k + 1].green = prefix[k].green + green_[cycle[k] - 1];
    }
    prefix_.push_back(std::move(prefix));
  }
}

WalkWeights DualWeightedCycleGraph::cycle_totals(VertexId i) const {
  return prefix_[cycles_.cycle_of(i).cycle].back();
}

WalkWeights DualWeightedCycleGraph::prefix_between(std::size_t cycle, std::size_t from,
                                                   std::size_t steps) const {
  const auto& prefix = prefix_[cycle];
  const std::size_t len = prefix.size() - 1;
  const std::size_t coils = steps / len;
  const std::size_t rest = steps % len;
  WalkWeights w{prefix.back().red * coils, prefix.back().green * coils};
  const std::size_t end = from + rest;
  if (end <= len) {
    w.red += prefix[end].red - prefix[from].red;
    w.green += prefix[end].green - prefix[from].green;
  } else {
    w.red += prefix[len].red - prefix[from].red + prefix[end - len].red;
    w.green += prefix[len].green - prefix[from].green + prefix[end - len].green;
  }
  return w;
}

WalkWeights DualWeightedCycleGraph::walk(VertexId i, std::int64_t m1, std::int64_t m2) const {
  if (m1 >= m2) {
    throw PreconditionError("walk requires m1 < m2");
  }
  const CyclePosition pos = cycles_.cycle_of(i);
  const auto len = static_cast<std::int64_t>(prefix_[pos.cycle].size() - 1);
  std::int64_t start = (static_cast<std::int64_t>(pos.offset) + m1) % len;
  if (start < 0) start += len;
  return prefix_between(pos.cycle, static_cast<std::size_t>(start),
                        static_cast<std::size_t>(m2 - m1));
}

WalkWeights walk_weights(const DualWeightedCycleGraph& g, VertexId i, std::int64_t m1,
                         std::int64_t m2) {
  return g.walk(i, m1, m2);
}

}  // namespace serenade
