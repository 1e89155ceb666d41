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
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "serenade/errors.hpp"

namespace serenade {

/// Port / vertex identifier. Always 1-based at interfaces.
using VertexId = std::uint32_t;

/// Packet count. Weights are never negative.
using Weight = std::uint64_t;

/// A bijection on {1..N}.
class Permutation {
 public:
  Permutation() = default;

  /// `images[k]` is the image of vertex k+1. Throws PreconditionError unless
  /// the list is a bijection on {1..images.size()}.
  explicit Permutation(std::vector<VertexId> images);

  static Permutation identity(std::size_t n);

  /// Builds a permutation from disjoint cycles; vertices not mentioned are fixed.
  static Permutation from_cycles(std::size_t n, const std::vector<std::vector<VertexId>>& cycles);

  /// Parses the one-line image list form, e.g. "2 3 1".
  static Permutation parse(std::string_view line);

  std::size_t size() const { return images_.size(); }
  VertexId operator()(VertexId i) const { return images_[i - 1]; }
  std::span<const VertexId> images() const { return images_; }
  bool is_identity() const;

  /// One-line image list form.
  std::string to_string() const;

  bool operator==(const Permutation&) const = default;

 private:
  std::vector<VertexId> images_;
};

/// result(i) = outer(inner(i)).
Permutation compose(const Permutation& outer, const Permutation& inner);
Permutation inverse(const Permutation& p);

/// sigma^m(i) by stepping |m| times. Reference implementation.
VertexId power_by_steps(const Permutation& p, VertexId i, std::int64_t m);

struct CyclePosition {
  std::size_t cycle = 0;
  std::size_t offset = 0;
};

/// Disjoint-cycle form in canonical order: every cycle starts at its minimum
/// element and cycles are sorted by that minimum.
class CycleDecomposition {
 public:
  CycleDecomposition() = default;
  explicit CycleDecomposition(const Permutation& p);

  std::size_t size() const { return position_.size(); }
  const std::vector<std::vector<VertexId>>& cycles() const { return cycles_; }
  const std::vector<VertexId>& cycle(std::size_t c) const { return cycles_[c]; }
  CyclePosition cycle_of(VertexId i) const { return position_[i - 1]; }
  std::size_t cycle_length(VertexId i) const { return cycles_[position_[i - 1].cycle].size(); }

  /// sigma^m(i) in O(1).
  VertexId power(VertexId i, std::int64_t m) const;

  /// Cycle notation, e.g. "(1 2 3)(4 5)".
  std::string to_cycle_notation() const;

 private:
  std::vector<std::vector<VertexId>> cycles_;
  std::vector<CyclePosition> position_;
};

CycleDecomposition decompose(const Permutation& p);

/// sigma^m(i); negative m walks the inverse.
VertexId power(const Permutation& p, VertexId i, std::int64_t m);

struct WalkWeights {
  Weight red = 0;
  Weight green = 0;
  bool operator==(const WalkWeights&) const = default;
};

/// sigma together with a red and a green weight on every combinatorial edge
/// i -> sigma(i). Immutable after construction.
class DualWeightedCycleGraph {
 public:
  DualWeightedCycleGraph(Permutation perm, std::vector<Weight> red, std::vector<Weight> green);

  const Permutation& perm() const { return perm_; }
  const CycleDecomposition& decomposition() const { return cycles_; }
  std::size_t size() const { return perm_.size(); }

  Weight red(VertexId i) const { return red_[i - 1]; }
  Weight green(VertexId i) const { return green_[i - 1]; }

  /// Red and green totals of the cycle containing i.
  WalkWeights cycle_totals(VertexId i) const;

  /// Weights of sigma^{m1}(i) ~> sigma^{m2}(i). Edges traversed several times
  /// are counted once per traversal. Requires m1 < m2.
  WalkWeights walk(VertexId i, std::int64_t m1, std::int64_t m2) const;

 private:
  WalkWeights prefix_between(std::size_t cycle, std::size_t from, std::size_t steps) const;

  Permutation perm_;
  CycleDecomposition cycles_;
  std::vector<Weight> red_;
  std::vector<Weight> green_;
  // prefix_[c][k] = weights of the first k edges of cycle c starting at its minimum.
  std::vector<std::vector<WalkWeights>> prefix_;
};

WalkWeights walk_weights(const DualWeightedCycleGraph& g, VertexId i, std::int64_t m1, std::int64_t m2);

}  // namespace serenade
