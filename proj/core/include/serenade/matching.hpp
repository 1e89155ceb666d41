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
#include <optional>
#include <vector>

#include "serenade/permutation.hpp"
#include "serenade/weight_matrix.hpp"

namespace serenade {

/// Input i is paired with output pairing(i). Every port is matched.
struct FullMatching {
  Permutation pairing;

  std::size_t size() const { return pairing.size(); }
  VertexId output_of(VertexId input) const { return pairing(input); }
  bool operator==(const FullMatching&) const = default;
};

/// Inputs map to at most one output; no output is used twice.
class PartialMatching {
 public:
  PartialMatching() = default;
  explicit PartialMatching(std::size_t n) : out_(n) {}
  /// Throws PreconditionError if an output repeats or is out of range.
  explicit PartialMatching(std::vector<std::optional<VertexId>> outputs);

  std::size_t size() const { return out_.size(); }
  const std::optional<VertexId>& output_of(VertexId input) const { return out_[input - 1]; }
  std::size_t matched_count() const;

  /// Bitmaps (1 = unmatched), indexed by port - 1.
  std::vector<std::uint8_t> unmatched_inputs() const;
  std::vector<std::uint8_t> unmatched_outputs() const;

  bool operator==(const PartialMatching&) const = default;

 private:
  std::vector<std::optional<VertexId>> out_;
};

/// At most one arrival per input; outputs may collide.
struct ArrivalGraph {
  std::vector<std::optional<VertexId>> dest;

  explicit ArrivalGraph(std::size_t n = 0) : dest(n) {}
  std::size_t size() const { return dest.size(); }
};

/// Sum of q over the matched cells.
Weight matching_weight(const FullMatching& s, const WeightMatrix& q);

/// True iff `s` is a bijection consistent with `pm` on every matched input.
bool extends(const FullMatching& s, const PartialMatching& pm);

}  // namespace serenade
