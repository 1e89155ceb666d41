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
#include <vector>

#include "serenade/permutation.hpp"

namespace serenade {

/// N x N nonnegative queue lengths, 1-based (input, output) indexing.
class WeightMatrix {
 public:
  WeightMatrix() = default;
  explicit WeightMatrix(std::size_t n) : n_(n), cells_(n * n, 0) {}

  std::size_t size() const { return n_; }
  Weight at(VertexId input, VertexId output) const { return cells_[index(input, output)]; }
  void set(VertexId input, VertexId output, Weight w) { cells_[index(input, output)] = w; }
  void increment(VertexId input, VertexId output) { ++cells_[index(input, output)]; }
  void decrement(VertexId input, VertexId output) { --cells_[index(input, output)]; }

  Weight total() const;

  bool operator==(const WeightMatrix&) const = default;

 private:
  std::size_t index(VertexId input, VertexId output) const {
    return (input - 1) * n_ + (output - 1);
  }

  std::size_t n_ = 0;
  std::vector<Weight> cells_;
};

}  // namespace serenade
