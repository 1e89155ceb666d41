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

#include <cstdint>
#include <optional>
#include <string_view>
#include <vector>

#include "serenade/matching.hpp"
#include "serenade/rng.hpp"

namespace serenade {

enum class MatrixKind : std::uint8_t { Uniform, QuasiDiagonal, LogDiagonal, Diagonal };

/// Accepts uniform, quasi-diagonal, log-diagonal, diagonal (also with
/// underscores or no separator). Throws ConfigError.
MatrixKind parse_matrix_kind(std::string_view text);
std::string_view to_string(MatrixKind kind);

/// ON-OFF burst parameters: ON lasts t slots with probability p(1-p)^t,
/// OFF likewise with q.
struct BurstParams {
  double p = 0.5;
  double q = 0.5;
};

struct TrafficSpec {
  MatrixKind matrix = MatrixKind::Uniform;
  double load = 0.5;
  std::optional<BurstParams> burst;
};

/// Row i of the traffic matrix normalized to 1; index j-1 holds P(dest = j).
std::vector<double> dest_distribution(MatrixKind kind, VertexId i, std::size_t n);

/// Per-slot Bernoulli arrivals. During an ON period every arrival at an input
/// goes to the destination drawn when the period began.
class TrafficGenerator {
 public:
  TrafficGenerator(const TrafficSpec& spec, std::size_t n, Rng rng);

  ArrivalGraph next();
  std::size_t size() const { return n_; }

 private:
  struct BurstState {
    bool on = false;
    std::uint64_t remaining = 0;
    VertexId dest = 0;
  };

  VertexId sample_dest(VertexId i);
  void advance_burst(VertexId i);

  TrafficSpec spec_;
  std::size_t n_;
  Rng rng_;
  std::vector<std::vector<double>> cdf_;
  std::vector<BurstState> burst_;
};

}  // namespace serenade
