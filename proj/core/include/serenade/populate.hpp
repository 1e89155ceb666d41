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
#include <span>
#include <utility>
#include <vector>

#include "serenade/matching.hpp"
#include "serenade/message_log.hpp"

namespace serenade {

struct RankVector {
  /// Rank among unmatched ports (1-based), 0 for matched ports.
  std::vector<std::uint32_t> ranks;
  /// Raw inclusive prefix sums of the bitmap.
  std::vector<std::uint32_t> prefix;
  /// Communication rounds used by the scan.
  unsigned rounds = 0;
};

/// Up-sweep / down-sweep parallel scan over N port processors; bitmap[i] = 1
/// marks an unmatched port. N must be a power of 2 (ConfigError otherwise).
RankVector prefix_sum_ranks(std::span<const std::uint8_t> bitmap, MessageLog& log);

/// Rank-j input and rank-j output swap ids through broker j (input port j).
std::vector<std::pair<VertexId, VertexId>> broker_pairing(const RankVector& in_ranks,
                                                          const RankVector& out_ranks,
                                                          MessageLog& log);

/// Distributed equivalent of populate_serial.
FullMatching populate_parallel(const PartialMatching& pm, MessageLog& log);

}  // namespace serenade
