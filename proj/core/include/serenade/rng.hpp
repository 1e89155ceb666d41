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
#include <initializer_list>
#include <random>
#include <vector>

namespace serenade {

/// Seedable, splittable random stream.
///
/// The engine is std::mt19937_64 seeded through std::seed_seq; both are fully
/// specified by the standard, so a (seed, stream path) pair yields the same
/// sequence on every platform. All derived quantities (bounded integers,
/// uniform reals, Bernoulli and geometric draws) are computed here rather than
/// through the implementation-defined <random> distributions.
class Rng {
 public:
  explicit Rng(std::uint64_t seed, std::initializer_list<std::uint64_t> stream = {});
  Rng(std::uint64_t seed, const std::vector<std::uint64_t>& stream);

  std::uint64_t next_u64() { return engine_(); }

  /// Uniform on [0, 1) with 53 random bits.
  double uniform01();

  /// Uniform on {0, ..., bound-1}; bound must be positive.
  std::uint64_t below(std::uint64_t bound);

  bool bernoulli(double p) { return uniform01() < p; }

  /// Number of failures before the first success, P(t) = p (1-p)^t.
  std::uint64_t geometric(double p);

 private:
  std::mt19937_64 engine_;
};

}  // namespace serenade
