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

#include "serenade/rng.hpp"

#include <cmath>
#include <limits>

namespace serenade {
namespace {

std::vector<std::uint32_t> seed_words(std::uint64_t seed, const std::uint64_t* first,
                                      const std::uint64_t* last) {
  std::vector<std::uint32_t> words;
  words.reserve(2 + 2 * static_cast<std::size_t>(last - first));
  words.push_back(static_cast<std::uint32_t>(seed));
  words.push_back(static_cast<std::uint32_t>(seed >> 32));
  for (const std::uint64_t* it = first; it != last; ++it) {
    words.push_back(static_cast<std::uint32_t>(*it));
    words.push_back(static_cast<std::uint32_t>(*it >> 32));
  }
  return words;
}

}  // namespace

Rng::Rng(std::uint64_t seed, std::initializer_list<std::uint64_t> stream) {
  const auto words = seed_words(seed, stream.begin(), stream.end());
  std::seed_seq seq(words.begin(), words.end());
  engine_.seed(seq);
}

Rng::Rng(std::uint64_t seed, const std::vector<std::uint64_t>& stream) {
  const auto words = seed_words(seed, stream.data(), stream.data() + stream.size());
  std::seed_seq seq(words.begin(), words.end());
  engine_.seed(seq);
}

double Rng::uniform01() {
  return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
}

std::uint64_t Rng::below(std::uint64_t bound) {
  // Rejection on the top of the range keeps the draw unbiased.
  const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() -
                              std::numeric_limits<std::uint64_t>::max() % bound;
  std::uint64_t x = engine_();
  while (x >= limit) x = engine_();
  return x % bound;
}

std::uint64_t Rng::geometric(double p) {
  if (p >= 1.0) return 0;
  // Inverse CDF on 1 - U so the argument of log is in (0, 1].
  const double u = 1.0 - uniform01();
  return static_cast<std::uint64_t>(std::floor(std::log(u) / std::log1p(-p)));
}

}  // namespace serenade
