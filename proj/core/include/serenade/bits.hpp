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

#include <bit>
#include <cstddef>
#include <cstdint>
#include <string>

#include "serenade/errors.hpp"

namespace serenade {

constexpr bool is_power_of_two(std::size_t n) { return n != 0 && std::has_single_bit(n); }

/// log2 of a power of two. Throws ConfigError otherwise.
inline unsigned log2_exact(std::size_t n) {
  if (!is_power_of_two(n)) {
    throw ConfigError("port count " + std::to_string(n) + " is not a power of 2");
  }
  return static_cast<unsigned>(std::countr_zero(n));
}

/// ceil(log2(n)) for n >= 1; 0 for n <= 1.
constexpr unsigned ceil_log2(std::size_t n) {
  return n <= 1 ? 0u : static_cast<unsigned>(std::bit_width(n - 1));
}

}  // namespace serenade
