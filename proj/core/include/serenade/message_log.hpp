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

#include <array>
#include <cstddef>
#include <cstdint>
#include <string_view>
#include <vector>

#include "serenade/permutation.hpp"

namespace serenade {

enum class MessageKind : std::uint8_t {
  KnowledgeFwd,
  KnowledgeBwd,
  Iter0OutputToInput,
  Iter0Relay,
  BinarySearchBaton,
  LeaderReport,
  Broadcast,
  PopulateRank,
  PopulateBroker,
};

inline constexpr std::size_t kMessageKindCount = 9;

std::string_view to_string(MessageKind kind);

/// Pseudo-port id of the switch controller in message records.
inline constexpr VertexId kController = 0;

/// One message of the synchronous-round machine. `src` is the line card that
/// sends it (output-port messages are charged to the line card of that output).
struct RoundMessage {
  VertexId src = 0;
  VertexId dst = 0;
  MessageKind kind = MessageKind::KnowledgeFwd;
  std::uint32_t size_bits = 0;
  /// Logical iteration within the stage that emitted the message.
  std::uint32_t iteration = 0;
};

/// Accumulates message traffic. Per-port and per-kind totals are always kept;
/// the individual records only when `retain` is set.
class MessageLog {
 public:
  MessageLog() = default;
  explicit MessageLog(std::size_t n_ports, bool retain = true);

  void record(const RoundMessage& m);
  void clear();

  std::size_t n_ports() const { return n_ports_; }
  bool retains() const { return retain_; }
  const std::vector<RoundMessage>& messages() const { return messages_; }

  std::uint64_t total_messages() const { return total_messages_; }
  std::uint64_t total_bits() const { return total_bits_; }
  std::uint64_t count(MessageKind kind) const { return kind_count_[index(kind)]; }
  std::uint64_t bits(MessageKind kind) const { return kind_bits_[index(kind)]; }

  /// Bits sent by line card `port` (0 = controller), all kinds.
  std::uint64_t bits_sent_by(VertexId port) const { return port_bits_[port]; }
  /// Messages sent by line card `port` (0 = controller), all kinds.
  std::uint64_t messages_sent_by(VertexId port) const { return port_messages_[port]; }

  /// Largest iteration index + 1 over the given kinds; 0 if none logged.
  std::uint32_t iterations_spanned(std::initializer_list<MessageKind> kinds) const;

 private:
  static std::size_t index(MessageKind kind) { return static_cast<std::size_t>(kind); }

  std::size_t n_ports_ = 0;
  bool retain_ = true;
  std::vector<RoundMessage> messages_;
  std::uint64_t total_messages_ = 0;
  std::uint64_t total_bits_ = 0;
  std::array<std::uint64_t, kMessageKindCount> kind_count_{};
  std::array<std::uint64_t, kMessageKindCount> kind_bits_{};
  std::array<std::uint32_t, kMessageKindCount> kind_iterations_{};
  std::vector<std::uint64_t> port_bits_;
  std::vector<std::uint64_t> port_messages_;
};

}  // namespace serenade
