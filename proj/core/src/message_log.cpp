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

#include "serenade/message_log.hpp"

#include <algorithm>

namespace serenade {

std::string_view to_string(MessageKind kind) {
  switch (kind) {
    case MessageKind::KnowledgeFwd: return "KnowledgeFwd";
    case MessageKind::KnowledgeBwd: return "KnowledgeBwd";
    case MessageKind::Iter0OutputToInput: return "Iter0OutputToInput";
    case MessageKind::Iter0Relay: return "Iter0Relay";
    case MessageKind::BinarySearchBaton: return "BinarySearchBaton";
    case MessageKind::LeaderReport: return "LeaderReport";
    case MessageKind::Broadcast: return "Broadcast";
    case MessageKind::PopulateRank: return "PopulateRank";
    case MessageKind::PopulateBroker: return "PopulateBroker";
  }
  return "?";
}

MessageLog::MessageLog(std::size_t n_ports, bool retain)
    : n_ports_(n_ports),
      retain_(retain),
      port_bits_(n_ports + 1, 0),
      port_messages_(n_ports + 1, 0) {}

void MessageLog::record(const RoundMessage& m) {
  if (m.src > n_ports_) {
    throw DimensionError("message source " + std::to_string(m.src) + " outside port range");
  }
  ++total_messages_;
  total_bits_ += m.size_bits;
  const std::size_t k = index(m.kind);
  ++kind_count_[k];
  kind_bits_[k] += m.size_bits;
  kind_iterations_[k] = std::max(kind_iterations_[k], m.iteration + 1);
  port_bits_[m.src] += m.size_bits;
  ++port_messages_[m.src];
  if (retain_) messages_.push_back(m);
}

void MessageLog::clear() {
  messages_.clear();
  total_messages_ = 0;
  total_bits_ = 0;
  kind_count_.fill(0);
  kind_bits_.fill(0);
  kind_iterations_.fill(0);
  std::fill(port_bits_.begin(), port_bits_.end(), 0);
  std::fill(port_messages_.begin(), port_messages_.end(), 0);
}

std::uint32_t MessageLog::iterations_spanned(std::initializer_list<MessageKind> kinds) const {
  std::uint32_t span = 0;
  for (MessageKind kind : kinds) span = std::max(span, kind_iterations_[index(kind)]);
  return span;
}

}  // namespace serenade
