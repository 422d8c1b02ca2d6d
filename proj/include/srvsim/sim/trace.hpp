// Copyright 2026 srvsim contributors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef SRVSIM_SIM_TRACE_HPP_
#define SRVSIM_SIM_TRACE_HPP_

#include <cstdint>
#include <sstream>
#include <string>
#include <vector>

#include "srvsim/bytes.hpp"
#include "srvsim/wire/stack.hpp"

namespace srvsim::sim {

enum class TraceAction { Recv, Xmit, Drop, Deliver, RuleUpdate };

inline const char* to_string(TraceAction a) {
  switch (a) {
    case TraceAction::Recv: return "recv";
    case TraceAction::Xmit: return "xmit";
    case TraceAction::Drop: return "drop";
    case TraceAction::Deliver: return "deliver";
    case TraceAction::RuleUpdate: return "rule-update";
  }
  return "?";
}

// One audit record. Every packet transformation in the simulator emits at
// least one of these; end-to-end assertions run against them.
struct TraceEvent {
  uint64_t time = 0;
  std::string node;
  TraceAction action = TraceAction::Recv;
  wire::PacketSummary summary;
  std::string detail;  // drop reason, rule-update description, session note
  Bytes packet;        // raw bytes for optional hex export
};

// Tab-separated line, stable field order, "-" for absent fields. With
// `hex` the raw packet is appended for external dissector validation.
inline std::string format_trace_line(const TraceEvent& e, bool hex = false) {
  std::ostringstream out;
  auto field = [&out](const std::string& s) { out << '\t' << (s.empty() ? "-" : s); };
  out << e.time;
  field(e.node);
  field(to_string(e.action));
  const auto& s = e.summary;
  field(s.outer_src ? s.outer_src->str() : "");
  field(s.outer_dst ? s.outer_dst->str() : "");
  field(s.segments_left ? std::to_string(*s.segments_left) : "");
  field(s.teid ? std::to_string(*s.teid) : "");
  field(s.qfi ? std::to_string(*s.qfi) : "");
  field(s.inner_src ? s.inner_src->str() : "");
  field(s.inner_dst ? s.inner_dst->str() : "");
  if (s.payload_hash) {
    std::ostringstream h;
    h << std::hex << *s.payload_hash;
    field(h.str());
  } else {
    field("");
  }
  field(e.detail);
  if (hex) field(to_hex(e.packet));
  return out.str();
}

inline std::string format_trace(const std::vector<TraceEvent>& trace, bool hex = false) {
  std::string out;
  for (const auto& e : trace) {
    out += format_trace_line(e, hex);
    out += '\n';
  }
  return out;
}

}  // namespace srvsim::sim

#endif  // SRVSIM_SIM_TRACE_HPP_
