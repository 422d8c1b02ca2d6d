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

#ifndef SRVSIM_SIM_TOPOLOGY_HPP_
#define SRVSIM_SIM_TOPOLOGY_HPP_

#include <cstdint>
#include <string>
#include <vector>

#include "srvsim/address.hpp"
#include "srvsim/behaviors.hpp"

namespace srvsim::sim {

enum class NodeKind { Ue, Gnb, SrGateway, SrTransit, EdgeHost, Controller, Smf };

inline const char* to_string(NodeKind k) {
  switch (k) {
    case NodeKind::Ue: return "ue";
    case NodeKind::Gnb: return "gnb";
    case NodeKind::SrGateway: return "sr-gateway";
    case NodeKind::SrTransit: return "sr-transit";
    case NodeKind::EdgeHost: return "edge-host";
    case NodeKind::Controller: return "controller";
    case NodeKind::Smf: return "smf";
  }
  return "?";
}

struct NodeSpec {
  std::string id;
  NodeKind kind = NodeKind::SrTransit;
  // Routable addresses. First entry is the node's primary address: the SR
  // source for gateways, the GTP-U endpoint for gNBs, the PFCP endpoint for
  // controller/SMF, the PDU session address for UEs.
  std::vector<Ipv6Address> addrs;
  std::vector<BehaviorBinding> bindings;  // SR nodes only
  // Attachment: serving gNB for a UE, access gateway for a gNB, DN gateway
  // for an edge host.
  std::string attached_to;
  bool echo = true;  // edge hosts answer delivered PDUs by default
};

struct LinkSpec {
  std::string a;
  std::string b;
  uint64_t delay = 1;  // abstract ticks
};

struct Topology {
  std::vector<NodeSpec> nodes;
  std::vector<LinkSpec> links;

  const NodeSpec* find(const std::string& id) const {
    for (const auto& n : nodes) {
      if (n.id == id) return &n;
    }
    return nullptr;
  }
  bool linked(const std::string& a, const std::string& b) const {
    for (const auto& l : links) {
      if ((l.a == a && l.b == b) || (l.a == b && l.b == a)) return true;
    }
    return false;
  }
};

}  // namespace srvsim::sim

#endif  // SRVSIM_SIM_TOPOLOGY_HPP_
