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

#ifndef SRVSIM_PFCP_SESSION_HPP_
#define SRVSIM_PFCP_SESSION_HPP_

#include <algorithm>
#include <optional>
#include <string>
#include <vector>

#include "srvsim/pfcp/codec.hpp"

namespace srvsim::pfcp {

// Packet detection info, the match half of a PDR.
struct Pdi {
  uint8_t source_interface = kInterfaceAccess;
  std::optional<FTeid> f_teid;           // access side
  std::optional<Ipv6Address> ue_ip;      // core side
  std::optional<std::string> network_instance;

  bool operator==(const Pdi&) const = default;
};

struct Pdr {
  uint16_t pdr_id = 0;
  uint32_t precedence = 0;
  Pdi pdi;
  std::optional<uint8_t> outer_header_removal;
  uint32_t far_id = 0;

  bool operator==(const Pdr&) const = default;
};

struct Far {
  uint32_t far_id = 0;
  uint8_t apply_action = kApplyActionForward;
  uint8_t destination_interface = kInterfaceCore;
  std::optional<OuterHeaderCreation> outer_header_creation;

  bool operator==(const Far&) const = default;
};

// Controller-side session state: what one PFCP session means once the
// grouped IEs are digested.
struct PfcpSession {
  FSeid cp_fseid;
  FSeid up_fseid;
  std::vector<Pdr> pdrs;
  std::vector<Far> fars;

  const Far* far_by_id(uint32_t id) const {
    for (const auto& f : fars) {
      if (f.far_id == id) return &f;
    }
    return nullptr;
  }
  const Pdr* access_pdr() const {
    for (const auto& p : pdrs) {
      if (p.pdi.source_interface == kInterfaceAccess && p.pdi.f_teid) return &p;
    }
    return nullptr;
  }
  const Pdr* core_pdr() const {
    for (const auto& p : pdrs) {
      if (p.pdi.source_interface == kInterfaceCore && p.pdi.ue_ip) return &p;
    }
    return nullptr;
  }
};

// Session decode failure: names the missing or malformed IE so the response
// cause can carry it.
struct SessionIeError {
  std::string what;
};

inline Result<Pdr, SessionIeError> parse_create_pdr(const Ie& create_pdr) {
  Pdr pdr;
  const Ie* id = create_pdr.find(kIePdrId);
  if (!id || !as_u16(*id)) return SessionIeError{"PDR ID"};
  pdr.pdr_id = *as_u16(*id);
  if (const Ie* prec = create_pdr.find(kIePrecedence); prec && as_u32(*prec)) {
    pdr.precedence = *as_u32(*prec);
  }
  const Ie* pdi = create_pdr.find(kIePdi);
  if (!pdi) return SessionIeError{"PDI"};
  const Ie* si = pdi->find(kIeSourceInterface);
  if (!si || !as_u8(*si)) return SessionIeError{"Source Interface"};
  pdr.pdi.source_interface = *as_u8(*si) & 0x0f;
  if (const Ie* ft = pdi->find(kIeFTeid)) {
    auto f = fteid_v6(*ft);
    if (!f) return SessionIeError{"F-TEID"};
    pdr.pdi.f_teid = f;
  }
  if (const Ie* ue = pdi->find(kIeUeIpAddress)) {
    auto u = ue_ip_v6(*ue);
    if (!u) return SessionIeError{"UE IP Address"};
    pdr.pdi.ue_ip = u;
  }
  if (const Ie* ni = pdi->find(kIeNetworkInstance)) {
    pdr.pdi.network_instance = network_instance(*ni);
  }
  if (const Ie* ohr = create_pdr.find(kIeOuterHeaderRemoval); ohr && !ohr->value.empty()) {
    pdr.outer_header_removal = ohr->value[0];
  }
  const Ie* far = create_pdr.find(kIeFarId);
  if (!far || !as_u32(*far)) return SessionIeError{"FAR ID"};
  pdr.far_id = *as_u32(*far);
  return pdr;
}

inline Result<Far, SessionIeError> parse_create_far(const Ie& create_far) {
  Far far;
  const Ie* id = create_far.find(kIeFarId);
  if (!id || !as_u32(*id)) return SessionIeError{"FAR ID"};
  far.far_id = *as_u32(*id);
  const Ie* action = create_far.find(kIeApplyAction);
  if (!action || !as_u8(*action)) return SessionIeError{"Apply Action"};
  far.apply_action = *as_u8(*action);
  if (const Ie* fp = create_far.find(kIeForwardingParameters)) {
    if (const Ie* di = fp->find(kIeDestinationInterface); di && as_u8(*di)) {
      far.destination_interface = *as_u8(*di) & 0x0f;
    }
    if (const Ie* ohc = fp->find(kIeOuterHeaderCreation)) {
      auto o = outer_header_creation_gtpu_v6(*ohc);
      if (!o) return SessionIeError{"Outer Header Creation"};
      far.outer_header_creation = o;
    }
  }
  return far;
}

struct SessionRules {
  std::vector<Pdr> pdrs;
  std::vector<Far> fars;
};

inline Result<SessionRules, SessionIeError> parse_session_rules(const PfcpMessage& msg) {
  SessionRules rules;
  for (const Ie* ie : msg.find_all(kIeCreatePdr)) {
    auto pdr = parse_create_pdr(*ie);
    if (!pdr.ok()) return pdr.error();
    rules.pdrs.push_back(std::move(pdr).value());
  }
  for (const Ie* ie : msg.find_all(kIeCreateFar)) {
    auto far = parse_create_far(*ie);
    if (!far.ok()) return far.error();
    rules.fars.push_back(std::move(far).value());
  }
  return rules;
}

// Checks the invariants an establishment must satisfy before any rule is
// compiled: an access PDR with F-TEID, a core PDR with UE IP, and every PDR
// referencing an existing FAR.
inline std::optional<SessionIeError> validate_session(const PfcpSession& s) {
  if (s.pdrs.empty()) return SessionIeError{"Create PDR"};
  if (s.fars.empty()) return SessionIeError{"Create FAR"};
  for (const auto& pdr : s.pdrs) {
    if (!s.far_by_id(pdr.far_id)) return SessionIeError{"FAR ID"};
  }
  if (!s.access_pdr()) return SessionIeError{"F-TEID"};
  if (!s.core_pdr()) return SessionIeError{"UE IP Address"};
  return std::nullopt;
}

// ---------------------------------------------------------------------------
// Message builders (what an SMF sends for the scenarios in scope).

struct SessionRequestParams {
  uint64_t cp_seid = 0;
  Ipv6Address cp_address;
  uint32_t uplink_teid = 0;
  Ipv6Address upf_gtp_address;  // where the gNB tunnels to (GTP6.D service address)
  Ipv6Address ue_ip;
  std::string network_instance;
  uint32_t downlink_teid = 0;
  Ipv6Address gnb_address;
  uint8_t qfi = 0;
};

inline Ie make_uplink_create_pdr(const SessionRequestParams& p) {
  return ie_grouped(
      kIeCreatePdr,
      {ie_u16(kIePdrId, 1), ie_u32(kIePrecedence, 100),
       ie_grouped(kIePdi, {ie_u8(kIeSourceInterface, kInterfaceAccess),
                           ie_fteid_v6(p.uplink_teid, p.upf_gtp_address),
                           ie_network_instance(p.network_instance)}),
       ie_u8(kIeOuterHeaderRemoval, kOuterHeaderRemovalGtpuUdpIpv6),
       ie_u32(kIeFarId, 1)});
}

inline Ie make_downlink_create_pdr(const SessionRequestParams& p) {
  return ie_grouped(
      kIeCreatePdr,
      {ie_u16(kIePdrId, 2), ie_u32(kIePrecedence, 100),
       ie_grouped(kIePdi, {ie_u8(kIeSourceInterface, kInterfaceCore),
                           ie_ue_ip_v6(p.ue_ip),
                           ie_network_instance(p.network_instance)}),
       ie_u32(kIeFarId, 2)});
}

inline Ie make_uplink_create_far() {
  return ie_grouped(kIeCreateFar,
                    {ie_u32(kIeFarId, 1), ie_u8(kIeApplyAction, kApplyActionForward),
                     ie_grouped(kIeForwardingParameters,
                                {ie_u8(kIeDestinationInterface, kInterfaceCore)})});
}

inline Ie make_downlink_create_far(const SessionRequestParams& p) {
  return ie_grouped(
      kIeCreateFar,
      {ie_u32(kIeFarId, 2), ie_u8(kIeApplyAction, kApplyActionForward),
       ie_grouped(kIeForwardingParameters,
                  {ie_u8(kIeDestinationInterface, kInterfaceAccess),
                   ie_outer_header_creation_gtpu_v6(p.downlink_teid, p.gnb_address,
                                                    p.qfi)})});
}

inline PfcpMessage make_session_establishment_request(uint32_t seq,
                                                      const SessionRequestParams& p) {
  PfcpMessage msg;
  msg.message_type = kSessionEstablishmentRequest;
  msg.seid = 0;  // UP SEID unknown until the response
  msg.sequence = seq;
  msg.ies.push_back(ie_node_id_v6(p.cp_address));
  msg.ies.push_back(ie_fseid_v6(p.cp_seid, p.cp_address));
  msg.ies.push_back(make_uplink_create_pdr(p));
  msg.ies.push_back(make_downlink_create_pdr(p));
  msg.ies.push_back(make_uplink_create_far());
  msg.ies.push_back(make_downlink_create_far(p));
  return msg;
}

// Modification re-states the downlink PDR/FAR with new tunnel parameters
// (the IE subset has no Update FAR; re-sent Create IEs replace same ids).
inline PfcpMessage make_downlink_update_request(uint32_t seq, uint64_t up_seid,
                                                const SessionRequestParams& p) {
  PfcpMessage msg;
  msg.message_type = kSessionModificationRequest;
  msg.seid = up_seid;
  msg.sequence = seq;
  msg.ies.push_back(make_downlink_create_pdr(p));
  msg.ies.push_back(make_downlink_create_far(p));
  return msg;
}

inline PfcpMessage make_session_deletion_request(uint32_t seq, uint64_t up_seid) {
  PfcpMessage msg;
  msg.message_type = kSessionDeletionRequest;
  msg.seid = up_seid;
  msg.sequence = seq;
  return msg;
}

}  // namespace srvsim::pfcp

#endif  // SRVSIM_PFCP_SESSION_HPP_
