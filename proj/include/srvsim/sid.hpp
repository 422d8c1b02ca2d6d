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

#ifndef SRVSIM_SID_HPP_
#define SRVSIM_SID_HPP_

#include <cstdint>
#include <string>
#include <vector>

#include "srvsim/address.hpp"
#include "srvsim/result.hpp"

namespace srvsim {

// A segment identifier: a 128-bit address structured as locator + function,
// with the remaining low-order bits available as behavior arguments.
struct Sid {
  Ipv6Address value;
  uint8_t locator_len = 64;
  uint8_t function_len = 0;

  uint8_t argument_offset() const {
    return static_cast<uint8_t>(locator_len + function_len);
  }

  bool operator==(const Sid&) const = default;
};

// Path-ordered list of segments: front() is the first waypoint. Note this is
// the reverse of SRH wire order.
using SegmentList = std::vector<Ipv6Address>;

enum class SidError { PrefixTooLong };

// End.M.GTP6.E argument layout in the low-order 40 bits of the SID:
// qfi(6) | reserved(2) | teid(32). One concrete choice where RFC 9433 §6.2
// leaves the placement to the operator.
inline constexpr uint8_t kGtp6eArgBits = 40;

struct Gtp6eArgs {
  uint32_t teid = 0;
  uint8_t qfi = 0;

  bool operator==(const Gtp6eArgs&) const = default;
};

// Writes (teid, qfi) into the low 40 bits of the prefix address. The prefix
// (locator + function) must leave at least 40 free low-order bits.
inline Result<Ipv6Address, SidError> encode_gtp6e_sid(const Prefix& prefix,
                                                      uint32_t teid, uint8_t qfi) {
  if (prefix.length > 128 - kGtp6eArgBits) return SidError::PrefixTooLong;
  uint64_t args = static_cast<uint64_t>(qfi & 0x3f) << 34 | teid;
  uint64_t lo = prefix.address.low64();
  lo = (lo & ~((uint64_t{1} << kGtp6eArgBits) - 1)) | args;
  return Ipv6Address::from_u64(prefix.address.high64(), lo);
}

inline Gtp6eArgs decode_gtp6e_sid(const Ipv6Address& sid) {
  uint64_t lo = sid.low64();
  Gtp6eArgs args;
  args.qfi = static_cast<uint8_t>((lo >> 34) & 0x3f);
  args.teid = static_cast<uint32_t>(lo & 0xffffffff);
  return args;
}

}  // namespace srvsim

#endif  // SRVSIM_SID_HPP_
