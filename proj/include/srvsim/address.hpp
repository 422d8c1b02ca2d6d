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

#ifndef SRVSIM_ADDRESS_HPP_
#define SRVSIM_ADDRESS_HPP_

#include <arpa/inet.h>

#include <array>
#include <compare>
#include <cstdint>
#include <cstring>
#include <optional>
#include <string>

#include "srvsim/bytes.hpp"

namespace srvsim {

// 128-bit IPv6 address in wire (big-endian) byte order.
class Ipv6Address {
 public:
  constexpr Ipv6Address() : bytes_{} {}
  explicit constexpr Ipv6Address(std::array<uint8_t, 16> bytes) : bytes_(bytes) {}

  static std::optional<Ipv6Address> parse(const std::string& text) {
    in6_addr addr{};
    if (inet_pton(AF_INET6, text.c_str(), &addr) != 1) return std::nullopt;
    std::array<uint8_t, 16> b{};
    std::memcpy(b.data(), addr.s6_addr, 16);
    return Ipv6Address(b);
  }

  static Ipv6Address from_view(ByteView v) {
    std::array<uint8_t, 16> b{};
    std::memcpy(b.data(), v.data(), 16);
    return Ipv6Address(b);
  }

  // Builds an address from two 64-bit halves, both in host order.
  static constexpr Ipv6Address from_u64(uint64_t hi, uint64_t lo) {
    std::array<uint8_t, 16> b{};
    for (int i = 0; i < 8; ++i) {
      b[static_cast<size_t>(i)] = static_cast<uint8_t>(hi >> (56 - 8 * i));
      b[static_cast<size_t>(8 + i)] = static_cast<uint8_t>(lo >> (56 - 8 * i));
    }
    return Ipv6Address(b);
  }

  uint64_t high64() const {
    uint64_t v = 0;
    for (int i = 0; i < 8; ++i) v = v << 8 | bytes_[static_cast<size_t>(i)];
    return v;
  }
  uint64_t low64() const {
    uint64_t v = 0;
    for (int i = 8; i < 16; ++i) v = v << 8 | bytes_[static_cast<size_t>(i)];
    return v;
  }

  const std::array<uint8_t, 16>& bytes() const { return bytes_; }
  ByteView view() const { return ByteView(bytes_.data(), bytes_.size()); }

  bool is_unspecified() const {
    for (uint8_t b : bytes_) {
      if (b != 0) return false;
    }
    return true;
  }

  std::string str() const {
    char buf[INET6_ADDRSTRLEN] = {};
    in6_addr addr{};
    std::memcpy(addr.s6_addr, bytes_.data(), 16);
    inet_ntop(AF_INET6, &addr, buf, sizeof(buf));
    return buf;
  }

  auto operator<=>(const Ipv6Address&) const = default;

 private:
  std::array<uint8_t, 16> bytes_;
};

// Address prefix (address + length in bits).
struct Prefix {
  Ipv6Address address;
  uint8_t length = 128;

  // Parses "addr/len"; a bare address is a /128.
  static std::optional<Prefix> parse(const std::string& text) {
    auto slash = text.find('/');
    if (slash == std::string::npos) {
      auto a = Ipv6Address::parse(text);
      if (!a) return std::nullopt;
      return Prefix{*a, 128};
    }
    auto a = Ipv6Address::parse(text.substr(0, slash));
    if (!a) return std::nullopt;
    int len = -1;
    try {
      len = std::stoi(text.substr(slash + 1));
    } catch (...) {
      return std::nullopt;
    }
    if (len < 0 || len > 128) return std::nullopt;
    return Prefix{*a, static_cast<uint8_t>(len)};
  }

  bool contains(const Ipv6Address& a) const {
    const auto& p = address.bytes();
    const auto& b = a.bytes();
    size_t full = length / 8;
    for (size_t i = 0; i < full; ++i) {
      if (p[i] != b[i]) return false;
    }
    uint8_t rem = length % 8;
    if (rem == 0) return true;
    uint8_t mask = static_cast<uint8_t>(0xff << (8 - rem));
    return (p[full] & mask) == (b[full] & mask);
  }

  std::string str() const { return address.str() + "/" + std::to_string(length); }

  auto operator<=>(const Prefix&) const = default;
};

}  // namespace srvsim

#endif  // SRVSIM_ADDRESS_HPP_
