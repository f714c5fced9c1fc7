// Copyright 2026 The routefuzz Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef ROUTEFUZZ_PREFIX_H_
#define ROUTEFUZZ_PREFIX_H_

#include <compare>
#include <cstdint>
#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace routefuzz {

// An IPv4 address in host byte order.
class Ipv4Address {
 public:
  constexpr Ipv4Address() = default;
  constexpr explicit Ipv4Address(uint32_t value) : value_(value) {}

  constexpr uint32_t value() const { return value_; }
  std::string ToString() const;

  friend constexpr auto operator<=>(Ipv4Address, Ipv4Address) = default;

 private:
  uint32_t value_ = 0;
};

// Strict dotted-quad parse. Rejects leading zeros, empty octets and values
// above 255.
std::optional<Ipv4Address> ParseIpv4(std::string_view text);

class PrefixError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A canonical CIDR block: host bits below `length` are always zero.
class Prefix {
 public:
  constexpr Prefix() = default;

  // Throws PrefixError if `length` > 32 or host bits are set.
  Prefix(Ipv4Address address, int length);

  Ipv4Address address() const { return address_; }
  int length() const { return length_; }

  uint32_t Mask() const;
  Ipv4Address DottedMask() const { return Ipv4Address(Mask()); }
  Ipv4Address LastAddress() const;
  bool Contains(Ipv4Address addr) const;

  // "a.b.c.d/n".
  std::string ToString() const;

  friend auto operator<=>(const Prefix&, const Prefix&) = default;

 private:
  Ipv4Address address_;
  int length_ = 0;
};

// True iff `inner`'s address range is a subset of `outer`'s.
bool prefix_contains(const Prefix& outer, const Prefix& inner);

// Accepts "a.b.c.d/n", "a.b.c.d mask m.m.m.m" and "a.b.c.d m.m.m.m".
// Rejects rather than canonicalizes a prefix with host bits set.
Prefix parse_prefix(std::string_view text);

// Mask length for a contiguous dotted mask, nullopt otherwise.
std::optional<int> MaskLength(Ipv4Address mask);

// Builds the canonical prefix covering `addr` at `length`.
Prefix Truncate(Ipv4Address addr, int length);

}  // namespace routefuzz

template <>
struct std::hash<routefuzz::Prefix> {
  size_t operator()(const routefuzz::Prefix& p) const noexcept {
    return std::hash<uint64_t>()((uint64_t{p.address().value()} << 6) |
                                 static_cast<uint64_t>(p.length()));
  }
};

#endif  // ROUTEFUZZ_PREFIX_H_
