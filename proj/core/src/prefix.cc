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

#include "routefuzz/prefix.h"

#include <bit>
#include <charconv>
#include <string>
#include <vector>

namespace routefuzz {
namespace {

uint32_t MaskFor(int length) {
  return length == 0 ? 0u : ~uint32_t{0} << (32 - length);
}

std::optional<uint32_t> ParseDecimal(std::string_view text, uint32_t max) {
  if (text.empty() || text.size() > 10) return std::nullopt;
  if (text.size() > 1 && text[0] == '0') return std::nullopt;
  uint64_t value = 0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc() || ptr != text.data() + text.size()) return std::nullopt;
  if (value > max) return std::nullopt;
  return static_cast<uint32_t>(value);
}

std::vector<std::string_view> SplitSpaces(std::string_view text) {
  std::vector<std::string_view> out;
  size_t i = 0;
  while (i < text.size()) {
    while (i < text.size() && text[i] == ' ') ++i;
    size_t j = i;
    while (j < text.size() && text[j] != ' ') ++j;
    if (j > i) out.push_back(text.substr(i, j - i));
    i = j;
  }
  return out;
}

}  // namespace

std::string Ipv4Address::ToString() const {
  return std::to_string(value_ >> 24) + "." + std::to_string((value_ >> 16) & 0xff) +
         "." + std::to_string((value_ >> 8) & 0xff) + "." +
         std::to_string(value_ & 0xff);
}

std::optional<Ipv4Address> ParseIpv4(std::string_view text) {
  uint32_t value = 0;
  size_t start = 0;
  for (int octet = 0; octet < 4; ++octet) {
    size_t dot = text.find('.', start);
    if ((octet < 3) == (dot == std::string_view::npos)) return std::nullopt;
    auto part = ParseDecimal(text.substr(start, dot == std::string_view::npos
                                                    ? std::string_view::npos
                                                    : dot - start),
                             255);
    if (!part) return std::nullopt;
    value = (value << 8) | *part;
    start = dot + 1;
  }
  return Ipv4Address(value);
}

Prefix::Prefix(Ipv4Address address, int length) : address_(address), length_(length) {
  if (length < 0 || length > 32) {
    throw PrefixError("mask length out of range: " + std::to_string(length));
  }
  if ((address.value() & ~MaskFor(length)) != 0) {
    throw PrefixError("host bits set in " + address.ToString() + "/" +
                      std::to_string(length));
  }
}

uint32_t Prefix::Mask() const { return MaskFor(length_); }

Ipv4Address Prefix::LastAddress() const {
  return Ipv4Address(address_.value() | ~Mask());
}

bool Prefix::Contains(Ipv4Address addr) const {
  return (addr.value() & Mask()) == address_.value();
}

std::string Prefix::ToString() const {
  return address_.ToString() + "/" + std::to_string(length_);
}

bool prefix_contains(const Prefix& outer, const Prefix& inner) {
  return outer.length() <= inner.length() && outer.Contains(inner.address());
}

std::optional<int> MaskLength(Ipv4Address mask) {
  uint32_t m = mask.value();
  int ones = std::popcount(m);
  if (MaskFor(ones) != m) return std::nullopt;
  return ones;
}

Prefix Truncate(Ipv4Address addr, int length) {
  return Prefix(Ipv4Address(addr.value() & MaskFor(length)), length);
}

Prefix parse_prefix(std::string_view text) {
  std::string_view address_text;
  int length = -1;
  if (auto slash = text.find('/'); slash != std::string_view::npos) {
    address_text = text.substr(0, slash);
    auto len = ParseDecimal(text.substr(slash + 1), 1000);
    if (!len) throw PrefixError("malformed mask length in '" + std::string(text) + "'");
    if (*len > 32) throw PrefixError("mask length out of range in '" + std::string(text) + "'");
    length = static_cast<int>(*len);
  } else {
    auto parts = SplitSpaces(text);
    std::string_view mask_text;
    if (parts.size() == 3 && parts[1] == "mask") {
      mask_text = parts[2];
    } else if (parts.size() == 2) {
      mask_text = parts[1];
    } else {
      throw PrefixError("malformed prefix '" + std::string(text) + "'");
    }
    address_text = parts[0];
    auto mask = ParseIpv4(mask_text);
    if (!mask) throw PrefixError("malformed mask '" + std::string(mask_text) + "'");
    auto len = MaskLength(*mask);
    if (!len) throw PrefixError("non-contiguous mask '" + std::string(mask_text) + "'");
    length = *len;
  }
  auto address = ParseIpv4(address_text);
  if (!address) throw PrefixError("malformed address '" + std::string(address_text) + "'");
  return Prefix(*address, length);
}

}  // namespace routefuzz
