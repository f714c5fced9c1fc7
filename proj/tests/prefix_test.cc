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
#include <random>
#include <vector>

#include "gtest/gtest.h"

namespace routefuzz {
namespace {

Prefix P(const char* text) { return parse_prefix(text); }

TEST(Ipv4AddressTest, ParsesStrictDottedQuad) {
  EXPECT_EQ(ParseIpv4("172.17.1.99")->ToString(), "172.17.1.99");
  EXPECT_EQ(ParseIpv4("0.0.0.0")->value(), 0u);
  EXPECT_EQ(ParseIpv4("255.255.255.255")->value(), 0xffffffffu);
  for (const char* bad : {"", "1.2.3", "1.2.3.4.5", "1.2.3.256", "01.2.3.4", "1..2.3",
                          "1.2.3.4.", "a.b.c.d", " 1.2.3.4", "1.2.3.-4"}) {
    EXPECT_FALSE(ParseIpv4(bad).has_value()) << bad;
  }
}

TEST(PrefixTest, ParsesSlashNotation) {
  Prefix p = P("208.65.152.0/22");
  EXPECT_EQ(p.address().ToString(), "208.65.152.0");
  EXPECT_EQ(p.length(), 22);
  EXPECT_EQ(P("0.0.0.0/0").length(), 0);
  EXPECT_EQ(P("0.0.0.0/0").ToString(), "0.0.0.0/0");
}

TEST(PrefixTest, ParsesMaskNotation) {
  EXPECT_EQ(P("208.65.152.0 mask 255.255.252.0"), P("208.65.152.0/22"));
  EXPECT_EQ(P("208.65.152.0 255.255.255.0"), P("208.65.152.0/24"));
}

TEST(PrefixTest, RejectsRatherThanCanonicalizes) {
  EXPECT_THROW(P("208.65.152.1/22"), PrefixError);
  EXPECT_THROW(P("208.65.152.1 255.255.255.0"), PrefixError);
  EXPECT_THROW(P("10.0.0.0/33"), PrefixError);
  EXPECT_THROW(P("10.0.0.0/"), PrefixError);
  EXPECT_THROW(P("10.0.0/8"), PrefixError);
  EXPECT_THROW(P("10.0.0.0 mask 255.0.255.0"), PrefixError);
  EXPECT_THROW(P("10.0.0.0 mask"), PrefixError);
}

// Oracle: a mask is contiguous iff it equals the all-ones mask of its
// popcount. Checked for every contiguous mask and a sample of others.
TEST(PrefixTest, MaskLengthMatchesPopcountOracle) {
  for (int len = 0; len <= 32; ++len) {
    uint32_t mask = len == 0 ? 0 : ~uint32_t{0} << (32 - len);
    ASSERT_EQ(MaskLength(Ipv4Address(mask)), len);
    EXPECT_EQ(std::popcount(mask), len);
  }
  std::mt19937 rng(7);
  for (int i = 0; i < 20000; ++i) {
    uint32_t m = rng();
    int pc = std::popcount(m);
    bool contiguous = m == (pc == 0 ? 0u : ~uint32_t{0} << (32 - pc));
    EXPECT_EQ(MaskLength(Ipv4Address(m)).has_value(), contiguous);
  }
}

TEST(PrefixContainsTest, KnownPairs) {
  EXPECT_TRUE(prefix_contains(P("208.65.152.0/22"), P("208.65.153.0/24")));
  EXPECT_FALSE(prefix_contains(P("208.65.152.0/24"), P("208.65.152.0/22")));
  EXPECT_TRUE(prefix_contains(P("0.0.0.0/0"), P("208.65.152.0/22")));
}

// Range-arithmetic oracle over every pair of prefixes inside 208.65.144.0/20
// with mask lengths 20 through 26.
TEST(PrefixContainsTest, MatchesRangeOracleExhaustively) {
  const uint32_t base = P("208.65.144.0/20").address().value();
  std::vector<Prefix> all;
  for (int len = 20; len <= 26; ++len) {
    for (uint32_t i = 0; i < (1u << (len - 20)); ++i) {
      all.emplace_back(Ipv4Address(base + (i << (32 - len))), len);
    }
  }
  ASSERT_EQ(all.size(), 127u);
  int checked = 0;
  for (const auto& outer : all) {
    uint64_t o_first = outer.address().value();
    uint64_t o_last = o_first + (uint64_t{1} << (32 - outer.length())) - 1;
    for (const auto& inner : all) {
      uint64_t i_first = inner.address().value();
      uint64_t i_last = i_first + (uint64_t{1} << (32 - inner.length())) - 1;
      bool expected = o_first <= i_first && i_last <= o_last;
      ASSERT_EQ(prefix_contains(outer, inner), expected)
          << outer.ToString() << " vs " << inner.ToString();
      ++checked;
    }
  }
  EXPECT_EQ(checked, 127 * 127);
}

Prefix RandomPrefix(std::mt19937& rng) {
  // Narrow address space so that related pairs are common.
  int len = static_cast<int>(rng() % 9) + 16;
  uint32_t addr = 0x0a000000u | (rng() & 0x0000ffffu) << 8;
  return Truncate(Ipv4Address(addr), len);
}

TEST(PrefixContainsTest, IsPartialOrder) {
  std::mt19937 rng(2024);
  for (int i = 0; i < 5000; ++i) {
    Prefix a = RandomPrefix(rng), b = RandomPrefix(rng), c = RandomPrefix(rng);
    EXPECT_TRUE(prefix_contains(a, a));
    if (prefix_contains(a, b) && prefix_contains(b, a)) EXPECT_EQ(a, b);
    if (prefix_contains(a, b) && prefix_contains(b, c)) EXPECT_TRUE(prefix_contains(a, c));
  }
}

}  // namespace
}  // namespace routefuzz
