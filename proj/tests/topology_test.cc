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

#include "routefuzz/topology.h"

#include <gtest/gtest.h>

#include <set>

#include "routefuzz/simulator.h"
#include "testing/test_util.h"

namespace routefuzz {
namespace {

using testing::RandomTopologyText;
using testing::Tiny5;

TEST(TopologyTest, Tiny5Structure) {
  Topology t = Tiny5();
  ASSERT_EQ(t.nodes.size(), 5u);
  ASSERT_EQ(t.links.size(), 5u);
  std::set<Asn> asns;
  for (const auto& n : t.nodes) asns.insert(n.asn);
  EXPECT_EQ(asns.size(), 5u);
  EXPECT_TRUE(t.warnings.empty());

  std::set<std::pair<std::string, std::string>> edges;
  for (const auto& l : t.links) edges.insert(std::minmax(l.a, l.b));
  std::set<std::pair<std::string, std::string>> want = {
      {"Customer", "R1"}, {"Customer", "R2"}, {"R1", "R2"}, {"DC1", "R1"}, {"DC2", "R2"}};
  EXPECT_EQ(edges, want);
  EXPECT_EQ(t.Find("DC1")->owned.at(0).ToString(), "208.65.152.0/22");
}

TEST(TopologyTest, ChainHasIdleSessions) {
  Topology t = load_topology(
      "node A asn 1 router-id 1.1.1.1\n"
      "node B asn 2 router-id 2.2.2.2\n"
      "node C asn 3 router-id 3.3.3.3\n"
      "node D asn 4 router-id 4.4.4.4\n"
      "node E asn 5 router-id 5.5.5.5\n"
      "link A B subnet 10.0.0.0/30\n"
      "link B C subnet 10.0.0.4/30\n"
      "link C D subnet 10.0.0.8/30\n"
      "link D E subnet 10.0.0.12/30\n");
  EXPECT_EQ(t.links.size(), 4u);
  Network net(t);
  auto sessions = net.sessions();
  EXPECT_EQ(sessions.size(), 8u);  // both directions of 4 sessions
  for (const auto& s : sessions) EXPECT_EQ(s.state, SessionState::kIdle);
}

TEST(TopologyTest, AddressesGoLowToSmallerName) {
  Topology t = load_topology(
      "node zeta asn 1 router-id 1.1.1.1\n"
      "node alpha asn 2 router-id 2.2.2.2\n"
      "node mid asn 3 router-id 3.3.3.3\n"
      "link zeta alpha subnet 10.0.0.0/30\n"
      "link mid zeta subnet 10.0.0.4/31\n");
  EXPECT_EQ(t.links[0].AddressOf("alpha").ToString(), "10.0.0.1");
  EXPECT_EQ(t.links[0].AddressOf("zeta").ToString(), "10.0.0.2");
  EXPECT_EQ(t.links[1].AddressOf("mid").ToString(), "10.0.0.4");
  EXPECT_EQ(t.links[1].AddressOf("zeta").ToString(), "10.0.0.5");
}

TEST(TopologyTest, CommentsAndBlankLines) {
  Topology t = load_topology(
      "# header\n\n"
      "node A asn 1 router-id 1.1.1.1   # trailing\n"
      "node B asn 2 router-id 2.2.2.2 owns 10.1.0.0/16 10.2.0.0/16\n"
      "link A B subnet 10.0.0.0/30");
  EXPECT_EQ(t.nodes[1].owned.size(), 2u);
  EXPECT_EQ(t.links.size(), 1u);
}

TEST(TopologyTest, UnlinkedNodeWarns) {
  Topology t = load_topology(
      "node A asn 1 router-id 1.1.1.1\n"
      "node B asn 2 router-id 2.2.2.2\n"
      "node C asn 3 router-id 3.3.3.3\n"
      "link A B subnet 10.0.0.0/30\n");
  ASSERT_EQ(t.warnings.size(), 1u);
  EXPECT_NE(t.warnings[0].find("'C'"), std::string::npos);
}

class TopologyErrorTest : public ::testing::TestWithParam<std::pair<const char*, const char*>> {};

TEST_P(TopologyErrorTest, Rejects) {
  auto [text, fragment] = GetParam();
  try {
    load_topology(text);
    FAIL() << "accepted: " << text;
  } catch (const TopologyError& e) {
    EXPECT_NE(std::string(e.what()).find(fragment), std::string::npos) << e.what();
  }
}

INSTANTIATE_TEST_SUITE_P(
    Cases, TopologyErrorTest,
    ::testing::Values(
        std::pair{"node A asn 1 router-id 1.1.1.1\nnode B asn 2 router-id 1.1.1.1\n",
                  "duplicate router-id"},
        std::pair{"node A asn 1 router-id 1.1.1.1\nnode A asn 2 router-id 2.2.2.2\n",
                  "duplicate node"},
        std::pair{"node A asn 1 router-id 1.1.1.1\nnode B asn 2 router-id 2.2.2.2\n"
                  "node C asn 3 router-id 3.3.3.3\n"
                  "link A B subnet 10.0.0.0/30\nlink B C subnet 10.0.0.0/29\n",
                  "overlaps"},
        std::pair{"node A asn 1 router-id 1.1.1.1\nlink A B subnet 10.0.0.0/30\n",
                  "dangling link endpoint 'B'"},
        std::pair{"node A asn 1 router-id 1.1.1.1\nlink A A subnet 10.0.0.0/30\n", "itself"},
        std::pair{"node A asn 1 router-id 1.1.1.1\nnode B asn 1 router-id 2.2.2.2\n"
                  "link A B subnet 10.0.0.0/30\n",
                  "same AS"},
        std::pair{"node A asn 1 router-id 1.1.1.1\nnode B asn 2 router-id 2.2.2.2\n"
                  "link A B subnet 10.0.0.0/32\n",
                  "too small"},
        std::pair{"node A asn 1 router-id 1.1.1.1\nnode B asn 2 router-id 2.2.2.2\n"
                  "link A B subnet 10.0.0.1/30\n",
                  "line 3"},
        std::pair{"node A asn 0 router-id 1.1.1.1\n", "invalid AS number"},
        std::pair{"node A asn 1 router-id 1.1.1\n", "invalid router-id"},
        std::pair{"node A asn 1 router-id 1.1.1.1 owns\n", "owns"},
        std::pair{"router A\n", "unknown directive"}));

TEST(TopologyTest, TextRoundTrip) {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 50; ++trial) {
    Topology t = load_topology(RandomTopologyText(rng, 2 + trial % 12, 0.3));
    Topology again = load_topology(t.ToText());
    EXPECT_EQ(again.ToText(), t.ToText());
    ASSERT_EQ(again.links.size(), t.links.size());
    for (size_t i = 0; i < t.links.size(); ++i) {
      EXPECT_EQ(again.links[i].a_address, t.links[i].a_address);
      EXPECT_EQ(again.links[i].b_address, t.links[i].b_address);
    }
  }
}

TEST(TopologyTest, BaselineConfigHasNeighborPerLink) {
  Topology t = Tiny5();
  RouterConfig r1 = BaselineConfig(t, "R1");
  EXPECT_EQ(r1.local_asn, 65010u);
  ASSERT_EQ(r1.neighbors.size(), 3u);
  EXPECT_TRUE(r1.networks.empty());
  RouterConfig dc1 = BaselineConfig(t, "DC1");
  ASSERT_EQ(dc1.neighbors.size(), 1u);
  EXPECT_EQ(dc1.neighbors[0].remote_asn, 65010u);
  ASSERT_EQ(dc1.networks.size(), 1u);
  EXPECT_EQ(dc1.networks[0].prefix.ToString(), "208.65.152.0/22");
  // The baseline survives a render/parse round trip.
  EXPECT_EQ(parse_config(render_config(dc1)).config, dc1);
  EXPECT_THROW(BaselineConfig(t, "nope"), TopologyError);
}

}  // namespace
}  // namespace routefuzz
