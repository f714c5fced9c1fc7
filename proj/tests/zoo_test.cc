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

#include "routefuzz/zoo.h"

#include <gtest/gtest.h>

#include <set>
#include <sstream>

#include "routefuzz/simulator.h"
#include "testing/test_util.h"

namespace routefuzz {
namespace {

using testing::ReadFile;
using testing::TestDataDir;

std::string Zoo(const std::string& name) { return ReadFile(TestDataDir() / "data" / "zoo" / name); }

std::string Graph(int nodes, const std::vector<std::pair<int, int>>& edges) {
  std::ostringstream s;
  s << "<graphml><graph edgedefault=\"undirected\">";
  for (int i = 0; i < nodes; ++i) s << "<node id=\"" << i << "\"/>";
  for (auto [a, b] : edges) s << "<edge source=\"" << a << "\" target=\"" << b << "\"/>";
  s << "</graph></graphml>";
  return s.str();
}

TEST(ZooImportTest, TinyGraph) {
  ZooImport z = import_topology_zoo(Zoo("tiny5.graphml"));
  const Topology& t = z.topology;
  ASSERT_EQ(t.nodes.size(), 5u);
  EXPECT_EQ(t.links.size(), 5u);
  std::set<Asn> asns;
  std::set<Prefix> owned;
  for (size_t i = 0; i < t.nodes.size(); ++i) {
    const auto& n = t.nodes[i];
    EXPECT_EQ(n.name, "n" + std::to_string(i));
    asns.insert(n.asn);
    ASSERT_EQ(n.owned.size(), 1u);
    owned.insert(n.owned[0]);
    EXPECT_TRUE(n.owned[0].Contains(n.router_id));
    EXPECT_TRUE(prefix_contains(parse_prefix("10.0.0.0/8"), n.owned[0]));
  }
  EXPECT_EQ(asns.size(), 5u);
  EXPECT_EQ(*asns.begin(), 64512u);
  EXPECT_EQ(owned.size(), 5u);
  for (auto it = owned.begin(); std::next(it) != owned.end(); ++it) {
    EXPECT_FALSE(prefix_contains(*it, *std::next(it)));
  }
  for (const auto& l : t.links) {
    EXPECT_EQ(l.subnet.length(), 30);
    EXPECT_TRUE(prefix_contains(parse_prefix("172.16.0.0/12"), l.subnet));
  }
  EXPECT_EQ(t.nodes[0].asn, 64512u);
  EXPECT_EQ(z.names.at("3"), "n3");
  EXPECT_EQ(z.text.find("London"), std::string::npos);
  // One parallel edge and one self-loop, no size warning.
  EXPECT_EQ(z.warnings.size(), 2u);
  EXPECT_EQ(load_topology(z.text).ToText(), t.ToText());
  Network net(t);
  EXPECT_TRUE(net.converge().first.converged);
}

TEST(ZooImportTest, Deterministic) {
  EXPECT_EQ(import_topology_zoo(Zoo("tiny5.graphml")).text,
            import_topology_zoo(Zoo("tiny5.graphml")).text);
  // Document order does not matter; sorted ids do.
  EXPECT_EQ(import_topology_zoo(Graph(5, {{0, 1}, {3, 4}})).text,
            import_topology_zoo(
                "<graphml><graph><edge source=\"3\" target=\"4\"/><node id=\"4\"/><node id=\"3\"/>"
                "<node id=\"2\"/><node id=\"1\"/><node id=\"0\"/><edge source=\"1\" "
                "target=\"0\"/></graph></graphml>")
                .text);
}

TEST(ZooImportTest, SizeWarnings) {
  EXPECT_EQ(import_topology_zoo(Graph(4, {{0, 1}, {1, 2}, {2, 3}})).warnings.size(), 1u);
  std::vector<std::pair<int, int>> ring;
  for (int i = 0; i < 16; ++i) ring.push_back({i, (i + 1) % 16});
  ZooImport z = import_topology_zoo(Graph(16, ring));
  EXPECT_EQ(z.topology.nodes.size(), 16u);
  EXPECT_EQ(z.warnings.size(), 1u);
  EXPECT_TRUE(import_topology_zoo(Graph(15, {{0, 1}})).warnings.size() >= 1u);  // unlinked nodes
}

TEST(ZooImportTest, NameSanitizing) {
  ZooImport z = import_topology_zoo(
      "<graphml><graph><node id=\"New York\"/><node id=\"New_York\"/><node id=\"x#1\"/>"
      "<edge source=\"New York\" target=\"x#1\"/></graph></graphml>");
  EXPECT_EQ(z.names.at("New York"), "New_York");
  EXPECT_EQ(z.names.at("New_York"), "New_York_2");
  EXPECT_EQ(z.names.at("x#1"), "x_1");
}

TEST(ZooImportTest, Errors) {
  EXPECT_THROW(import_topology_zoo(Zoo("empty.graphml")), ZooError);
  EXPECT_THROW(import_topology_zoo(Zoo("malformed.graphml")), ZooError);
  EXPECT_THROW(import_topology_zoo("<html/>"), ZooError);
  EXPECT_THROW(import_topology_zoo("<graphml/>"), ZooError);
  EXPECT_THROW(import_topology_zoo(Graph(2, {{0, 7}})), ZooError);
  EXPECT_THROW(import_topology_zoo("<graphml><graph><node/></graph></graphml>"), ZooError);
  EXPECT_THROW(import_topology_zoo("<graphml><graph><node id=\"a\"/><node id=\"a\"/></graph></graphml>"),
               ZooError);
  ZooOptions small;
  small.max_asn = small.base_asn + 2;
  EXPECT_THROW(import_topology_zoo(Graph(4, {}), small), ZooError);
  small = ZooOptions{};
  small.owned_supernet = parse_prefix("10.0.0.0/21");
  EXPECT_THROW(import_topology_zoo(Graph(3, {}), small), ZooError);
  small = ZooOptions{};
  small.link_supernet = parse_prefix("172.16.0.0/29");
  EXPECT_THROW(import_topology_zoo(Graph(4, {{0, 1}, {1, 2}, {2, 3}}), small), ZooError);
  EXPECT_NO_THROW(import_topology_zoo(Graph(3, {{0, 1}, {1, 2}}), small));
}

}  // namespace
}  // namespace routefuzz
