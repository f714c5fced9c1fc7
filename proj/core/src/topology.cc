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

#include <algorithm>
#include <charconv>
#include <set>
#include <sstream>

namespace routefuzz {
namespace {

std::vector<std::string_view> Words(std::string_view line) {
  std::vector<std::string_view> out;
  size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && (line[i] == ' ' || line[i] == '\t' || line[i] == '\r')) ++i;
    size_t j = i;
    while (j < line.size() && line[j] != ' ' && line[j] != '\t' && line[j] != '\r') ++j;
    if (j > i) out.push_back(line.substr(i, j - i));
    i = j;
  }
  return out;
}

[[noreturn]] void Fail(size_t line, const std::string& message) {
  throw TopologyError("topology line " + std::to_string(line) + ": " + message);
}

}  // namespace

const TopologyNode* Topology::Find(std::string_view name) const {
  for (const auto& n : nodes) {
    if (n.name == name) return &n;
  }
  return nullptr;
}

size_t Topology::IndexOf(std::string_view name) const {
  for (size_t i = 0; i < nodes.size(); ++i) {
    if (nodes[i].name == name) return i;
  }
  return nodes.size();
}

std::string Topology::ToText() const {
  std::ostringstream out;
  for (const auto& n : nodes) {
    out << "node " << n.name << " asn " << n.asn << " router-id " << n.router_id.ToString();
    if (!n.owned.empty()) {
      out << " owns";
      for (const auto& p : n.owned) out << ' ' << p.ToString();
    }
    out << '\n';
  }
  for (const auto& l : links) {
    out << "link " << l.a << ' ' << l.b << " subnet " << l.subnet.ToString() << '\n';
  }
  return out.str();
}

Topology load_topology(std::string_view text) {
  Topology topo;
  std::set<uint32_t> router_ids;
  struct PendingLink {
    size_t line;
    TopologyLink link;
  };
  std::vector<PendingLink> pending;

  size_t number = 0;
  size_t pos = 0;
  while (pos <= text.size()) {
    size_t nl = text.find('\n', pos);
    std::string_view raw = text.substr(pos, nl == std::string_view::npos ? std::string_view::npos
                                                                         : nl - pos);
    pos = nl == std::string_view::npos ? text.size() + 1 : nl + 1;
    ++number;
    if (auto hash = raw.find('#'); hash != std::string_view::npos) raw = raw.substr(0, hash);
    auto w = Words(raw);
    if (w.empty()) continue;

    if (w[0] == "node") {
      if (w.size() < 6 || w[2] != "asn" || w[4] != "router-id") {
        Fail(number, "expected 'node <name> asn <n> router-id <ip> [owns <prefix>...]'");
      }
      TopologyNode node;
      node.name = std::string(w[1]);
      if (topo.Find(node.name)) Fail(number, "duplicate node '" + node.name + "'");
      uint64_t asn = 0;
      auto [ptr, ec] = std::from_chars(w[3].data(), w[3].data() + w[3].size(), asn);
      if (ec != std::errc() || ptr != w[3].data() + w[3].size() || asn == 0 ||
          asn > 0xffffffffULL) {
        Fail(number, "invalid AS number '" + std::string(w[3]) + "'");
      }
      node.asn = static_cast<Asn>(asn);
      auto rid = ParseIpv4(w[5]);
      if (!rid) Fail(number, "invalid router-id '" + std::string(w[5]) + "'");
      node.router_id = *rid;
      if (!router_ids.insert(rid->value()).second) {
        Fail(number, "duplicate router-id " + rid->ToString());
      }
      if (w.size() > 6) {
        if (w[6] != "owns" || w.size() == 7) Fail(number, "expected 'owns <prefix>...'");
        for (size_t i = 7; i < w.size(); ++i) {
          try {
            node.owned.push_back(parse_prefix(w[i]));
          } catch (const PrefixError& e) {
            Fail(number, e.what());
          }
        }
      }
      topo.nodes.push_back(std::move(node));
    } else if (w[0] == "link") {
      if (w.size() != 5 || w[3] != "subnet") Fail(number, "expected 'link <a> <b> subnet <prefix>'");
      TopologyLink link;
      link.a = std::string(w[1]);
      link.b = std::string(w[2]);
      if (link.a == link.b) Fail(number, "link from '" + link.a + "' to itself");
      try {
        link.subnet = parse_prefix(w[4]);
      } catch (const PrefixError& e) {
        Fail(number, e.what());
      }
      if (link.subnet.length() > 31) Fail(number, "link subnet too small for two endpoints");
      uint32_t base = link.subnet.address().value();
      Ipv4Address low(link.subnet.length() == 31 ? base : base + 1);
      Ipv4Address high(low.value() + 1);
      bool a_first = link.a < link.b;
      link.a_address = a_first ? low : high;
      link.b_address = a_first ? high : low;
      pending.push_back({number, std::move(link)});
    } else {
      Fail(number, "unknown directive '" + std::string(w[0]) + "'");
    }
  }

  for (auto& [line, link] : pending) {
    const TopologyNode* a = topo.Find(link.a);
    const TopologyNode* b = topo.Find(link.b);
    if (!a) Fail(line, "dangling link endpoint '" + link.a + "'");
    if (!b) Fail(line, "dangling link endpoint '" + link.b + "'");
    if (a->asn == b->asn) Fail(line, "link between nodes of the same AS (iBGP is not modeled)");
    for (const auto& other : topo.links) {
      if (prefix_contains(other.subnet, link.subnet) ||
          prefix_contains(link.subnet, other.subnet)) {
        Fail(line, "link subnet " + link.subnet.ToString() + " overlaps " +
                       other.subnet.ToString());
      }
    }
    topo.links.push_back(std::move(link));
  }

  for (const auto& n : topo.nodes) {
    bool linked = std::any_of(topo.links.begin(), topo.links.end(),
                              [&](const TopologyLink& l) { return l.a == n.name || l.b == n.name; });
    if (!linked) topo.warnings.push_back("node '" + n.name + "' has no links");
  }
  return topo;
}

RouterConfig BaselineConfig(const Topology& topology, std::string_view node) {
  const TopologyNode* self = topology.Find(node);
  if (!self) throw TopologyError("unknown node '" + std::string(node) + "'");
  RouterConfig c;
  c.local_asn = self->asn;
  c.router_id = self->router_id;
  c.log_neighbor_changes = true;
  for (const auto& link : topology.links) {
    if (link.a != node && link.b != node) continue;
    const std::string& peer = link.Other(node);
    c.neighbors.push_back({link.AddressOf(peer), topology.Find(peer)->asn, std::nullopt});
  }
  for (const auto& p : self->owned) c.networks.push_back({p});
  return c;
}

}  // namespace routefuzz
