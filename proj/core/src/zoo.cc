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

#include <algorithm>
#include <cctype>
#include <set>
#include <sstream>

#include <boost/property_tree/ptree.hpp>
#include <boost/property_tree/xml_parser.hpp>

namespace routefuzz {
namespace {

namespace pt = boost::property_tree;

std::string Sanitize(const std::string& id) {
  std::string out;
  for (char c : id) {
    bool ok = std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '-' || c == '.';
    out += ok ? c : '_';
  }
  if (out.empty() || !std::isalpha(static_cast<unsigned char>(out[0]))) out = "n" + out;
  return out;
}

const pt::ptree& GraphOf(const pt::ptree& doc) {
  auto root = doc.get_child_optional("graphml");
  if (!root) throw ZooError("not GraphML: no <graphml> element");
  auto graph = root->get_child_optional("graph");
  if (!graph) throw ZooError("GraphML has no <graph> element");
  return *graph;
}

uint64_t Capacity(const Prefix& supernet, int length) {
  if (length < supernet.length() || length > 32) return 0;
  return uint64_t{1} << (length - supernet.length());
}

Prefix Block(const Prefix& supernet, int length, uint64_t index) {
  uint64_t addr = supernet.address().value() + (index << (32 - length));
  return Prefix(Ipv4Address(static_cast<uint32_t>(addr)), length);
}

}  // namespace

ZooImport import_topology_zoo(std::string_view graphml, const ZooOptions& options) {
  pt::ptree doc;
  try {
    std::istringstream in{std::string(graphml)};
    pt::read_xml(in, doc);
  } catch (const pt::xml_parser_error& e) {
    throw ZooError(std::string("malformed GraphML: ") + e.message() + " at line " +
                   std::to_string(e.line()));
  }
  const pt::ptree& graph = GraphOf(doc);

  ZooImport out;
  std::vector<std::string> ids;
  std::vector<std::pair<std::string, std::string>> edges;
  for (const auto& [tag, child] : graph) {
    if (tag == "node") {
      auto id = child.get_optional<std::string>("<xmlattr>.id");
      if (!id) throw ZooError("GraphML node without an id");
      ids.push_back(*id);
    } else if (tag == "edge") {
      auto s = child.get_optional<std::string>("<xmlattr>.source");
      auto t = child.get_optional<std::string>("<xmlattr>.target");
      if (!s || !t) throw ZooError("GraphML edge without source or target");
      edges.emplace_back(*s, *t);
    }
  }
  if (ids.empty()) throw ZooError("GraphML graph has no nodes");
  std::sort(ids.begin(), ids.end());
  if (std::adjacent_find(ids.begin(), ids.end()) != ids.end()) {
    throw ZooError("GraphML node ids are not unique");
  }
  if (ids.size() < 5 || ids.size() > 15) {
    out.warnings.push_back(std::to_string(ids.size()) + " nodes is outside the 5-15 tiny range");
  }
  uint64_t asn_room = options.max_asn >= options.base_asn
                          ? uint64_t{options.max_asn} - options.base_asn + 1
                          : 0;
  if (ids.size() > asn_room) {
    throw ZooError(std::to_string(ids.size()) + " nodes exceed the " + std::to_string(asn_room) +
                   " available ASNs");
  }
  if (ids.size() > Capacity(options.owned_supernet, options.owned_length)) {
    throw ZooError(std::to_string(ids.size()) + " nodes exceed the owned-prefix pool " +
                   options.owned_supernet.ToString());
  }

  std::set<std::string> used;
  for (const auto& id : ids) {
    std::string name = Sanitize(id);
    for (int k = 2; used.count(name); ++k) name = Sanitize(id) + "_" + std::to_string(k);
    used.insert(name);
    out.names[id] = name;
  }

  std::set<std::pair<std::string, std::string>> seen;
  std::vector<std::pair<std::string, std::string>> links;
  for (const auto& [s, t] : edges) {
    auto a = out.names.find(s);
    auto b = out.names.find(t);
    if (a == out.names.end() || b == out.names.end()) {
      throw ZooError("GraphML edge " + s + " -> " + t + " names an unknown node");
    }
    if (s == t) {
      out.warnings.push_back("self-loop on " + s + " skipped");
      continue;
    }
    std::pair<std::string, std::string> key = std::minmax(a->second, b->second);
    if (!seen.insert(key).second) {
      out.warnings.push_back("parallel edge " + s + " - " + t + " merged");
      continue;
    }
    links.push_back(key);
  }
  std::sort(links.begin(), links.end());
  if (links.size() > Capacity(options.link_supernet, 30)) {
    throw ZooError(std::to_string(links.size()) + " links exceed the link-subnet pool " +
                   options.link_supernet.ToString());
  }

  std::ostringstream text;
  text << "# Imported from GraphML: " << ids.size() << " nodes, " << links.size() << " links\n";
  for (size_t i = 0; i < ids.size(); ++i) {
    Prefix owned = Block(options.owned_supernet, options.owned_length, i);
    Ipv4Address rid(owned.address().value() + 1);
    text << "node " << out.names[ids[i]] << " asn " << options.base_asn + i << " router-id "
         << rid.ToString() << " owns " << owned.ToString() << "\n";
  }
  text << "\n";
  for (size_t i = 0; i < links.size(); ++i) {
    text << "link " << links[i].first << " " << links[i].second << " subnet "
         << Block(options.link_supernet, 30, i).ToString() << "\n";
  }
  out.text = text.str();
  try {
    out.topology = load_topology(out.text);
  } catch (const TopologyError& e) {
    throw ZooError(std::string("imported topology does not load: ") + e.what());
  }
  for (const auto& w : out.topology.warnings) out.warnings.push_back(w);
  return out;
}

}  // namespace routefuzz
