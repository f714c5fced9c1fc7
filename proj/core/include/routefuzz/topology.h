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

#ifndef ROUTEFUZZ_TOPOLOGY_H_
#define ROUTEFUZZ_TOPOLOGY_H_

#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "routefuzz/config.h"
#include "routefuzz/prefix.h"

namespace routefuzz {

struct TopologyNode {
  std::string name;
  Asn asn = 0;
  Ipv4Address router_id;
  std::vector<Prefix> owned;
};

// A point-to-point link. Addresses are assigned from the subnet: the lower
// one goes to the lexicographically smaller node name.
struct TopologyLink {
  std::string a;
  std::string b;
  Prefix subnet;
  Ipv4Address a_address;
  Ipv4Address b_address;

  Ipv4Address AddressOf(std::string_view node) const { return node == a ? a_address : b_address; }
  const std::string& Other(std::string_view node) const { return node == a ? b : a; }
};

struct Topology {
  std::vector<TopologyNode> nodes;
  std::vector<TopologyLink> links;
  std::vector<std::string> warnings;

  const TopologyNode* Find(std::string_view name) const;
  size_t IndexOf(std::string_view name) const;

  // Native text form; load_topology(ToText()) reproduces the topology.
  std::string ToText() const;
};

class TopologyError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Line-oriented format:
//   node <name> asn <n> router-id <ip> [owns <prefix>...]
//   link <a> <b> subnet <prefix>
// '#' starts a comment. Throws TopologyError.
Topology load_topology(std::string_view text);

// The baseline configuration of `node`: one neighbor per link, one network
// statement per owned prefix.
RouterConfig BaselineConfig(const Topology& topology, std::string_view node);

}  // namespace routefuzz

#endif  // ROUTEFUZZ_TOPOLOGY_H_
