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

#ifndef ROUTEFUZZ_ZOO_H_
#define ROUTEFUZZ_ZOO_H_

#include <map>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "routefuzz/prefix.h"
#include "routefuzz/topology.h"

namespace routefuzz {

class ZooError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct ZooOptions {
  Asn base_asn = 64512;
  Asn max_asn = 65534;
  Prefix owned_supernet{Ipv4Address(10u << 24), 8};
  int owned_length = 22;
  Prefix link_supernet{Ipv4Address((172u << 24) | (16u << 16)), 12};
};

struct ZooImport {
  std::string text;  // native topology file
  Topology topology;
  std::map<std::string, std::string> names;  // GraphML node id -> router name
  std::vector<std::string> warnings;
};

// Only the node/edge structure is read; labels and coordinates are ignored.
// Routers are numbered in sorted node-id order. Throws ZooError.
ZooImport import_topology_zoo(std::string_view graphml, const ZooOptions& options = {});

}  // namespace routefuzz

#endif  // ROUTEFUZZ_ZOO_H_
