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

#include "testing/reference.h"

#include <algorithm>
#include <numeric>
#include <set>
#include <vector>

#include "routefuzz/config.h"

namespace routefuzz::testing {

size_t ReferenceBestPath(std::span<const RibEntry> c) {
  std::vector<size_t> order(c.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](size_t x, size_t y) {
    const RibEntry& a = c[x];
    const RibEntry& b = c[y];
    if (a.weight != b.weight) return a.weight > b.weight;
    if (a.as_path.size() != b.as_path.size()) return a.as_path.size() < b.as_path.size();
    if (a.origin != b.origin) return a.origin < b.origin;
    if (a.peer_router_id != b.peer_router_id) return a.peer_router_id < b.peer_router_id;
    return x < y;
  });
  return order.front();
}

RibEntry RandomRibEntry(std::mt19937_64& rng) {
  RibEntry e;
  e.prefix = parse_prefix("10.0.0.0/8");
  e.weight = rng() % 3 == 0 ? kLocalWeight : static_cast<uint32_t>(rng() % 2);
  e.as_path.resize(rng() % 4, 65000);
  e.origin = static_cast<Origin>(rng() % 3);
  e.peer_router_id = Ipv4Address(static_cast<uint32_t>(rng() % 4));
  return e;
}

ForwardingResult ReferenceWalk(Network& net, const std::string& src, Ipv4Address dst) {
  const Topology& t = net.topology();
  ForwardingResult r;
  r.hops = {src};
  std::set<std::string> seen = {src};
  std::string cur = src;
  while (true) {
    int best_len = -1;
    int best_rank = 9;
    std::optional<Ipv4Address> via;
    auto offer = [&](const Prefix& p, int rank, std::optional<Ipv4Address> nh) {
      if (!p.Contains(dst)) return;
      if (p.length() > best_len || (p.length() == best_len && rank < best_rank)) {
        best_len = p.length();
        best_rank = rank;
        via = nh;
      }
    };
    for (const auto& p : t.Find(cur)->owned) offer(p, 0, std::nullopt);
    for (const auto& s : net.config(cur).static_routes) offer(s.prefix, 1, s.next_hop);
    for (const auto& e : net.snapshot_rib(cur).entries) {
      if (e.best && !e.IsLocal()) offer(e.prefix, 2, e.next_hop);
    }
    if (best_len < 0) {
      r.outcome = ForwardingOutcome::kUnreachable;
      return r;
    }
    if (best_rank == 0) {
      r.outcome = ForwardingOutcome::kPath;
      return r;
    }
    if (!via) {
      r.outcome = ForwardingOutcome::kBlackholed;
      return r;
    }
    std::string next;
    for (const auto& l : t.links) {
      if ((l.a == cur || l.b == cur) && l.AddressOf(l.Other(cur)) == *via) next = l.Other(cur);
    }
    if (next.empty()) {
      r.outcome = ForwardingOutcome::kUnreachable;
      return r;
    }
    r.hops.push_back(next);
    if (!seen.insert(next).second) {
      r.outcome = ForwardingOutcome::kForwardingLoop;
      return r;
    }
    cur = next;
  }
}

bool SprinkleStatics(Network& net, std::mt19937_64& rng, int count) {
  const Topology& t = net.topology();
  for (int k = 0; k < count; ++k) {
    const auto& node = t.nodes[rng() % t.nodes.size()];
    const auto& victim = t.nodes[rng() % t.nodes.size()];
    if (victim.owned.empty()) continue;
    int len = 17 + static_cast<int>(rng() % 8);
    Prefix sub = Truncate(
        Ipv4Address(victim.owned[0].address().value() | (static_cast<uint32_t>(rng()) & 0xffff)),
        len);
    RouterConfig cfg = net.config(node.name);
    if (std::any_of(cfg.static_routes.begin(), cfg.static_routes.end(),
                    [&](const auto& s) { return s.prefix == sub; })) {
      continue;
    }
    StaticRouteStmt route{sub, std::nullopt};
    if (rng() % 2 && !cfg.neighbors.empty()) {
      route.next_hop = cfg.neighbors[rng() % cfg.neighbors.size()].peer_address;
    }
    cfg.static_routes.push_back(route);
    if (rng() % 2 && std::none_of(cfg.networks.begin(), cfg.networks.end(),
                                  [&](const auto& n) { return n.prefix == sub; })) {
      cfg.networks.push_back({sub});
    }
    auto ev = net.apply_config(node.name, render_config(cfg));
    if (ev.empty() || ev.front().KindName() != "ConfigApplied") return false;
  }
  return true;
}

std::optional<FuzzState> ReferenceTransition(FuzzState s, FuzzEvent event) {
  using S = FuzzState;
  using E = EventClass;
  E e = event.kind;
  bool change = e == E::kE1 || e == E::kE2 || e == E::kE3;
  if (s == S::kS0NormalRun && change) return event.deployed ? S::kS1Intermediate : S::kS0NormalRun;
  if (s == S::kS0NormalRun && e == E::kE5) return S::kS2ErrorDetected;
  if (s == S::kS1Intermediate && (change || e == E::kE4)) return S::kS1Intermediate;
  if (s == S::kS1Intermediate && e == E::kE5) return S::kS2ErrorDetected;
  if (s == S::kS2ErrorDetected && e == E::kE6) return S::kS0NormalRun;
  return std::nullopt;
}

}  // namespace routefuzz::testing
