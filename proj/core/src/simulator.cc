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

#include "routefuzz/simulator.h"

#include <algorithm>
#include <set>
#include <stdexcept>
#include <tuple>

namespace routefuzz {
namespace {

// Strict preference: true if `a` beats `b` on the decision key.
bool Prefer(const RibEntry& a, const RibEntry& b) {
  auto key = [](const RibEntry& e) {
    return std::make_tuple(-static_cast<int64_t>(e.weight), e.as_path.size(),
                           static_cast<int>(e.origin), e.peer_router_id.value());
  };
  return key(a) < key(b);
}

std::string JoinPath(const std::vector<Asn>& path) {
  std::string out;
  for (Asn a : path) {
    out += std::to_string(a);
    out += ' ';
  }
  return out;
}

}  // namespace

char OriginCode(Origin origin) {
  switch (origin) {
    case Origin::kIgp:
      return 'i';
    case Origin::kEgp:
      return 'e';
    case Origin::kIncomplete:
      return '?';
  }
  return '?';
}

std::string RibSnapshot::ToText() const {
  std::string out;
  for (const auto& e : entries) {
    out += e.best ? "*> " : "* ";
    out += e.prefix.ToString();
    out += ' ';
    out += e.next_hop.ToString();
    out += " 0 ";
    out += std::to_string(e.weight);
    out += ' ';
    out += JoinPath(e.as_path);
    out += OriginCode(e.origin);
    out += '\n';
  }
  return out;
}

size_t best_path_select(std::span<const RibEntry> candidates) {
  size_t best = 0;
  for (size_t i = 1; i < candidates.size(); ++i) {
    if (Prefer(candidates[i], candidates[best])) best = i;
  }
  return best;
}

std::optional<NetworkEvent> enforce_max_prefix(Session& session, uint32_t incoming_count,
                                               uint64_t tick) {
  if (session.state != SessionState::kEstablished) return std::nullopt;
  if (!session.limit || incoming_count <= *session.limit) {
    session.received_prefix_count = incoming_count;
    return std::nullopt;
  }
  session.state = SessionState::kIdle;
  session.held_down = true;
  session.received_prefix_count = 0;
  return NetworkEvent{tick, session.local,
                      event::Notification{session.peer, kNotificationCease,
                                          kCeaseMaxPrefixesReached}};
}

std::string_view OutcomeName(ForwardingOutcome outcome) {
  switch (outcome) {
    case ForwardingOutcome::kPath:
      return "Path";
    case ForwardingOutcome::kBlackholed:
      return "Blackholed";
    case ForwardingOutcome::kUnreachable:
      return "Unreachable";
    case ForwardingOutcome::kForwardingLoop:
      return "ForwardingLoop";
  }
  return "?";
}

std::string ForwardingResult::ToString() const {
  std::string out(OutcomeName(outcome));
  out += '[';
  for (size_t i = 0; i < hops.size(); ++i) {
    if (i) out += ' ';
    out += hops[i];
  }
  out += ']';
  return out;
}

Network::Network(Topology topology, SimulatorOptions options)
    : topology_(std::move(topology)), options_(options), links_(topology_.links.size()) {
  for (const auto& n : topology_.nodes) {
    NodeState state;
    state.baseline = BaselineConfig(topology_, n.name);
    state.config = state.baseline;
    nodes_.push_back(std::move(state));
  }
}

std::vector<std::string> Network::NodeNames() const {
  std::vector<std::string> out;
  for (const auto& n : topology_.nodes) out.push_back(n.name);
  return out;
}

size_t Network::Index(std::string_view node) const {
  size_t i = topology_.IndexOf(node);
  if (i == topology_.nodes.size()) {
    throw std::invalid_argument("unknown node '" + std::string(node) + "'");
  }
  return i;
}

const RouterConfig& Network::config(std::string_view node) const {
  return nodes_[Index(node)].config;
}

const RouterConfig& Network::baseline_config(std::string_view node) const {
  return nodes_[Index(node)].baseline;
}

std::string Network::config_text(std::string_view node) const {
  return render_config(config(node));
}

const NeighborStmt* Network::NeighborOn(size_t node, size_t link) const {
  const TopologyLink& l = topology_.links[link];
  const std::string& self = topology_.nodes[node].name;
  return nodes_[node].config.FindNeighbor(l.AddressOf(l.Other(self)));
}

bool Network::SessionConfigured(size_t link) const {
  const TopologyLink& l = topology_.links[link];
  size_t a = topology_.IndexOf(l.a);
  size_t b = topology_.IndexOf(l.b);
  const NeighborStmt* na = NeighborOn(a, link);
  const NeighborStmt* nb = NeighborOn(b, link);
  Asn asn_a = nodes_[a].config.local_asn;
  Asn asn_b = nodes_[b].config.local_asn;
  return na && nb && na->remote_asn == asn_b && nb->remote_asn == asn_a && asn_a != asn_b;
}

std::vector<RibEntry> Network::LocalOrigination(size_t node) const {
  const RouterConfig& cfg = nodes_[node].config;
  const TopologyNode& topo = topology_.nodes[node];
  std::vector<RibEntry> out;
  for (const auto& net : cfg.networks) {
    bool covered =
        std::any_of(topo.owned.begin(), topo.owned.end(),
                    [&](const Prefix& p) { return prefix_contains(p, net.prefix); }) ||
        std::any_of(cfg.static_routes.begin(), cfg.static_routes.end(),
                    [&](const StaticRouteStmt& r) { return prefix_contains(r.prefix, net.prefix); });
    if (!covered) continue;
    RibEntry e;
    e.prefix = net.prefix;
    e.weight = kLocalWeight;
    e.origin = Origin::kIgp;
    out.push_back(std::move(e));
  }
  return out;
}

std::vector<Prefix> Network::originated(std::string_view node) const {
  std::vector<Prefix> out;
  for (const auto& e : LocalOrigination(Index(node))) out.push_back(e.prefix);
  return out;
}

std::map<Prefix, std::vector<RibEntry>> Network::Select(size_t node) const {
  std::map<Prefix, std::vector<RibEntry>> rib;
  for (auto& e : LocalOrigination(node)) rib[e.prefix].push_back(std::move(e));
  for (const auto& [link, routes] : nodes_[node].adj_in) {
    for (const auto& [prefix, entry] : routes) rib[prefix].push_back(entry);
  }
  for (auto& [prefix, cands] : rib) {
    size_t best = best_path_select(cands);
    std::rotate(cands.begin(), cands.begin() + static_cast<std::ptrdiff_t>(best),
                cands.begin() + static_cast<std::ptrdiff_t>(best) + 1);
    std::stable_sort(cands.begin() + 1, cands.end(), Prefer);
    for (size_t i = 0; i < cands.size(); ++i) cands[i].best = i == 0;
  }
  return rib;
}

void Network::Emit(std::vector<NetworkEvent>& batch) {
  SortEvents(batch);
  log_.insert(log_.end(), batch.begin(), batch.end());
}

void Network::TearDown(size_t link, const std::string& reason,
                       std::vector<NetworkEvent>& events) {
  const TopologyLink& l = topology_.links[link];
  links_[link].established = false;
  events.push_back({tick_, l.a, event::SessionDown{l.b, reason}});
  events.push_back({tick_, l.b, event::SessionDown{l.a, reason}});
  for (const auto& [receiver, sender] : {std::pair{l.a, l.b}, std::pair{l.b, l.a}}) {
    auto& adj = nodes_[topology_.IndexOf(receiver)].adj_in;
    if (auto it = adj.find(link); it != adj.end()) {
      for (const auto& [prefix, entry] : it->second) {
        events.push_back({tick_, receiver, event::PrefixWithdrawn{prefix, sender}});
      }
      adj.erase(it);
    }
  }
}

std::vector<NetworkEvent> Network::apply_config(std::string_view node, std::string_view text) {
  size_t idx = Index(node);
  ++tick_;
  std::vector<NetworkEvent> events;
  ParsedConfig parsed;
  try {
    parsed = parse_config(text);
  } catch (const ParseError& e) {
    events.push_back({tick_, std::string(node), event::ConfigRejected{e.what()}});
    Emit(events);
    return events;
  }
  nodes_[idx].config = std::move(parsed.config);
  events.push_back({tick_, std::string(node), event::ConfigApplied{}});

  const std::string& self = topology_.nodes[idx].name;
  std::vector<size_t> touched = {idx};
  for (size_t l = 0; l < topology_.links.size(); ++l) {
    const TopologyLink& link = topology_.links[l];
    if (link.a != self && link.b != self) continue;
    size_t peer = topology_.IndexOf(link.Other(self));
    if (links_[l].established) {
      links_[l].established = false;
      events.push_back({tick_, self, event::SessionDown{link.Other(self), "config refresh"}});
      touched.push_back(peer);
    }
    nodes_[idx].adj_in.erase(l);
    nodes_[peer].adj_in.erase(l);
  }
  for (size_t n : touched) nodes_[n].loc_rib = Select(n);
  fib_cache_.clear();
  Emit(events);
  return events;
}

std::pair<ConvergenceResult, std::vector<NetworkEvent>> Network::converge() {
  ConvergenceResult result;
  std::vector<NetworkEvent> all;
  fib_cache_.clear();
  for (int executed = 0; executed < options_.round_cap; ++executed) {
    ++tick_;
    std::vector<NetworkEvent> batch;
    bool changed = false;

    for (size_t l = 0; l < links_.size(); ++l) {
      bool configured = SessionConfigured(l);
      const TopologyLink& link = topology_.links[l];
      if (!links_[l].established && !links_[l].held_down && configured) {
        links_[l].established = true;
        batch.push_back({tick_, link.a, event::SessionUp{link.b}});
        batch.push_back({tick_, link.b, event::SessionUp{link.a}});
        changed = true;
      } else if (links_[l].established && !configured) {
        TearDown(l, "configuration mismatch", batch);
        changed = true;
      }
    }

    // Advertise every best route over every established session, computed
    // from the previous round's selection.
    std::vector<std::map<size_t, std::map<Prefix, RibEntry>>> incoming(nodes_.size());
    for (size_t l = 0; l < links_.size(); ++l) {
      if (!links_[l].established) continue;
      const TopologyLink& link = topology_.links[l];
      for (const auto& [sender_name, receiver_name] :
           {std::pair{link.a, link.b}, std::pair{link.b, link.a}}) {
        size_t s = topology_.IndexOf(sender_name);
        size_t r = topology_.IndexOf(receiver_name);
        Asn sender_asn = nodes_[s].config.local_asn;
        Asn receiver_asn = nodes_[r].config.local_asn;
        auto& in = incoming[r][l];
        for (const auto& [prefix, cands] : nodes_[s].loc_rib) {
          const RibEntry& best = cands.front();
          if (std::find(best.as_path.begin(), best.as_path.end(), receiver_asn) !=
                  best.as_path.end() ||
              sender_asn == receiver_asn) {
            continue;
          }
          RibEntry e;
          e.prefix = prefix;
          e.next_hop = link.AddressOf(sender_name);
          e.as_path.reserve(best.as_path.size() + 1);
          e.as_path.push_back(sender_asn);
          e.as_path.insert(e.as_path.end(), best.as_path.begin(), best.as_path.end());
          e.origin = best.origin;
          e.weight = 0;
          e.peer_router_id = nodes_[s].config.router_id;
          in.emplace(prefix, std::move(e));
        }
      }
    }

    // Max-prefix enforcement on receipt.
    std::set<size_t> torn;
    for (size_t l = 0; l < links_.size(); ++l) {
      if (!links_[l].established) continue;
      const TopologyLink& link = topology_.links[l];
      for (const auto& [receiver_name, sender_name] :
           {std::pair{link.a, link.b}, std::pair{link.b, link.a}}) {
        size_t r = topology_.IndexOf(receiver_name);
        const NeighborStmt* nb = NeighborOn(r, l);
        Session session{receiver_name, sender_name, link.AddressOf(sender_name),
                        SessionState::kEstablished, 0,
                        nb ? nb->max_prefix_limit : std::nullopt, false};
        auto count = static_cast<uint32_t>(incoming[r][l].size());
        if (auto note = enforce_max_prefix(session, count, tick_)) {
          batch.push_back(std::move(*note));
          torn.insert(l);
        }
      }
    }
    for (size_t l : torn) {
      TearDown(l, "maximum-prefix exceeded", batch);
      links_[l].held_down = true;
      const TopologyLink& link = topology_.links[l];
      incoming[topology_.IndexOf(link.a)].erase(l);
      incoming[topology_.IndexOf(link.b)].erase(l);
      changed = true;
    }

    for (size_t n = 0; n < nodes_.size(); ++n) {
      auto& adj = nodes_[n].adj_in;
      const std::string& receiver = topology_.nodes[n].name;
      std::set<size_t> link_ids;
      for (const auto& [l, routes] : adj) link_ids.insert(l);
      for (const auto& [l, routes] : incoming[n]) link_ids.insert(l);
      for (size_t l : link_ids) {
        const std::string& sender = topology_.links[l].Other(receiver);
        static const std::map<Prefix, RibEntry> kEmpty;
        auto old_it = adj.find(l);
        const auto& old_routes = old_it == adj.end() ? kEmpty : old_it->second;
        auto new_it = incoming[n].find(l);
        const auto& new_routes = new_it == incoming[n].end() ? kEmpty : new_it->second;
        for (const auto& [prefix, entry] : new_routes) {
          auto o = old_routes.find(prefix);
          if (o == old_routes.end() || !(o->second == entry)) {
            batch.push_back({tick_, receiver, event::PrefixAnnounced{prefix, sender}});
            changed = true;
          }
        }
        for (const auto& [prefix, entry] : old_routes) {
          if (!new_routes.count(prefix)) {
            batch.push_back({tick_, receiver, event::PrefixWithdrawn{prefix, sender}});
            changed = true;
          }
        }
      }
      adj.clear();
      for (auto& [l, routes] : incoming[n]) {
        if (!routes.empty()) adj.emplace(l, std::move(routes));
      }
    }

    for (size_t n = 0; n < nodes_.size(); ++n) {
      auto selected = Select(n);
      if (selected != nodes_[n].loc_rib) {
        nodes_[n].loc_rib = std::move(selected);
        changed = true;
      }
    }

    Emit(batch);
    all.insert(all.end(), batch.begin(), batch.end());
    if (!changed) return {result, all};
    ++result.rounds;
  }
  result.converged = false;
  return {result, all};
}

Fib Network::BuildFib(size_t node) const {
  Fib fib;
  for (const auto& p : topology_.nodes[node].owned) fib.Insert({p, FibKind::kConnected, {}});
  for (const auto& r : nodes_[node].config.static_routes) {
    fib.Insert({r.prefix, r.next_hop ? FibKind::kStaticNextHop : FibKind::kStaticNull,
                r.next_hop.value_or(Ipv4Address())});
  }
  for (const auto& [prefix, cands] : nodes_[node].loc_rib) {
    const RibEntry& best = cands.front();
    if (!best.IsLocal()) fib.Insert({prefix, FibKind::kBgp, best.next_hop});
  }
  return fib;
}

ForwardingResult Network::forwarding_path(std::string_view src, Ipv4Address dst) {
  ++tick_;
  if (fib_cache_.size() != nodes_.size()) {
    fib_cache_.clear();
    for (size_t n = 0; n < nodes_.size(); ++n) fib_cache_.push_back(BuildFib(n));
  }
  size_t cur = Index(src);
  ForwardingResult result;
  result.hops.push_back(topology_.nodes[cur].name);
  std::vector<bool> visited(nodes_.size(), false);
  visited[cur] = true;
  Ipv4Address src_address = nodes_[cur].config.router_id;

  auto unreachable = [&](ForwardingOutcome outcome) {
    result.outcome = outcome;
    std::vector<NetworkEvent> batch = {
        {tick_, topology_.nodes[cur].name, event::IcmpUnreachable{src_address, dst}}};
    Emit(batch);
    return result;
  };

  for (size_t step = 0; step <= nodes_.size(); ++step) {
    auto entry = fib_cache_[cur].Lookup(dst);
    if (!entry) return unreachable(ForwardingOutcome::kUnreachable);
    switch (entry->kind) {
      case FibKind::kConnected:
        result.outcome = ForwardingOutcome::kPath;
        return result;
      case FibKind::kStaticNull:
        return unreachable(ForwardingOutcome::kBlackholed);
      case FibKind::kStaticNextHop:
      case FibKind::kBgp:
        break;
    }
    const std::string& self = topology_.nodes[cur].name;
    std::optional<size_t> next;
    for (const auto& link : topology_.links) {
      if (link.a != self && link.b != self) continue;
      const std::string& peer = link.Other(self);
      if (link.AddressOf(peer) == entry->next_hop) {
        next = topology_.IndexOf(peer);
        break;
      }
    }
    if (!next) return unreachable(ForwardingOutcome::kUnreachable);
    result.hops.push_back(topology_.nodes[*next].name);
    if (visited[*next]) {
      result.outcome = ForwardingOutcome::kForwardingLoop;
      return result;
    }
    visited[*next] = true;
    cur = *next;
  }
  result.outcome = ForwardingOutcome::kForwardingLoop;
  return result;
}

RibSnapshot Network::snapshot_rib(std::string_view node) const {
  size_t idx = Index(node);
  RibSnapshot snap;
  snap.node = std::string(node);
  snap.local_asn = nodes_[idx].config.local_asn;
  for (const auto& [prefix, cands] : nodes_[idx].loc_rib) {
    snap.entries.insert(snap.entries.end(), cands.begin(), cands.end());
  }
  return snap;
}

void Network::reset() {
  for (auto& n : nodes_) {
    n.config = n.baseline;
    n.loc_rib.clear();
    n.adj_in.clear();
  }
  for (auto& l : links_) l = LinkState{};
  log_.clear();
  fib_cache_.clear();
  tick_ = 0;
}

std::vector<Session> Network::sessions_of(std::string_view node) const {
  std::vector<Session> out;
  for (const auto& s : sessions()) {
    if (s.local == node) out.push_back(s);
  }
  return out;
}

std::vector<Session> Network::sessions() const {
  std::vector<Session> out;
  for (size_t l = 0; l < links_.size(); ++l) {
    const TopologyLink& link = topology_.links[l];
    for (const auto& [local, peer] : {std::pair{link.a, link.b}, std::pair{link.b, link.a}}) {
      size_t idx = topology_.IndexOf(local);
      const NeighborStmt* nb = NeighborOn(idx, l);
      Session s;
      s.local = local;
      s.peer = peer;
      s.peer_address = link.AddressOf(peer);
      s.state = links_[l].established ? SessionState::kEstablished : SessionState::kIdle;
      auto it = nodes_[idx].adj_in.find(l);
      s.received_prefix_count =
          it == nodes_[idx].adj_in.end() ? 0 : static_cast<uint32_t>(it->second.size());
      s.limit = nb ? nb->max_prefix_limit : std::nullopt;
      s.held_down = links_[l].held_down;
      out.push_back(std::move(s));
    }
  }
  return out;
}

}  // namespace routefuzz
