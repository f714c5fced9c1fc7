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

#include "routefuzz/mutation.h"

#include <algorithm>
#include <functional>

namespace routefuzz {
namespace {

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

struct Edit {
  size_t offset;
  size_t length;
  std::string text;
};

std::string ApplyEdits(std::string text, std::vector<Edit> edits) {
  // Later offsets first; at equal offsets the later edit goes first so the
  // final text keeps plan order.
  std::vector<size_t> order(edits.size());
  for (size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](size_t a, size_t b) {
    if (edits[a].offset != edits[b].offset) return edits[a].offset > edits[b].offset;
    return a > b;
  });
  for (size_t i : order) text.replace(edits[i].offset, edits[i].length, edits[i].text);
  return text;
}

const DerivationTree* Child(const DerivationTree& node, std::string_view symbol) {
  for (const auto& c : node.children) {
    if (c.symbol == symbol) return &c;
  }
  return nullptr;
}

std::optional<size_t> ChildIndex(const DerivationTree& node, std::string_view symbol) {
  for (size_t i = 0; i < node.children.size(); ++i) {
    if (node.children[i].symbol == symbol) return i;
  }
  return std::nullopt;
}

void Walk(const DerivationTree& node, TreePath& path,
          const std::function<void(const DerivationTree&, const TreePath&)>& visit) {
  visit(node, path);
  for (size_t i = 0; i < node.children.size(); ++i) {
    path.push_back(i);
    Walk(node.children[i], path, visit);
    path.pop_back();
  }
}

size_t BlockIndex(const DerivationTree& root) {
  auto idx = ChildIndex(root, sym::kRouterBgpBlock);
  if (!idx) throw std::logic_error("config tree has no router bgp block");
  return *idx;
}

struct FieldSite {
  FieldKind kind;
  TreePath path;
};

std::vector<FieldSite> FieldSites(const DerivationTree& root) {
  std::vector<FieldSite> out;
  size_t b = BlockIndex(root);
  const DerivationTree& block = root.children[b];
  for (size_t i = 0; i < block.children.size(); ++i) {
    const DerivationTree& stmt = block.children[i];
    auto add = [&](FieldKind kind, std::string_view symbol) {
      if (auto j = ChildIndex(stmt, symbol)) out.push_back({kind, {b, i, *j}});
    };
    if (stmt.symbol == sym::kRouterIdStmt) {
      add(FieldKind::kRouterId, sym::kRouterId);
    } else if (stmt.symbol == sym::kNeighborRemoteAsStmt) {
      add(FieldKind::kPeerAddress, sym::kPeerAddress);
      add(FieldKind::kRemoteAsn, sym::kRemoteAsn);
    } else if (stmt.symbol == sym::kNetworkStmt) {
      add(FieldKind::kNetworkPrefix, sym::kNetworkPrefix);
    } else if (stmt.symbol == sym::kNeighborMaxPrefixStmt) {
      add(FieldKind::kMaxPrefixLimit, sym::kMaxPrefixLimit);
    }
  }
  return out;
}

Ipv4Address RandomUnicast(Rng& rng) {
  uint32_t first;
  do {
    first = static_cast<uint32_t>(rng.Between(1, 223));
  } while (first == 127);
  return Ipv4Address((first << 24) | static_cast<uint32_t>(rng.Below(1u << 24)));
}

Ipv4Address DrawAddress(Rng& rng, const FieldPools& pools) {
  if (!pools.addresses.empty() && rng.Chance(0.5)) return rng.Pick(pools.addresses);
  return RandomUnicast(rng);
}

Asn DrawAsn(Rng& rng, const FieldPools& pools) {
  switch (rng.Below(3)) {
    case 0:
      return static_cast<Asn>(rng.Between(64512, 65534));
    case 1:
      return static_cast<Asn>(rng.Between(1, 64495));
    default:
      if (pools.asns.empty()) return static_cast<Asn>(rng.Between(64512, 65534));
      return rng.Pick(pools.asns);
  }
}

Prefix DrawPrefix(Rng& rng, const FieldPools& pools) {
  if (!pools.prefixes.empty() && rng.Chance(0.5)) {
    const Prefix& base = rng.Pick(pools.prefixes);
    int lo = std::max(8, base.length() - 2);
    int hi = std::max(lo, std::min(32, base.length() + 2));
    int len = static_cast<int>(rng.Between(lo, hi));
    uint32_t host = static_cast<uint32_t>(rng.Next()) & ~base.Mask();
    return Truncate(Ipv4Address(base.address().value() | host), len);
  }
  return Truncate(RandomUnicast(rng), static_cast<int>(rng.Between(8, 30)));
}

// Retries `draw` until `ok` accepts, falling back to `fallback`.
template <typename T, typename Draw, typename Ok, typename Fallback>
T DrawUntil(Draw draw, Ok ok, Fallback fallback) {
  for (int i = 0; i < 64; ++i) {
    T v = draw();
    if (ok(v)) return v;
  }
  return fallback();
}

std::string PlanLine(const Statement& s) { return RenderStatement(s); }

bool HasNetwork(const RouterConfig& c, const Prefix& p) {
  return std::any_of(c.networks.begin(), c.networks.end(),
                     [&](const NetworkStmt& n) { return n.prefix == p; });
}

bool HasStatic(const RouterConfig& c, const StaticRouteStmt& r) {
  return std::find(c.static_routes.begin(), c.static_routes.end(), r) != c.static_routes.end();
}

void CheckDuplicate(const RouterConfig& c, const Statement& stmt) {
  std::visit(Overloaded{
                 [&](const NetworkStmt& n) {
                   if (HasNetwork(c, n.prefix)) throw DuplicateStatement(PlanLine(stmt));
                 },
                 [&](const StaticRouteStmt& r) {
                   if (HasStatic(c, r)) throw DuplicateStatement(PlanLine(stmt));
                 },
                 [&](const MaxPrefixStmt& m) {
                   const NeighborStmt* n = c.FindNeighbor(m.peer_address);
                   if (!n) {
                     throw std::invalid_argument("maximum-prefix for undeclared neighbor " +
                                                 m.peer_address.ToString());
                   }
                   if (n->max_prefix_limit == m.limit) throw DuplicateStatement(PlanLine(stmt));
                 },
             },
             stmt);
}

}  // namespace

EventClass EventOf(MutationKind kind) {
  switch (kind) {
    case MutationKind::kFieldMutation:
      return EventClass::kE1;
    case MutationKind::kStatementInsertion:
      return EventClass::kE2;
    case MutationKind::kStatementDeletion:
      return EventClass::kE3;
  }
  return EventClass::kE1;
}

std::string_view MutationKindName(MutationKind kind) {
  switch (kind) {
    case MutationKind::kFieldMutation:
      return "FieldMutation";
    case MutationKind::kStatementInsertion:
      return "StatementInsertion";
    case MutationKind::kStatementDeletion:
      return "StatementDeletion";
  }
  return "?";
}

std::string_view FieldKindName(FieldKind kind) {
  switch (kind) {
    case FieldKind::kRouterId:
      return sym::kRouterId;
    case FieldKind::kPeerAddress:
      return sym::kPeerAddress;
    case FieldKind::kRemoteAsn:
      return sym::kRemoteAsn;
    case FieldKind::kNetworkPrefix:
      return sym::kNetworkPrefix;
    case FieldKind::kMaxPrefixLimit:
      return sym::kMaxPrefixLimit;
  }
  return "?";
}

std::string RenderStatement(const Statement& stmt) {
  return std::visit(
      Overloaded{
          [](const NetworkStmt& n) {
            return " network " + n.prefix.address().ToString() + " mask " +
                   n.prefix.DottedMask().ToString();
          },
          [](const StaticRouteStmt& r) {
            return "ip route " + r.prefix.address().ToString() + " " +
                   r.prefix.DottedMask().ToString() + " " +
                   (r.next_hop ? r.next_hop->ToString() : std::string("Null0"));
          },
          [](const MaxPrefixStmt& m) {
            return " neighbor " + m.peer_address.ToString() + " maximum-prefix " +
                   std::to_string(m.limit);
          },
      },
      stmt);
}

std::string MutationPlan::Describe() const {
  std::string out = EventName({EventOf(kind)}) + " " + operation;
  if (kind == MutationKind::kFieldMutation && field) {
    out += " ";
    out += FieldKindName(*field);
    out += " -> " + replacement;
  }
  for (size_t i = 0; i < statements.size(); ++i) {
    out += i ? " |" : ":";
    std::string line = RenderStatement(statements[i]);
    out += line.front() == ' ' ? line : " " + line;
  }
  if (kind == MutationKind::kStatementDeletion) {
    out += " at [";
    for (size_t i = 0; i < target.size(); ++i) out += (i ? "," : "") + std::to_string(target[i]);
    out += "]";
  }
  return out;
}

uint32_t Feedback::LearnedFrom(Ipv4Address neighbor) const {
  std::set<Prefix> seen;
  for (const auto& e : rib.entries) {
    if (e.next_hop == neighbor) seen.insert(e.prefix);
  }
  return static_cast<uint32_t>(seen.size());
}

std::vector<Prefix> Feedback::RemotePrefixes() const {
  std::set<Prefix> local;
  std::set<Prefix> remote;
  for (const auto& e : rib.entries) {
    (e.IsLocal() ? local : remote).insert(e.prefix);
  }
  std::vector<Prefix> out;
  for (const auto& p : remote) {
    if (p.length() < 32 && !local.count(p)) out.push_back(p);
  }
  return out;
}

FieldPools FieldPools::From(const Topology& topology, const RouterConfig& seed) {
  std::set<Ipv4Address> addresses;
  std::set<Prefix> prefixes;
  std::set<Asn> asns;
  for (const auto& n : topology.nodes) {
    addresses.insert(n.router_id);
    asns.insert(n.asn);
    for (const auto& p : n.owned) {
      prefixes.insert(p);
      addresses.insert(Ipv4Address(p.address().value() + (p.length() < 32 ? 1 : 0)));
    }
  }
  for (const auto& l : topology.links) {
    addresses.insert(l.a_address);
    addresses.insert(l.b_address);
    prefixes.insert(l.subnet);
  }
  asns.insert(seed.local_asn);
  addresses.insert(seed.router_id);
  for (const auto& n : seed.neighbors) {
    asns.insert(n.remote_asn);
    addresses.insert(n.peer_address);
  }
  for (const auto& n : seed.networks) prefixes.insert(n.prefix);
  for (const auto& r : seed.static_routes) prefixes.insert(r.prefix);
  FieldPools pools;
  pools.addresses.assign(addresses.begin(), addresses.end());
  pools.prefixes.assign(prefixes.begin(), prefixes.end());
  pools.asns.assign(asns.begin(), asns.end());
  return pools;
}

ParsedConfig apply_plan(const ParsedConfig& current, const MutationPlan& plan) {
  const DerivationTree& root = current.tree;
  std::string text = root.Leaves();
  std::vector<Edit> edits;

  switch (plan.kind) {
    case MutationKind::kFieldMutation: {
      const DerivationTree* node = NodeAt(root, plan.target);
      if (!node || !plan.field) throw std::invalid_argument("field plan without a field node");
      if (*plan.field == FieldKind::kNetworkPrefix) {
        Prefix p = parse_prefix(plan.replacement);
        const DerivationTree* addr = Child(*node, sym::kNetworkAddress);
        const DerivationTree* mask = Child(*node, sym::kNetworkMask);
        if (!addr || !mask) throw std::invalid_argument("not a network prefix node");
        edits.push_back({addr->span.offset, addr->span.length, p.address().ToString()});
        edits.push_back({mask->span.offset, mask->span.length, p.DottedMask().ToString()});
      } else if (*plan.field == FieldKind::kPeerAddress) {
        // Renaming a neighbor renames every reference to it.
        TreePath scratch;
        Walk(root, scratch, [&](const DerivationTree& n, const TreePath&) {
          if (n.terminal && n.symbol == sym::kPeerAddress && n.text == node->text) {
            edits.push_back({n.span.offset, n.span.length, plan.replacement});
          }
        });
      } else {
        edits.push_back({node->span.offset, node->span.length, plan.replacement});
      }
      break;
    }
    case MutationKind::kStatementInsertion: {
      if (plan.statements.size() != plan.positions.size()) {
        throw std::invalid_argument("insertion plan needs one position per statement");
      }
      RouterConfig seen = current.config;
      for (size_t i = 0; i < plan.statements.size(); ++i) {
        const Statement& stmt = plan.statements[i];
        CheckDuplicate(seen, stmt);
        if (const auto* m = std::get_if<MaxPrefixStmt>(&stmt)) {
          auto it = std::find_if(seen.neighbors.begin(), seen.neighbors.end(),
                                 [&](const NeighborStmt& n) { return n.peer_address == m->peer_address; });
          bool replace = it->max_prefix_limit.has_value();
          it->max_prefix_limit = m->limit;
          if (replace) {
            const DerivationTree& block = root.children[BlockIndex(root)];
            for (const auto& s : block.children) {
              const DerivationTree* peer = Child(s, sym::kPeerAddress);
              if (s.symbol == sym::kNeighborMaxPrefixStmt && peer &&
                  ParseIpv4(peer->text) == m->peer_address) {
                const DerivationTree* limit = Child(s, sym::kMaxPrefixLimit);
                edits.push_back({limit->span.offset, limit->span.length, std::to_string(m->limit)});
              }
            }
            continue;
          }
        } else if (const auto* n = std::get_if<NetworkStmt>(&stmt)) {
          seen.networks.push_back(*n);
        } else {
          seen.static_routes.push_back(std::get<StaticRouteStmt>(stmt));
        }
        const TreePath& pos = plan.positions[i];
        if (pos.empty()) throw std::invalid_argument("empty insertion position");
        TreePath parent_path(pos.begin(), pos.end() - 1);
        const DerivationTree* parent = NodeAt(root, parent_path);
        if (!parent || pos.back() > parent->children.size()) {
          throw std::invalid_argument("insertion position outside the tree");
        }
        size_t offset = pos.back() < parent->children.size()
                            ? parent->children[pos.back()].span.offset
                            : parent->span.offset + parent->span.length;
        std::string line = RenderStatement(stmt);
        if (offset == text.size() && !text.empty() && text.back() != '\n') {
          edits.push_back({offset, 0, "\n" + line});
        } else {
          edits.push_back({offset, 0, line + "\n"});
        }
      }
      break;
    }
    case MutationKind::kStatementDeletion: {
      const DerivationTree* node = NodeAt(root, plan.target);
      if (!node) throw std::invalid_argument("deletion target outside the tree");
      edits.push_back({node->span.offset, node->span.length, ""});
      break;
    }
  }

  std::string mutated = ApplyEdits(std::move(text), std::move(edits));
  try {
    return parse_config(mutated);
  } catch (const ParseError& e) {
    throw std::logic_error("mutation '" + plan.Describe() +
                           "' produced unparseable text: " + e.what());
  }
}

MutationPlan PlanFieldMutation(const ParsedConfig& current, Rng& rng, const FieldPools& pools) {
  auto sites = FieldSites(current.tree);
  if (sites.empty()) throw NoMutableField();
  std::vector<FieldKind> kinds;
  for (FieldKind k : kAllFieldKinds) {
    if (std::any_of(sites.begin(), sites.end(), [&](const FieldSite& s) { return s.kind == k; })) {
      kinds.push_back(k);
    }
  }
  FieldKind kind = rng.Pick(kinds);
  std::vector<const FieldSite*> instances;
  for (const auto& s : sites) {
    if (s.kind == kind) instances.push_back(&s);
  }
  const FieldSite& site = *rng.Pick(instances);
  const DerivationTree& node = *NodeAt(current.tree, site.path);
  const RouterConfig& cfg = current.config;

  MutationPlan plan;
  plan.kind = MutationKind::kFieldMutation;
  plan.operation = "mutate-field";
  plan.target = site.path;
  plan.field = kind;
  switch (kind) {
    case FieldKind::kRouterId: {
      Ipv4Address now = cfg.router_id;
      plan.replacement =
          DrawUntil<Ipv4Address>([&] { return DrawAddress(rng, pools); },
                                 [&](Ipv4Address a) { return a != now; },
                                 [&] { return Ipv4Address(now.value() ^ 1); })
              .ToString();
      break;
    }
    case FieldKind::kPeerAddress: {
      auto unused = [&](Ipv4Address a) { return cfg.FindNeighbor(a) == nullptr; };
      plan.replacement = DrawUntil<Ipv4Address>(
                             [&] { return DrawAddress(rng, pools); }, unused,
                             [&] {
                               Ipv4Address a = RandomUnicast(rng);
                               while (!unused(a)) a = Ipv4Address(a.value() + 1);
                               return a;
                             })
                             .ToString();
      break;
    }
    case FieldKind::kRemoteAsn: {
      std::string now = node.text;
      plan.replacement = std::to_string(DrawUntil<Asn>(
          [&] { return DrawAsn(rng, pools); },
          [&](Asn a) { return std::to_string(a) != now; },
          [&] { return static_cast<Asn>(now == "65000" ? 65001 : 65000); }));
      break;
    }
    case FieldKind::kNetworkPrefix: {
      plan.replacement =
          DrawUntil<Prefix>([&] { return DrawPrefix(rng, pools); },
                            [&](const Prefix& p) { return !HasNetwork(cfg, p); },
                            [&] {
                              Prefix p = Truncate(RandomUnicast(rng), 24);
                              while (HasNetwork(cfg, p)) {
                                p = Truncate(Ipv4Address(p.address().value() + 256), 24);
                              }
                              return p;
                            })
              .ToString();
      break;
    }
    case FieldKind::kMaxPrefixLimit: {
      uint64_t now = std::stoull(node.text);
      uint64_t hi = std::max<uint64_t>(2, std::min<uint64_t>(2 * now, 0xffffffffULL));
      uint64_t v = rng.Between(1, hi - 1);
      if (v >= now) ++v;  // uniform over [1, hi] without `now`
      plan.replacement = std::to_string(v);
      break;
    }
  }
  return plan;
}

MutationPlan PlanInsertion(const ParsedConfig& current, std::vector<Statement> statements,
                           Rng& rng, std::string operation) {
  const DerivationTree& root = current.tree;
  size_t b = BlockIndex(root);
  const DerivationTree& block = root.children[b];
  RouterConfig seen = current.config;
  MutationPlan plan;
  plan.kind = MutationKind::kStatementInsertion;
  plan.operation = std::move(operation);
  for (const auto& stmt : statements) {
    CheckDuplicate(seen, stmt);
    std::visit(Overloaded{
                   [&](const NetworkStmt& n) {
                     seen.networks.push_back(n);
                     plan.positions.push_back({b, rng.Between(1, block.children.size())});
                   },
                   [&](const StaticRouteStmt& r) {
                     seen.static_routes.push_back(r);
                     plan.positions.push_back({rng.Between(0, root.children.size())});
                   },
                   [&](const MaxPrefixStmt& m) {
                     size_t decl = 0;
                     for (size_t i = 0; i < block.children.size(); ++i) {
                       const DerivationTree* peer = Child(block.children[i], sym::kPeerAddress);
                       if (block.children[i].symbol == sym::kNeighborRemoteAsStmt && peer &&
                           ParseIpv4(peer->text) == m.peer_address) {
                         decl = i;
                       }
                     }
                     plan.positions.push_back({b, rng.Between(decl + 1, block.children.size())});
                   },
               },
               stmt);
  }
  plan.statements = std::move(statements);
  return plan;
}

DerivationTree mutate_field(const DerivationTree& tree, Rng& rng, const FieldPools& pools) {
  ParsedConfig current = parse_config(tree.Leaves());
  return apply_plan(current, PlanFieldMutation(current, rng, pools)).tree;
}

DerivationTree insert_statement(const DerivationTree& tree, const Statement& stmt, Rng& rng) {
  ParsedConfig current = parse_config(tree.Leaves());
  return apply_plan(current, PlanInsertion(current, {stmt}, rng, "insert-statement")).tree;
}

std::vector<Statement> synthesize_subprefix(const Feedback& feedback, Rng& rng,
                                            std::span<const int> offsets) {
  auto candidates = feedback.RemotePrefixes();
  if (candidates.empty()) throw NoCandidatePrefix();
  const Prefix& parent = rng.Pick(candidates);
  std::vector<int> allowed;
  for (int k : offsets) {
    if (k >= 1 && parent.length() + k <= 32) allowed.push_back(k);
  }
  if (allowed.empty()) allowed.push_back(32 - parent.length());
  int k = rng.Pick(allowed);
  int len = parent.length() + k;
  uint64_t index = rng.Below(uint64_t{1} << k);
  uint32_t address = parent.address().value() | static_cast<uint32_t>(index << (32 - len));
  Prefix child(Ipv4Address(address), len);
  return {NetworkStmt{child}, StaticRouteStmt{child, std::nullopt}};
}

std::string random_mutate(std::string_view text, Rng& rng, int max_ops) {
  std::string out(text);
  if (max_ops <= 0) return out;
  int ops = static_cast<int>(rng.Between(1, static_cast<uint64_t>(max_ops)));
  for (int i = 0; i < ops; ++i) {
    uint64_t op = out.empty() ? 1 : rng.Below(4);
    switch (op) {
      case 0: {  // flip one bit
        size_t pos = rng.Below(out.size());
        out[pos] = static_cast<char>(out[pos] ^ (1 << rng.Below(8)));
        break;
      }
      case 1: {  // insert a printable byte
        size_t pos = rng.Below(out.size() + 1);
        out.insert(pos, 1, static_cast<char>(rng.Between(0x20, 0x7e)));
        break;
      }
      case 2:  // delete a byte
        out.erase(rng.Below(out.size()), 1);
        break;
      default: {  // duplicate a line
        std::vector<size_t> starts = {0};
        for (size_t p = 0; p + 1 < out.size(); ++p) {
          if (out[p] == '\n') starts.push_back(p + 1);
        }
        size_t start = rng.Pick(starts);
        size_t end = out.find('\n', start);
        std::string line = end == std::string::npos ? out.substr(start) + "\n"
                                                    : out.substr(start, end - start + 1);
        out.insert(start, line);
        break;
      }
    }
  }
  return out;
}

MutationPlan select_mutation(const Feedback& feedback, FuzzState state, Rng& rng,
                             const MutationContext& context) {
  if (state == FuzzState::kS2ErrorDetected) {
    throw std::logic_error("no mutation is selected while an error awaits recovery");
  }
  const ParsedConfig& current = *context.current;
  const RouterConfig& cfg = current.config;
  const FieldPools& pools = *context.pools;
  const MutationWeights& w = context.weights;

  std::vector<Ipv4Address> unlimited;
  for (const auto& n : cfg.neighbors) {
    if (!n.max_prefix_limit) unlimited.push_back(n.peer_address);
  }
  bool can_synth = !feedback.RemotePrefixes().empty();
  std::array<double, 4> weights = {can_synth ? w.synthesize_subprefix : 0.0,
                                   unlimited.empty() ? 0.0 : w.insert_max_prefix,
                                   w.mutate_field, w.other};
  // -1 when nothing is weighted; that falls through to the other insertions.
  int choice = rng.Weighted(weights);

  if (choice == 0) {
    for (int attempt = 0; attempt < 8; ++attempt) {
      auto stmts = synthesize_subprefix(feedback, rng, context.subprefix_offsets);
      const auto& net = std::get<NetworkStmt>(stmts[0]);
      if (HasNetwork(cfg, net.prefix) || HasStatic(cfg, std::get<StaticRouteStmt>(stmts[1]))) {
        continue;
      }
      return PlanInsertion(current, std::move(stmts), rng, "synthesize-subprefix");
    }
    return PlanFieldMutation(current, rng, pools);
  }
  if (choice == 1) {
    Ipv4Address peer = rng.Pick(unlimited);
    uint32_t learned = feedback.LearnedFrom(peer);
    auto limit = static_cast<uint32_t>(rng.Between(1, std::max<uint64_t>(1, 2ull * learned)));
    return PlanInsertion(current, {MaxPrefixStmt{peer, limit}}, rng, "insert-max-prefix");
  }
  if (choice == 2) return PlanFieldMutation(current, rng, pools);

  // Other: a plain network or static insertion, or deletion of a statement
  // the seed does not have.
  const RouterConfig& seed = *context.seed;
  std::vector<TreePath> deletable;
  const DerivationTree& root = current.tree;
  size_t b = BlockIndex(root);
  const DerivationTree& block = root.children[b];
  auto seed_max_prefix = seed.max_prefix();
  for (size_t i = 0; i < block.children.size(); ++i) {
    const DerivationTree& s = block.children[i];
    const DerivationTree* peer = Child(s, sym::kPeerAddress);
    if (s.symbol == sym::kNetworkStmt) {
      Prefix p = parse_prefix(Child(s, sym::kNetworkPrefix)->Leaves());
      if (!HasNetwork(seed, p)) deletable.push_back({b, i});
    } else if (s.symbol == sym::kNeighborMaxPrefixStmt) {
      MaxPrefixStmt m{*ParseIpv4(peer->text),
                      static_cast<uint32_t>(std::stoul(Child(s, sym::kMaxPrefixLimit)->text))};
      if (std::find(seed_max_prefix.begin(), seed_max_prefix.end(), m) == seed_max_prefix.end()) {
        deletable.push_back({b, i});
      }
    } else if (s.symbol == sym::kNeighborRemoteAsStmt) {
      Ipv4Address addr = *ParseIpv4(peer->text);
      const NeighborStmt* n = cfg.FindNeighbor(addr);
      const NeighborStmt* in_seed = seed.FindNeighbor(addr);
      bool referenced = n->max_prefix_limit.has_value() ||
                        (cfg.address_family &&
                         std::find(cfg.address_family->activated.begin(),
                                   cfg.address_family->activated.end(),
                                   addr) != cfg.address_family->activated.end());
      if (!referenced && (!in_seed || in_seed->remote_asn != n->remote_asn)) {
        deletable.push_back({b, i});
      }
    } else if (s.symbol == sym::kLogNeighborChangesStmt && !seed.log_neighbor_changes) {
      deletable.push_back({b, i});
    }
  }
  for (size_t i = 0; i < root.children.size(); ++i) {
    if (root.children[i].symbol != sym::kStaticRouteStmt) continue;
    const DerivationTree& s = root.children[i];
    StaticRouteStmt r{parse_prefix(Child(s, sym::kStaticPrefix)->Leaves()), std::nullopt};
    const std::string& target = Child(s, sym::kStaticTarget)->text;
    if (target != "Null0") r.next_hop = ParseIpv4(target);
    if (!HasStatic(seed, r)) deletable.push_back({i});
  }

  uint64_t sub = rng.Below(deletable.empty() ? 2 : 3);
  if (sub == 2) {
    MutationPlan plan;
    plan.kind = MutationKind::kStatementDeletion;
    plan.operation = "delete-statement";
    plan.target = rng.Pick(deletable);
    return plan;
  }
  if (sub == 0) {
    Prefix p = DrawUntil<Prefix>(
        [&] { return DrawPrefix(rng, pools); }, [&](const Prefix& q) { return !HasNetwork(cfg, q); },
        [&] { return Truncate(RandomUnicast(rng), 30); });
    if (HasNetwork(cfg, p)) return PlanFieldMutation(current, rng, pools);
    return PlanInsertion(current, {NetworkStmt{p}}, rng, "insert-network");
  }
  StaticRouteStmt route{DrawPrefix(rng, pools), std::nullopt};
  if (!cfg.neighbors.empty() && rng.Chance(0.5)) {
    route.next_hop = rng.Pick(cfg.neighbors).peer_address;
  }
  if (HasStatic(cfg, route)) return PlanFieldMutation(current, rng, pools);
  return PlanInsertion(current, {route}, rng, "insert-static");
}

}  // namespace routefuzz
