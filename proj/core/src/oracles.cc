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

#include "routefuzz/oracles.h"

#include <algorithm>
#include <stdexcept>

#include "json.hpp"

namespace routefuzz {
namespace {

using nlohmann::ordered_json;

Finding Make(std::string oracle, Severity severity, BugClass c, std::string key,
             const std::string& config_text) {
  Finding f;
  f.oracle = std::move(oracle);
  f.severity = severity;
  f.bug_class = c;
  f.key = std::move(key);
  f.config_text = config_text;
  return f;
}

Asn OriginOf(const RibSnapshot& snap, const RibEntry& e) {
  return e.as_path.empty() ? snap.local_asn : e.as_path.back();
}

std::string LinesFor(const RibSnapshot& snap, const Prefix& p) {
  RibSnapshot part;
  for (const auto& e : snap.entries) {
    if (e.prefix == p) part.entries.push_back(e);
  }
  return part.ToText();
}

std::vector<Evidence> RibDiffs(const std::map<std::string, RibSnapshot>& before,
                               const std::map<std::string, RibSnapshot>& after, const Prefix& p) {
  std::vector<Evidence> out;
  for (const auto& [node, snap] : after) {
    auto it = before.find(node);
    std::string was = it == before.end() ? "" : LinesFor(it->second, p);
    std::string now = LinesFor(snap, p);
    if (was != now) out.push_back(RibDiff{node, p, was, now});
  }
  return out;
}

ordered_json EvidenceJson(const Evidence& ev) {
  ordered_json j;
  if (const auto* e = std::get_if<NetworkEvent>(&ev)) {
    j["type"] = "event";
    j["event"] = ordered_json::parse(e->ToJson());
  } else if (const auto* d = std::get_if<RibDiff>(&ev)) {
    j["type"] = "rib-diff";
    j["node"] = d->node;
    j["prefix"] = d->prefix.ToString();
    j["before"] = d->before;
    j["after"] = d->after;
  } else {
    const auto& c = std::get<PathChange>(ev);
    j["type"] = "path-change";
    j["src"] = c.src;
    j["dst"] = c.dst.ToString();
    j["before"] = c.before.ToString();
    j["after"] = c.after.ToString();
  }
  return j;
}

ordered_json FindingJson(const Finding& f) {
  ordered_json j;
  j["class"] = std::string(BugClassName(f.bug_class));
  j["key"] = f.key;
  j["oracle"] = f.oracle;
  j["severity"] = std::string(SeverityName(f.severity));
  if (f.parent) j["parent"] = f.parent->ToString();
  if (f.child) j["child"] = f.child->ToString();
  j["evidence"] = ordered_json::array();
  for (const auto& ev : f.evidence) j["evidence"].push_back(EvidenceJson(ev));
  return j;
}

}  // namespace

std::string_view BugClassName(BugClass c) {
  switch (c) {
    case BugClass::kInvalidConfig:
      return "InvalidConfig";
    case BugClass::kSessionReset:
      return "SessionReset";
    case BugClass::kBlackhole:
      return "Blackhole";
    case BugClass::kSubPrefixHijack:
      return "SubPrefixHijack";
    case BugClass::kPathAnomaly:
      return "PathAnomaly";
    case BugClass::kOscillation:
      return "Oscillation";
  }
  return "?";
}

std::optional<BugClass> ParseBugClass(std::string_view name) {
  for (BugClass c : kAllBugClasses) {
    if (BugClassName(c) == name) return c;
  }
  return std::nullopt;
}

std::string_view SeverityName(Severity s) {
  switch (s) {
    case Severity::kLow:
      return "low";
    case Severity::kMedium:
      return "medium";
    case Severity::kHigh:
      return "high";
  }
  return "?";
}

std::string Finding::ToJson() const {
  ordered_json j = FindingJson(*this);
  j["config_text"] = config_text;
  return j.dump(2);
}

std::vector<Ipv4Address> Representatives(const Prefix& prefix) {
  uint32_t base = prefix.address().value();
  std::vector<Ipv4Address> out;
  if (prefix.length() >= 31) {
    for (uint64_t a = base; a <= prefix.LastAddress().value(); ++a) {
      out.push_back(Ipv4Address(static_cast<uint32_t>(a)));
    }
    return out;
  }
  uint64_t block = uint64_t{1} << (32 - prefix.length() - 2);
  for (uint64_t i = 0; i < 4; ++i) {
    out.push_back(Ipv4Address(static_cast<uint32_t>(base + i * block + (block >= 2 ? 1 : 0))));
  }
  return out;
}

ReachabilityMatrix MeasureReachability(Network& net) {
  ReachabilityMatrix m;
  const Topology& t = net.topology();
  std::set<Ipv4Address> probes;
  for (const auto& n : t.nodes) {
    for (const auto& p : n.owned) {
      for (Ipv4Address a : Representatives(p)) probes.insert(a);
    }
  }
  for (const auto& n : t.nodes) {
    for (Ipv4Address dst : probes) m[{n.name, dst}] = net.forwarding_path(n.name, dst);
  }
  return m;
}

std::map<Prefix, std::set<Asn>> OriginMap(const std::map<std::string, RibSnapshot>& ribs) {
  std::map<Prefix, std::set<Asn>> out;
  for (const auto& [node, snap] : ribs) {
    for (const auto& e : snap.entries) {
      if (e.best) out[e.prefix].insert(OriginOf(snap, e));
    }
  }
  return out;
}

std::map<std::string, RibSnapshot> SnapshotAll(const Network& net) {
  std::map<std::string, RibSnapshot> out;
  for (const auto& name : net.NodeNames()) out.emplace(name, net.snapshot_rib(name));
  return out;
}

std::optional<Prefix> BaselineProfile::OwnerOf(Ipv4Address dst) const {
  std::optional<Prefix> best;
  for (const auto& p : owned) {
    if (p.Contains(dst) && (!best || p.length() > best->length())) best = p;
  }
  return best;
}

BaselineProfile BaselineProfile::Capture(Network& net, const ConvergenceResult& convergence) {
  if (!convergence.converged) {
    throw std::logic_error("baseline captured from a network that did not converge");
  }
  BaselineProfile b;
  b.ribs = SnapshotAll(net);
  b.reachability = MeasureReachability(net);
  b.origins = OriginMap(b.ribs);
  for (const auto& n : net.topology().nodes) {
    b.node_asn[n.name] = n.asn;
    b.owned.insert(b.owned.end(), n.owned.begin(), n.owned.end());
  }
  std::sort(b.owned.begin(), b.owned.end());
  return b;
}

IterationArtifacts IterationArtifacts::Capture(Network& net, std::string target,
                                               std::string config_text,
                                               ConvergenceResult convergence, size_t log_start) {
  IterationArtifacts a;
  a.target = std::move(target);
  a.config_text = std::move(config_text);
  a.convergence = convergence;
  a.ribs = SnapshotAll(net);
  a.reachability = MeasureReachability(net);
  const auto& log = net.event_log();
  a.events.assign(log.begin() + static_cast<std::ptrdiff_t>(std::min(log_start, log.size())),
                  log.end());
  return a;
}

bool OracleReport::Has(BugClass c) const {
  return std::any_of(findings.begin(), findings.end(),
                     [&](const Finding& f) { return f.bug_class == c; });
}

std::set<std::pair<BugClass, std::string>> OracleReport::Keys() const {
  std::set<std::pair<BugClass, std::string>> out;
  for (const auto& f : findings) out.insert({f.bug_class, f.key});
  return out;
}

std::string OracleReport::ToJson() const {
  ordered_json j;
  j["findings"] = ordered_json::array();
  for (const auto& f : findings) j["findings"].push_back(FindingJson(f));
  j["observations"] = observations;
  return j.dump(2);
}

std::vector<Finding> notification_oracle(const std::vector<NetworkEvent>& events,
                                         const std::string& config_text) {
  std::vector<Finding> out;
  for (const auto& e : events) {
    if (const auto* n = std::get_if<event::Notification>(&e.payload)) {
      Finding f = Make("notification", Severity::kHigh, BugClass::kSessionReset,
                       e.node + "->" + n->peer, config_text);
      f.evidence.push_back(e);
      out.push_back(std::move(f));
    } else if (e.Is<event::ConfigRejected>()) {
      Finding f = Make("notification", Severity::kMedium, BugClass::kInvalidConfig, e.node,
                       config_text);
      f.evidence.push_back(e);
      out.push_back(std::move(f));
    }
  }
  return out;
}

std::vector<Finding> blackhole_oracle(const BaselineProfile& baseline,
                                      const ReachabilityMatrix& current,
                                      const std::vector<NetworkEvent>& events,
                                      const std::string& config_text) {
  std::vector<Finding> out;
  for (const auto& [key, before] : baseline.reachability) {
    if (before.outcome != ForwardingOutcome::kPath) continue;
    auto it = current.find(key);
    if (it == current.end()) continue;
    const ForwardingResult& now = it->second;
    if (now.outcome != ForwardingOutcome::kBlackholed &&
        now.outcome != ForwardingOutcome::kUnreachable) {
      continue;
    }
    auto owner = baseline.OwnerOf(key.dst);
    Finding f = Make("blackhole", Severity::kHigh, BugClass::kBlackhole,
                     owner ? owner->ToString() : key.dst.ToString(), config_text);
    f.evidence.push_back(PathChange{key.src, key.dst, before, now});
    for (const auto& e : events) {
      const auto* icmp = std::get_if<event::IcmpUnreachable>(&e.payload);
      if (icmp && icmp->dst == key.dst && e.node == now.Terminal()) {
        f.evidence.push_back(e);
        break;
      }
    }
    out.push_back(std::move(f));
  }
  return out;
}

std::pair<std::vector<Finding>, std::vector<std::string>> hijack_oracle(
    const BaselineProfile& baseline, const std::map<std::string, RibSnapshot>& ribs,
    const ReachabilityMatrix& current, const std::string& config_text) {
  std::vector<Finding> findings;
  std::vector<std::string> observations;
  auto origins = OriginMap(ribs);

  for (const auto& [child, child_origins] : origins) {
    if (baseline.origins.count(child)) continue;
    std::optional<Prefix> parent;
    for (const auto& [p, p_origins] : baseline.origins) {
      if (p == child || !prefix_contains(p, child)) continue;
      bool foreign = std::any_of(child_origins.begin(), child_origins.end(),
                                 [&](Asn a) { return !p_origins.count(a); });
      if (foreign && (!parent || p.length() > parent->length())) parent = p;
    }
    if (!parent) continue;
    Finding f = Make("hijack", Severity::kHigh, BugClass::kSubPrefixHijack, child.ToString(),
                     config_text);
    f.parent = parent;
    f.child = child;
    f.evidence = RibDiffs(baseline.ribs, ribs, child);
    findings.push_back(std::move(f));
  }

  for (const auto& [p, before] : baseline.origins) {
    auto it = origins.find(p);
    if (it == origins.end() || it->second == before) continue;
    Finding f = Make("hijack", Severity::kMedium, BugClass::kPathAnomaly, p.ToString(),
                     config_text);
    f.evidence = RibDiffs(baseline.ribs, ribs, p);
    findings.push_back(std::move(f));
  }

  for (const auto& [key, before] : baseline.reachability) {
    if (before.outcome != ForwardingOutcome::kPath) continue;
    auto it = current.find(key);
    if (it == current.end()) continue;
    const ForwardingResult& now = it->second;
    bool anomalous = false;
    if (now.outcome == ForwardingOutcome::kForwardingLoop) {
      anomalous = true;
    } else if (now.outcome == ForwardingOutcome::kPath ||
               now.outcome == ForwardingOutcome::kBlackholed) {
      anomalous = baseline.node_asn.at(now.Terminal()) != baseline.node_asn.at(before.Terminal());
      if (!anomalous && now.outcome == ForwardingOutcome::kPath &&
          now.hops.size() > before.hops.size()) {
        observations.push_back("path-length increase " + key.src + " -> " +
                               key.dst.ToString() + ": " + before.ToString() + " => " +
                               now.ToString());
      }
    }
    if (!anomalous) continue;
    auto owner = baseline.OwnerOf(key.dst);
    Finding f = Make("hijack", Severity::kMedium, BugClass::kPathAnomaly,
                     owner ? owner->ToString() : key.dst.ToString(), config_text);
    f.evidence.push_back(PathChange{key.src, key.dst, before, now});
    findings.push_back(std::move(f));
  }
  return {std::move(findings), std::move(observations)};
}

OracleReport run_all_oracles(const BaselineProfile& baseline, const IterationArtifacts& artifacts) {
  std::vector<Finding> all = notification_oracle(artifacts.events, artifacts.config_text);
  auto blackholes =
      blackhole_oracle(baseline, artifacts.reachability, artifacts.events, artifacts.config_text);
  all.insert(all.end(), blackholes.begin(), blackholes.end());
  auto [hijacks, observations] =
      hijack_oracle(baseline, artifacts.ribs, artifacts.reachability, artifacts.config_text);
  all.insert(all.end(), hijacks.begin(), hijacks.end());
  if (!artifacts.convergence.converged) {
    Finding f = Make("convergence", Severity::kHigh, BugClass::kOscillation, "network",
                     artifacts.config_text);
    for (auto it = artifacts.events.rbegin(); it != artifacts.events.rend() && f.evidence.size() < 10;
         ++it) {
      if (it->Is<event::PrefixAnnounced>() || it->Is<event::PrefixWithdrawn>()) {
        f.evidence.push_back(*it);
      }
    }
    if (f.evidence.empty() && !artifacts.events.empty()) f.evidence.push_back(artifacts.events.back());
    all.push_back(std::move(f));
  }

  std::map<std::pair<BugClass, std::string>, Finding> merged;
  for (auto& f : all) {
    auto key = std::make_pair(f.bug_class, f.key);
    auto it = merged.find(key);
    if (it == merged.end()) {
      merged.emplace(key, std::move(f));
      continue;
    }
    Finding& into = it->second;
    into.severity = std::max(into.severity, f.severity);
    for (auto& ev : f.evidence) {
      if (std::find(into.evidence.begin(), into.evidence.end(), ev) == into.evidence.end()) {
        into.evidence.push_back(std::move(ev));
      }
    }
  }
  OracleReport report;
  for (auto& [key, f] : merged) report.findings.push_back(std::move(f));
  report.observations = std::move(observations);
  return report;
}

}  // namespace routefuzz
