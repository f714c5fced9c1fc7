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

#ifndef ROUTEFUZZ_ORACLES_H_
#define ROUTEFUZZ_ORACLES_H_

#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

#include "routefuzz/events.h"
#include "routefuzz/prefix.h"
#include "routefuzz/simulator.h"

namespace routefuzz {

enum class BugClass {
  kInvalidConfig,
  kSessionReset,
  kBlackhole,
  kSubPrefixHijack,
  kPathAnomaly,
  kOscillation,
};
inline constexpr BugClass kAllBugClasses[] = {
    BugClass::kInvalidConfig, BugClass::kSessionReset,  BugClass::kBlackhole,
    BugClass::kSubPrefixHijack, BugClass::kPathAnomaly, BugClass::kOscillation};
std::string_view BugClassName(BugClass c);
std::optional<BugClass> ParseBugClass(std::string_view name);

enum class Severity { kLow, kMedium, kHigh };
std::string_view SeverityName(Severity s);

// A prefix whose RIB lines differ between baseline and now, at one node.
struct RibDiff {
  std::string node;
  Prefix prefix;
  std::string before;  // RIB lines, possibly empty
  std::string after;

  friend bool operator==(const RibDiff&, const RibDiff&) = default;
};

struct PathChange {
  std::string src;
  Ipv4Address dst;
  ForwardingResult before;
  ForwardingResult after;

  friend bool operator==(const PathChange&, const PathChange&) = default;
};

using Evidence = std::variant<NetworkEvent, RibDiff, PathChange>;

struct Finding {
  std::string oracle;
  Severity severity = Severity::kHigh;
  BugClass bug_class = BugClass::kInvalidConfig;
  // Deduplication key: "node->peer", a node, a prefix, or "network".
  std::string key;
  std::vector<Evidence> evidence;
  std::string config_text;
  // Sub-prefix hijacks: the baseline super-prefix and the new prefix.
  std::optional<Prefix> parent;
  std::optional<Prefix> child;

  std::string ToJson() const;  // pretty-printed object
};

struct ReachabilityKey {
  std::string src;
  Ipv4Address dst;

  friend auto operator<=>(const ReachabilityKey&, const ReachabilityKey&) = default;
};
using ReachabilityMatrix = std::map<ReachabilityKey, ForwardingResult>;

// Probe addresses for an owned prefix: the first host of each of the four
// blocks two bits longer, or every address of a /31 or /32. Any sub-prefix
// one or two bits longer contains at least one of them.
std::vector<Ipv4Address> Representatives(const Prefix& prefix);

// Every source router against every representative of every owned prefix.
ReachabilityMatrix MeasureReachability(Network& net);

// Origin ASes seen for each prefix across all RIBs (best entries only).
std::map<Prefix, std::set<Asn>> OriginMap(const std::map<std::string, RibSnapshot>& ribs);

std::map<std::string, RibSnapshot> SnapshotAll(const Network& net);

struct BaselineProfile {
  std::map<std::string, RibSnapshot> ribs;
  ReachabilityMatrix reachability;
  std::map<Prefix, std::set<Asn>> origins;
  std::map<std::string, Asn> node_asn;
  std::vector<Prefix> owned;

  // The most specific owned prefix containing `dst`, if any.
  std::optional<Prefix> OwnerOf(Ipv4Address dst) const;

  // Requires a network that converged; throws std::logic_error otherwise.
  static BaselineProfile Capture(Network& net, const ConvergenceResult& convergence);
};

// Everything the oracles inspect after one iteration.
struct IterationArtifacts {
  std::string target;
  std::string config_text;  // the deployed text
  ConvergenceResult convergence;
  std::vector<NetworkEvent> events;  // the iteration's slice of the log
  std::map<std::string, RibSnapshot> ribs;
  ReachabilityMatrix reachability;

  // Measures reachability, then slices the log from `log_start`.
  static IterationArtifacts Capture(Network& net, std::string target, std::string config_text,
                                    ConvergenceResult convergence, size_t log_start);
};

struct OracleReport {
  std::vector<Finding> findings;  // sorted by (class, key)
  std::vector<std::string> observations;  // low-severity notes, not findings

  bool Has(BugClass c) const;
  std::set<std::pair<BugClass, std::string>> Keys() const;
  std::string ToJson() const;
};

std::vector<Finding> notification_oracle(const std::vector<NetworkEvent>& events,
                                         const std::string& config_text);

std::vector<Finding> blackhole_oracle(const BaselineProfile& baseline,
                                      const ReachabilityMatrix& current,
                                      const std::vector<NetworkEvent>& events,
                                      const std::string& config_text);

// Findings plus low-severity observations (path-length increases).
std::pair<std::vector<Finding>, std::vector<std::string>> hijack_oracle(
    const BaselineProfile& baseline, const std::map<std::string, RibSnapshot>& ribs,
    const ReachabilityMatrix& current, const std::string& config_text);

OracleReport run_all_oracles(const BaselineProfile& baseline, const IterationArtifacts& artifacts);

}  // namespace routefuzz

#endif  // ROUTEFUZZ_ORACLES_H_
