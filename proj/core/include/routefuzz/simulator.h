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

#ifndef ROUTEFUZZ_SIMULATOR_H_
#define ROUTEFUZZ_SIMULATOR_H_

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "routefuzz/config.h"
#include "routefuzz/events.h"
#include "routefuzz/fib.h"
#include "routefuzz/prefix.h"
#include "routefuzz/topology.h"

namespace routefuzz {

enum class SessionState { kIdle, kEstablished };

// One direction of an eBGP session, as seen from `local`.
struct Session {
  std::string local;
  std::string peer;
  Ipv4Address peer_address;
  SessionState state = SessionState::kIdle;
  uint32_t received_prefix_count = 0;
  std::optional<uint32_t> limit;
  bool held_down = false;
};

enum class Origin : uint8_t { kIgp, kEgp, kIncomplete };
char OriginCode(Origin origin);

struct RibEntry {
  Prefix prefix;
  Ipv4Address next_hop;  // 0.0.0.0 for local origin
  std::vector<Asn> as_path;
  Origin origin = Origin::kIgp;
  uint32_t weight = 0;
  bool best = false;
  Ipv4Address peer_router_id;  // 0.0.0.0 for local origin

  bool IsLocal() const { return next_hop == Ipv4Address(); }

  friend bool operator==(const RibEntry&, const RibEntry&) = default;
};

inline constexpr uint32_t kLocalWeight = 32768;

struct RibSnapshot {
  std::string node;
  Asn local_asn = 0;
  // Sorted by prefix; per prefix the best entry comes first.
  std::vector<RibEntry> entries;

  // `*> <prefix> <next_hop> 0 <weight> [<as path> ]<origin>` per entry, `* `
  // for non-best entries.
  std::string ToText() const;

  friend bool operator==(const RibSnapshot&, const RibSnapshot&) = default;
};

// Returns the index of the preferred candidate: highest weight, then shortest
// AS path, then lowest origin, then lowest peer router-id, then lowest index.
size_t best_path_select(std::span<const RibEntry> candidates);

// Enforces a max-prefix limit on an Established session. When the incoming
// count exceeds the limit the session is torn down and held, and the
// Cease/MaxPrefixesReached notification is returned.
std::optional<NetworkEvent> enforce_max_prefix(Session& session, uint32_t incoming_count,
                                               uint64_t tick);

struct ConvergenceResult {
  bool converged = true;
  int rounds = 0;  // rounds that changed state

  friend bool operator==(const ConvergenceResult&, const ConvergenceResult&) = default;
};

enum class ForwardingOutcome { kPath, kBlackholed, kUnreachable, kForwardingLoop };
std::string_view OutcomeName(ForwardingOutcome outcome);

struct ForwardingResult {
  ForwardingOutcome outcome = ForwardingOutcome::kUnreachable;
  std::vector<std::string> hops;  // source first; the terminating router last

  const std::string& Terminal() const { return hops.back(); }
  std::string ToString() const;

  friend bool operator==(const ForwardingResult&, const ForwardingResult&) = default;
};

struct SimulatorOptions {
  int round_cap = 100;
};

// Deterministic eBGP network. Single-threaded; use one instance per trial.
class Network {
 public:
  explicit Network(Topology topology, SimulatorOptions options = {});

  const Topology& topology() const { return topology_; }
  const SimulatorOptions& options() const { return options_; }
  std::vector<std::string> NodeNames() const;

  // Replaces the node's config and resets its sessions on success; keeps the
  // old config and emits ConfigRejected otherwise. Never throws for bad text.
  std::vector<NetworkEvent> apply_config(std::string_view node, std::string_view text);

  std::pair<ConvergenceResult, std::vector<NetworkEvent>> converge();

  // Hop-by-hop longest-prefix-match walk. Blackholed and Unreachable results
  // log an IcmpUnreachable event.
  ForwardingResult forwarding_path(std::string_view src, Ipv4Address dst);

  RibSnapshot snapshot_rib(std::string_view node) const;

  // Restores baseline configs, clears RIBs, sessions, hold-downs and the log.
  void reset();

  const RouterConfig& config(std::string_view node) const;
  const RouterConfig& baseline_config(std::string_view node) const;
  std::string config_text(std::string_view node) const;

  std::vector<Session> sessions() const;
  std::vector<Session> sessions_of(std::string_view node) const;

  // Prefixes this node originates into BGP under its current config.
  std::vector<Prefix> originated(std::string_view node) const;

  const std::vector<NetworkEvent>& event_log() const { return log_; }
  uint64_t tick() const { return tick_; }

 private:
  struct LinkState {
    bool established = false;
    bool held_down = false;
  };
  struct NodeState {
    RouterConfig baseline;
    RouterConfig config;
    // Best-first candidates per prefix.
    std::map<Prefix, std::vector<RibEntry>> loc_rib;
    // Per link index: routes accepted from the peer on that link.
    std::map<size_t, std::map<Prefix, RibEntry>> adj_in;
  };

  size_t Index(std::string_view node) const;
  bool SessionConfigured(size_t link) const;
  const NeighborStmt* NeighborOn(size_t node, size_t link) const;
  std::map<Prefix, std::vector<RibEntry>> Select(size_t node) const;
  std::vector<RibEntry> LocalOrigination(size_t node) const;
  void TearDown(size_t link, const std::string& reason, std::vector<NetworkEvent>& events);
  Fib BuildFib(size_t node) const;
  void Emit(std::vector<NetworkEvent>& batch);

  Topology topology_;
  SimulatorOptions options_;
  std::vector<NodeState> nodes_;
  std::vector<LinkState> links_;
  std::vector<NetworkEvent> log_;
  std::vector<Fib> fib_cache_;
  uint64_t tick_ = 0;
};

}  // namespace routefuzz

#endif  // ROUTEFUZZ_SIMULATOR_H_
