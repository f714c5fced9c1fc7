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

#ifndef ROUTEFUZZ_MUTATION_H_
#define ROUTEFUZZ_MUTATION_H_

#include <array>
#include <map>
#include <optional>
#include <set>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "routefuzz/config.h"
#include "routefuzz/events.h"
#include "routefuzz/rng.h"
#include "routefuzz/simulator.h"
#include "routefuzz/state_machine.h"
#include "routefuzz/topology.h"

namespace routefuzz {

enum class MutationKind { kFieldMutation, kStatementInsertion, kStatementDeletion };

// E1, E2 or E3.
EventClass EventOf(MutationKind kind);
std::string_view MutationKindName(MutationKind kind);

enum class FieldKind { kRouterId, kPeerAddress, kRemoteAsn, kNetworkPrefix, kMaxPrefixLimit };
inline constexpr std::array<FieldKind, 5> kAllFieldKinds = {
    FieldKind::kRouterId, FieldKind::kPeerAddress, FieldKind::kRemoteAsn,
    FieldKind::kNetworkPrefix, FieldKind::kMaxPrefixLimit};
std::string_view FieldKindName(FieldKind kind);

using Statement = std::variant<NetworkStmt, StaticRouteStmt, MaxPrefixStmt>;

// One line without the trailing newline, indented as it would be rendered.
std::string RenderStatement(const Statement& stmt);

struct MutationPlan {
  MutationKind kind = MutationKind::kFieldMutation;
  std::string operation;  // e.g. "mutate-field", "synthesize-subprefix"
  // Field mutation: the field node. Deletion: the statement node.
  TreePath target;
  std::optional<FieldKind> field;
  std::string replacement;  // new field text; prefixes as a.b.c.d/n
  // Insertion: statements and, per statement, the position to insert at.
  // A position is a parent path followed by a child index (which may equal
  // the child count, meaning "append").
  std::vector<Statement> statements;
  std::vector<TreePath> positions;

  std::string Describe() const;

  friend bool operator==(const MutationPlan&, const MutationPlan&) = default;
};

struct Feedback {
  RibSnapshot rib;
  std::set<Prefix> announced_prefixes;
  std::map<Ipv4Address, SessionState> session_states;  // by neighbor address
  std::vector<NetworkEvent> last_events;

  // Number of distinct RIB prefixes learned from this neighbor address.
  uint32_t LearnedFrom(Ipv4Address neighbor) const;
  // Prefixes shorter than /32 that some other router originates.
  std::vector<Prefix> RemotePrefixes() const;
};

// Value sources for field mutation.
struct FieldPools {
  std::vector<Ipv4Address> addresses;
  std::vector<Prefix> prefixes;
  std::vector<Asn> asns;

  static FieldPools From(const Topology& topology, const RouterConfig& seed);
};

struct MutationWeights {
  double synthesize_subprefix = 0.35;
  double insert_max_prefix = 0.25;
  double mutate_field = 0.25;
  double other = 0.15;

  friend bool operator==(const MutationWeights&, const MutationWeights&) = default;
};

inline constexpr std::array<int, 2> kDefaultSubprefixOffsets = {1, 2};

struct MutationContext {
  const ParsedConfig* current = nullptr;
  const RouterConfig* seed = nullptr;  // statements present here are never deleted
  const FieldPools* pools = nullptr;
  MutationWeights weights;
  std::vector<int> subprefix_offsets{kDefaultSubprefixOffsets.begin(),
                                     kDefaultSubprefixOffsets.end()};
};

class MutationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};
class NoMutableField : public MutationError {
 public:
  NoMutableField() : MutationError("no mutable field") {}
};
class DuplicateStatement : public MutationError {
 public:
  explicit DuplicateStatement(const std::string& line)
      : MutationError("duplicate statement: " + line) {}
};
class NoCandidatePrefix : public MutationError {
 public:
  NoCandidatePrefix() : MutationError("no remotely originated prefix shorter than /32") {}
};

// Executes a plan by splicing the source text and re-parsing. Throws
// DuplicateStatement; a result that does not parse is a logic_error.
ParsedConfig apply_plan(const ParsedConfig& current, const MutationPlan& plan);

MutationPlan PlanFieldMutation(const ParsedConfig& current, Rng& rng, const FieldPools& pools);
// Chooses a legal position for each statement. Throws DuplicateStatement.
MutationPlan PlanInsertion(const ParsedConfig& current, std::vector<Statement> statements,
                           Rng& rng, std::string operation);

// Replaces one mutable field with a different grammar-valid value.
DerivationTree mutate_field(const DerivationTree& tree, Rng& rng, const FieldPools& pools);

DerivationTree insert_statement(const DerivationTree& tree, const Statement& stmt, Rng& rng);

// A more-specific NetworkStmt inside a remote prefix plus the null-sink
// static route that makes it originable.
std::vector<Statement> synthesize_subprefix(
    const Feedback& feedback, Rng& rng,
    std::span<const int> offsets = kDefaultSubprefixOffsets);

// Byte-level flip/insert/delete/duplicate-line, between 1 and `max_ops`
// operations. No grammar knowledge; `max_ops` = 0 is the identity.
std::string random_mutate(std::string_view text, Rng& rng, int max_ops = 4);

// Feedback-weighted choice among sub-prefix synthesis, max-prefix insertion,
// field mutation and other insertions/deletions. Deterministic in its inputs.
MutationPlan select_mutation(const Feedback& feedback, FuzzState state, Rng& rng,
                             const MutationContext& context);

}  // namespace routefuzz

#endif  // ROUTEFUZZ_MUTATION_H_
