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

#ifndef ROUTEFUZZ_CONFIG_H_
#define ROUTEFUZZ_CONFIG_H_

#include <cstddef>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "routefuzz/prefix.h"

namespace routefuzz {

using Asn = uint32_t;

struct NeighborStmt {
  Ipv4Address peer_address;
  Asn remote_asn = 0;
  std::optional<uint32_t> max_prefix_limit;

  friend bool operator==(const NeighborStmt&, const NeighborStmt&) = default;
};

// `network <addr> mask <dotted-mask>`.
struct NetworkStmt {
  Prefix prefix;

  friend bool operator==(const NetworkStmt&, const NetworkStmt&) = default;
};

// `ip route <addr> <mask> {Null0 | <next-hop>}`. An empty next hop is the
// null sink.
struct StaticRouteStmt {
  Prefix prefix;
  std::optional<Ipv4Address> next_hop;

  bool IsNullSink() const { return !next_hop.has_value(); }
  friend bool operator==(const StaticRouteStmt&, const StaticRouteStmt&) = default;
};

// `neighbor <ip> maximum-prefix <n>`. Stored on the owning NeighborStmt once
// parsed; this is the statement form used for insertion.
struct MaxPrefixStmt {
  Ipv4Address peer_address;
  uint32_t limit = 1;

  friend bool operator==(const MaxPrefixStmt&, const MaxPrefixStmt&) = default;
};

// `address-family ipv4 [unicast]` ... `exit-address-family`. Recognized, not
// interpreted.
struct AddressFamilyBlock {
  bool unicast = false;
  std::vector<Ipv4Address> activated;

  friend bool operator==(const AddressFamilyBlock&, const AddressFamilyBlock&) = default;
};

struct RouterConfig {
  Asn local_asn = 0;
  Ipv4Address router_id;
  bool log_neighbor_changes = false;
  std::vector<NeighborStmt> neighbors;
  std::vector<NetworkStmt> networks;
  std::vector<StaticRouteStmt> static_routes;
  std::optional<AddressFamilyBlock> address_family;

  const NeighborStmt* FindNeighbor(Ipv4Address peer) const;
  std::vector<MaxPrefixStmt> max_prefix() const;

  friend bool operator==(const RouterConfig&, const RouterConfig&) = default;
};

struct Span {
  size_t offset = 0;
  size_t length = 0;

  friend bool operator==(const Span&, const Span&) = default;
};

// Grammar symbols. Nonterminals are written <like-this>; keyword terminals as
// 'keyword'; other terminals by token class (ws, newline, ipv4 field names).
namespace sym {
inline constexpr std::string_view kConfig = "<config>";
inline constexpr std::string_view kRouterBgpBlock = "<router-bgp-block>";
inline constexpr std::string_view kRouterBgpHeader = "<router-bgp-header>";
inline constexpr std::string_view kRouterIdStmt = "<router-id-stmt>";
inline constexpr std::string_view kLogNeighborChangesStmt = "<log-neighbor-changes-stmt>";
inline constexpr std::string_view kNeighborRemoteAsStmt = "<neighbor-remote-as-stmt>";
inline constexpr std::string_view kNeighborMaxPrefixStmt = "<neighbor-max-prefix-stmt>";
inline constexpr std::string_view kNetworkStmt = "<network-stmt>";
inline constexpr std::string_view kNetworkPrefix = "<network-prefix>";
inline constexpr std::string_view kAddressFamilyBlock = "<address-family-block>";
inline constexpr std::string_view kAddressFamilyHeader = "<address-family-header>";
inline constexpr std::string_view kActivateStmt = "<activate-stmt>";
inline constexpr std::string_view kExitAddressFamily = "<exit-address-family>";
inline constexpr std::string_view kStaticRouteStmt = "<static-route-stmt>";
inline constexpr std::string_view kStaticPrefix = "<static-prefix>";
inline constexpr std::string_view kCommentLine = "<comment-line>";
inline constexpr std::string_view kBlankLine = "<blank-line>";
inline constexpr std::string_view kEol = "<eol>";

inline constexpr std::string_view kWs = "ws";
inline constexpr std::string_view kIndent = "indent";
inline constexpr std::string_view kNewline = "newline";
inline constexpr std::string_view kComment = "comment";
inline constexpr std::string_view kLocalAsn = "local-asn";
inline constexpr std::string_view kRouterId = "router-id";
inline constexpr std::string_view kPeerAddress = "peer-address";
inline constexpr std::string_view kRemoteAsn = "remote-asn";
inline constexpr std::string_view kMaxPrefixLimit = "max-prefix-limit";
inline constexpr std::string_view kNetworkAddress = "network-address";
inline constexpr std::string_view kNetworkMask = "network-mask";
inline constexpr std::string_view kStaticAddress = "static-address";
inline constexpr std::string_view kStaticMask = "static-mask";
inline constexpr std::string_view kStaticTarget = "static-target";
}  // namespace sym

// Parse tree of a configuration. Leaves are terminals and concatenate to the
// source text exactly, whitespace and newlines included.
struct DerivationTree {
  std::string symbol;
  bool terminal = false;
  std::string text;  // terminals only
  std::vector<DerivationTree> children;
  Span span;

  std::string Leaves() const;

  friend bool operator==(const DerivationTree&, const DerivationTree&) = default;
};

using TreePath = std::vector<size_t>;

const DerivationTree* NodeAt(const DerivationTree& tree, const TreePath& path);

// Checks every nonterminal's children against the grammar productions and
// that terminal spans tile the text. Returns a description of the first
// violation, or nullopt.
std::optional<std::string> ValidateTree(const DerivationTree& tree);

class ParseError : public std::runtime_error {
 public:
  ParseError(size_t line, size_t column, std::string token, const std::string& message);

  size_t line() const { return line_; }
  size_t column() const { return column_; }
  const std::string& token() const { return token_; }

 private:
  size_t line_;
  size_t column_;
  std::string token_;
};

struct ParsedConfig {
  RouterConfig config;
  DerivationTree tree;
};

// Throws ParseError.
ParsedConfig parse_config(std::string_view text);

// Canonical text. parse_config(render_config(c)).config == c.
std::string render_config(const RouterConfig& config);

// Validity of a parsed config without building a tree; never throws.
bool IsParseable(std::string_view text);

}  // namespace routefuzz

#endif  // ROUTEFUZZ_CONFIG_H_
