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

#include "routefuzz/config.h"

#include <algorithm>
#include <charconv>
#include <map>
#include <set>
#include <utility>

namespace routefuzz {
namespace {

struct Token {
  bool is_ws = false;
  std::string_view text;
  size_t offset = 0;  // absolute
};

struct Line {
  size_t number = 0;  // 1-based
  size_t offset = 0;
  std::string_view content;  // without newline
  bool has_newline = false;
  std::vector<Token> tokens;
};

DerivationTree Terminal(std::string_view symbol, std::string_view text, size_t offset) {
  DerivationTree t;
  t.symbol = std::string(symbol);
  t.terminal = true;
  t.text = std::string(text);
  t.span = {offset, text.size()};
  return t;
}

DerivationTree Nonterminal(std::string_view symbol, std::vector<DerivationTree> children,
                           size_t offset) {
  DerivationTree t;
  t.symbol = std::string(symbol);
  t.span.offset = children.empty() ? offset : children.front().span.offset;
  size_t end = children.empty() ? offset : children.back().span.offset +
                                               children.back().span.length;
  t.span.length = end - t.span.offset;
  t.children = std::move(children);
  return t;
}

std::string Keyword(std::string_view word) { return "'" + std::string(word) + "'"; }

std::optional<uint32_t> ParseUnsigned(std::string_view text) {
  if (text.empty() || text.size() > 10) return std::nullopt;
  if (text.size() > 1 && text[0] == '0') return std::nullopt;
  uint64_t value = 0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc() || ptr != text.data() + text.size() || value > 0xffffffffULL) {
    return std::nullopt;
  }
  return static_cast<uint32_t>(value);
}

// One element of a statement shape: a keyword literal or a field class.
struct Item {
  bool keyword;
  std::string_view value;
};

class Parser {
 public:
  explicit Parser(std::string_view text) : text_(text) {}

  ParsedConfig Run() {
    SplitLines();
    std::vector<DerivationTree> top;
    std::optional<DerivationTree> block;
    std::optional<DerivationTree> af_block;
    bool seen_router_bgp = false;

    auto close_af = [&](const Line& line) {
      if (af_block) {
        throw Error(line, line.tokens.empty() ? std::string_view("<eol>") : FirstWord(line).text,
                    "missing exit-address-family");
      }
    };
    auto close_block = [&](const Line& line) {
      close_af(line);
      if (block) {
        top.push_back(Finish(std::move(*block)));
        block.reset();
      }
    };

    for (const Line& line : lines_) {
      bool blank = std::all_of(line.tokens.begin(), line.tokens.end(),
                               [](const Token& t) { return t.is_ws; });
      if (blank) {
        DerivationTree node = BlankLine(line);
        if (af_block) {
          af_block->children.push_back(std::move(node));
        } else if (block) {
          block->children.push_back(std::move(node));
        } else {
          top.push_back(std::move(node));
        }
        continue;
      }
      const Token& first = line.tokens.front();
      bool indented = first.is_ws;
      const Token& word = FirstWord(line);

      if (!indented) {
        if (word.text.front() == '!') {
          close_block(line);
          top.push_back(CommentLine(line));
        } else if (word.text == "router") {
          close_block(line);
          if (seen_router_bgp) throw Error(line, word.text, "duplicate router bgp stanza");
          seen_router_bgp = true;
          block = Nonterminal(sym::kRouterBgpBlock, {RouterBgpHeader(line)}, line.offset);
        } else if (word.text == "ip") {
          close_block(line);
          top.push_back(StaticRoute(line));
        } else {
          throw Error(line, word.text, "unknown statement");
        }
        continue;
      }

      if (word.text.front() == '!') {
        throw Error(line, word.text, "indented comment");
      }
      if (!block) throw Error(line, word.text, "statement outside router bgp");

      if (af_block) {
        if (word.text == "exit-address-family") {
          af_block->children.push_back(Statement(
              line, sym::kExitAddressFamily, {{true, "exit-address-family"}}));
          block->children.push_back(Finish(std::move(*af_block)));
          af_block.reset();
        } else if (word.text == "neighbor") {
          af_block->children.push_back(Activate(line));
        } else {
          throw Error(line, word.text, "unsupported statement in address-family");
        }
        continue;
      }

      if (word.text == "router-id") {
        block->children.push_back(RouterId(line));
      } else if (word.text == "bgp") {
        if (config_.log_neighbor_changes) {
          throw Error(line, word.text, "duplicate bgp log-neighbor-changes");
        }
        block->children.push_back(Statement(line, sym::kLogNeighborChangesStmt,
                                            {{true, "bgp"}, {true, "log-neighbor-changes"}}));
        config_.log_neighbor_changes = true;
      } else if (word.text == "neighbor") {
        block->children.push_back(Neighbor(line));
      } else if (word.text == "network") {
        block->children.push_back(Network(line));
      } else if (word.text == "address-family") {
        if (config_.address_family) throw Error(line, word.text, "duplicate address-family");
        af_block = Nonterminal(sym::kAddressFamilyBlock, {AddressFamilyHeader(line)},
                               line.offset);
      } else {
        throw Error(line, word.text, "unknown statement");
      }
    }

    Line eof;
    eof.number = lines_.empty() ? 1 : lines_.back().number + 1;
    eof.offset = text_.size();
    close_block(eof);

    if (!seen_router_bgp) throw Error(eof, "<eof>", "missing router bgp stanza");
    if (!seen_router_id_) throw Error(eof, "<eof>", "missing router-id");

    ParsedConfig out;
    out.tree = Nonterminal(sym::kConfig, std::move(top), 0);
    out.tree.span = {0, text_.size()};
    out.config = std::move(config_);
    return out;
  }

 private:
  ParseError Error(const Line& line, std::string_view token, const std::string& message) {
    size_t column = 1;
    if (token.data() >= text_.data() && token.data() <= text_.data() + text_.size()) {
      size_t abs = static_cast<size_t>(token.data() - text_.data());
      if (abs >= line.offset) column = abs - line.offset + 1;
    }
    return ParseError(line.number, column, std::string(token), message);
  }

  void SplitLines() {
    size_t pos = 0;
    size_t number = 1;
    while (pos < text_.size()) {
      size_t nl = text_.find('\n', pos);
      Line line;
      line.number = number++;
      line.offset = pos;
      if (nl == std::string_view::npos) {
        line.content = text_.substr(pos);
        pos = text_.size();
      } else {
        line.content = text_.substr(pos, nl - pos);
        line.has_newline = true;
        pos = nl + 1;
      }
      Tokenize(line);
      lines_.push_back(std::move(line));
    }
  }

  void Tokenize(Line& line) {
    std::string_view c = line.content;
    bool comment = false;
    size_t i = 0;
    while (i < c.size()) {
      size_t j = i;
      bool ws = c[i] == ' ' || c[i] == '\t';
      if (comment) {
        j = c.size();
        ws = false;
      } else if (ws) {
        while (j < c.size() && (c[j] == ' ' || c[j] == '\t')) ++j;
      } else {
        if (c[i] == '!' && std::all_of(line.tokens.begin(), line.tokens.end(),
                                       [](const Token& t) { return t.is_ws; })) {
          comment = true;
          j = c.size();
        } else {
          while (j < c.size() && c[j] != ' ' && c[j] != '\t') {
            auto ch = static_cast<unsigned char>(c[j]);
            if (ch < 0x21 || ch > 0x7e) {
              throw ParseError(line.number, j + 1, std::string(1, c[j]),
                               "invalid character");
            }
            ++j;
          }
        }
      }
      line.tokens.push_back({ws, c.substr(i, j - i), line.offset + i});
      i = j;
    }
  }

  static const Token& FirstWord(const Line& line) {
    for (const Token& t : line.tokens) {
      if (!t.is_ws) return t;
    }
    return line.tokens.front();
  }

  DerivationTree Eol(const Line& line, std::optional<Token> trailing_ws) {
    std::vector<DerivationTree> children;
    if (trailing_ws) children.push_back(Terminal(sym::kWs, trailing_ws->text, trailing_ws->offset));
    if (line.has_newline) {
      children.push_back(Terminal(sym::kNewline, "\n", line.offset + line.content.size()));
    }
    return Nonterminal(sym::kEol, std::move(children), line.offset + line.content.size());
  }

  DerivationTree BlankLine(const Line& line) {
    std::vector<DerivationTree> children;
    if (!line.tokens.empty()) {
      children.push_back(Terminal(sym::kWs, line.content, line.offset));
    }
    if (line.has_newline) {
      children.push_back(Terminal(sym::kNewline, "\n", line.offset + line.content.size()));
    }
    return Nonterminal(sym::kBlankLine, std::move(children), line.offset);
  }

  DerivationTree CommentLine(const Line& line) {
    const Token& c = line.tokens.front();
    std::optional<Token> trailing;
    return Nonterminal(sym::kCommentLine,
                       {Terminal(sym::kComment, c.text, c.offset), Eol(line, trailing)},
                       line.offset);
  }

  // Matches the line's words against `shape` and builds a statement node.
  // Field terminals take their item's symbol; the caller validates values.
  DerivationTree Statement(const Line& line, std::string_view symbol,
                           const std::vector<Item>& shape) {
    std::vector<DerivationTree> children;
    std::optional<Token> trailing;
    size_t item = 0;
    for (size_t i = 0; i < line.tokens.size(); ++i) {
      const Token& t = line.tokens[i];
      if (t.is_ws) {
        if (i == 0) {
          children.push_back(Terminal(sym::kIndent, t.text, t.offset));
        } else if (i + 1 == line.tokens.size()) {
          trailing = t;
        } else {
          children.push_back(Terminal(sym::kWs, t.text, t.offset));
        }
        continue;
      }
      if (item >= shape.size()) throw Error(line, t.text, "unexpected token");
      const Item& expected = shape[item++];
      if (expected.keyword) {
        if (t.text != expected.value) {
          throw Error(line, t.text, "expected '" + std::string(expected.value) + "'");
        }
        children.push_back(Terminal(Keyword(expected.value), t.text, t.offset));
      } else {
        children.push_back(Terminal(expected.value, t.text, t.offset));
      }
    }
    if (item < shape.size()) {
      throw ParseError(line.number, line.content.size() + 1, "<eol>",
                       "unexpected end of line, expected " +
                           std::string(shape[item].value));
    }
    children.push_back(Eol(line, trailing));
    return Nonterminal(symbol, std::move(children), line.offset);
  }

  const DerivationTree& Field(const DerivationTree& stmt, std::string_view symbol) {
    for (const auto& c : stmt.children) {
      if (c.symbol == symbol) return c;
    }
    return stmt;  // unreachable for well-formed shapes
  }

  std::string_view TokenText(const Line&, const DerivationTree& leaf) {
    return text_.substr(leaf.span.offset, leaf.span.length);
  }

  Asn ParseAsn(const Line& line, const DerivationTree& leaf) {
    auto v = ParseUnsigned(leaf.text);
    if (!v || *v == 0) throw Error(line, TokenText(line, leaf), "invalid AS number");
    return *v;
  }

  Ipv4Address ParseAddress(const Line& line, const DerivationTree& leaf) {
    auto v = ParseIpv4(leaf.text);
    if (!v) throw Error(line, TokenText(line, leaf), "invalid IPv4 address");
    return *v;
  }

  Prefix ParseAddressMask(const Line& line, const DerivationTree& addr_leaf,
                          const DerivationTree& mask_leaf) {
    Ipv4Address addr = ParseAddress(line, addr_leaf);
    auto mask = ParseIpv4(mask_leaf.text);
    if (!mask) throw Error(line, TokenText(line, mask_leaf), "invalid mask");
    auto len = MaskLength(*mask);
    if (!len) throw Error(line, TokenText(line, mask_leaf), "non-contiguous mask");
    try {
      return Prefix(addr, *len);
    } catch (const PrefixError& e) {
      throw Error(line, TokenText(line, addr_leaf), e.what());
    }
  }

  // Wraps children [first, last] (by symbol) into a new nonterminal.
  static void Group(DerivationTree& stmt, std::string_view first, std::string_view last,
                    std::string_view symbol) {
    auto& ch = stmt.children;
    auto b = std::find_if(ch.begin(), ch.end(), [&](const auto& c) { return c.symbol == first; });
    auto e = std::find_if(ch.begin(), ch.end(), [&](const auto& c) { return c.symbol == last; });
    std::vector<DerivationTree> inner(std::make_move_iterator(b), std::make_move_iterator(e + 1));
    size_t offset = inner.front().span.offset;
    auto pos = ch.erase(b, e + 1);
    ch.insert(pos, Nonterminal(symbol, std::move(inner), offset));
  }

  DerivationTree RouterBgpHeader(const Line& line) {
    DerivationTree stmt = Statement(line, sym::kRouterBgpHeader,
                                    {{true, "router"}, {true, "bgp"}, {false, sym::kLocalAsn}});
    config_.local_asn = ParseAsn(line, Field(stmt, sym::kLocalAsn));
    return stmt;
  }

  DerivationTree RouterId(const Line& line) {
    DerivationTree stmt = Statement(line, sym::kRouterIdStmt,
                                    {{true, "router-id"}, {false, sym::kRouterId}});
    const auto& leaf = Field(stmt, sym::kRouterId);
    if (seen_router_id_) throw Error(line, TokenText(line, leaf), "duplicate router-id");
    seen_router_id_ = true;
    config_.router_id = ParseAddress(line, leaf);
    return stmt;
  }

  DerivationTree Neighbor(const Line& line) {
    std::vector<std::string_view> words;
    for (const Token& t : line.tokens) {
      if (!t.is_ws) words.push_back(t.text);
    }
    if (words.size() >= 3 && words[2] == "maximum-prefix") {
      DerivationTree stmt =
          Statement(line, sym::kNeighborMaxPrefixStmt,
                    {{true, "neighbor"}, {false, sym::kPeerAddress}, {true, "maximum-prefix"},
                     {false, sym::kMaxPrefixLimit}});
      const auto& peer_leaf = Field(stmt, sym::kPeerAddress);
      Ipv4Address peer = ParseAddress(line, peer_leaf);
      const auto& limit_leaf = Field(stmt, sym::kMaxPrefixLimit);
      auto limit = ParseUnsigned(limit_leaf.text);
      if (!limit || *limit == 0) {
        throw Error(line, TokenText(line, limit_leaf), "invalid maximum-prefix limit");
      }
      auto it = std::find_if(config_.neighbors.begin(), config_.neighbors.end(),
                             [&](const NeighborStmt& n) { return n.peer_address == peer; });
      if (it == config_.neighbors.end()) {
        throw Error(line, TokenText(line, peer_leaf), "maximum-prefix for undeclared neighbor");
      }
      if (it->max_prefix_limit) {
        throw Error(line, TokenText(line, peer_leaf), "duplicate maximum-prefix");
      }
      it->max_prefix_limit = *limit;
      return stmt;
    }
    DerivationTree stmt = Statement(
        line, sym::kNeighborRemoteAsStmt,
        {{true, "neighbor"}, {false, sym::kPeerAddress}, {true, "remote-as"},
         {false, sym::kRemoteAsn}});
    const auto& peer_leaf = Field(stmt, sym::kPeerAddress);
    Ipv4Address peer = ParseAddress(line, peer_leaf);
    Asn asn = ParseAsn(line, Field(stmt, sym::kRemoteAsn));
    if (config_.FindNeighbor(peer)) {
      throw Error(line, TokenText(line, peer_leaf), "duplicate neighbor");
    }
    config_.neighbors.push_back({peer, asn, std::nullopt});
    return stmt;
  }

  DerivationTree Network(const Line& line) {
    DerivationTree stmt = Statement(line, sym::kNetworkStmt,
                                    {{true, "network"}, {false, sym::kNetworkAddress},
                                     {true, "mask"}, {false, sym::kNetworkMask}});
    const auto& addr_leaf = Field(stmt, sym::kNetworkAddress);
    Prefix p = ParseAddressMask(line, addr_leaf, Field(stmt, sym::kNetworkMask));
    for (const auto& n : config_.networks) {
      if (n.prefix == p) throw Error(line, TokenText(line, addr_leaf), "duplicate network");
    }
    config_.networks.push_back({p});
    Group(stmt, sym::kNetworkAddress, sym::kNetworkMask, sym::kNetworkPrefix);
    return stmt;
  }

  DerivationTree AddressFamilyHeader(const Line& line) {
    size_t words = 0;
    for (const Token& t : line.tokens) words += !t.is_ws;
    std::vector<Item> shape = {{true, "address-family"}, {true, "ipv4"}};
    if (words >= 3) shape.push_back({true, "unicast"});
    DerivationTree stmt = Statement(line, sym::kAddressFamilyHeader, shape);
    config_.address_family = AddressFamilyBlock{words >= 3, {}};
    return stmt;
  }

  DerivationTree Activate(const Line& line) {
    DerivationTree stmt = Statement(line, sym::kActivateStmt,
                                    {{true, "neighbor"}, {false, sym::kPeerAddress},
                                     {true, "activate"}});
    const auto& leaf = Field(stmt, sym::kPeerAddress);
    Ipv4Address peer = ParseAddress(line, leaf);
    if (!config_.FindNeighbor(peer)) {
      throw Error(line, TokenText(line, leaf), "activate for undeclared neighbor");
    }
    auto& act = config_.address_family->activated;
    if (std::find(act.begin(), act.end(), peer) != act.end()) {
      throw Error(line, TokenText(line, leaf), "duplicate activate");
    }
    act.push_back(peer);
    return stmt;
  }

  DerivationTree StaticRoute(const Line& line) {
    DerivationTree stmt = Statement(
        line, sym::kStaticRouteStmt,
        {{true, "ip"}, {true, "route"}, {false, sym::kStaticAddress}, {false, sym::kStaticMask},
         {false, sym::kStaticTarget}});
    const auto& addr_leaf = Field(stmt, sym::kStaticAddress);
    Prefix p = ParseAddressMask(line, addr_leaf, Field(stmt, sym::kStaticMask));
    const auto& target_leaf = Field(stmt, sym::kStaticTarget);
    StaticRouteStmt route{p, std::nullopt};
    if (target_leaf.text != "Null0") route.next_hop = ParseAddress(line, target_leaf);
    for (const auto& r : config_.static_routes) {
      if (r == route) throw Error(line, TokenText(line, addr_leaf), "duplicate static route");
    }
    config_.static_routes.push_back(route);
    Group(stmt, sym::kStaticAddress, sym::kStaticMask, sym::kStaticPrefix);
    return stmt;
  }

  static DerivationTree Finish(DerivationTree node) {
    return Nonterminal(node.symbol, std::move(node.children), node.span.offset);
  }

  std::string_view text_;
  std::vector<Line> lines_;
  RouterConfig config_;
  bool seen_router_id_ = false;
};

// ---- grammar table used by ValidateTree ----

struct Element {
  std::vector<std::string_view> alternatives;
  char quantifier = '1';  // '1', '?', '*'
};
using Production = std::vector<Element>;

std::map<std::string_view, std::vector<Production>> BuildGrammar() {
  using E = Element;
  std::map<std::string_view, std::vector<Production>> g;
  E eol{{sym::kEol}};
  E ws{{sym::kWs}};
  E indent{{sym::kIndent}};
  g[sym::kConfig] = {{E{{sym::kRouterBgpBlock, sym::kStaticRouteStmt, sym::kCommentLine,
                         sym::kBlankLine},
                        '*'}}};
  g[sym::kRouterBgpBlock] = {
      {E{{sym::kRouterBgpHeader}},
       E{{sym::kRouterIdStmt, sym::kLogNeighborChangesStmt, sym::kNeighborRemoteAsStmt,
          sym::kNeighborMaxPrefixStmt, sym::kNetworkStmt, sym::kAddressFamilyBlock,
          sym::kBlankLine},
         '*'}}};
  g[sym::kEol] = {{E{{sym::kWs}, '?'}, E{{sym::kNewline}, '?'}}};
  g[sym::kRouterBgpHeader] = {{E{{"'router'"}}, ws, E{{"'bgp'"}}, ws, E{{sym::kLocalAsn}}, eol}};
  g[sym::kRouterIdStmt] = {{indent, E{{"'router-id'"}}, ws, E{{sym::kRouterId}}, eol}};
  g[sym::kLogNeighborChangesStmt] = {
      {indent, E{{"'bgp'"}}, ws, E{{"'log-neighbor-changes'"}}, eol}};
  g[sym::kNeighborRemoteAsStmt] = {{indent, E{{"'neighbor'"}}, ws, E{{sym::kPeerAddress}}, ws,
                                    E{{"'remote-as'"}}, ws, E{{sym::kRemoteAsn}}, eol}};
  g[sym::kNeighborMaxPrefixStmt] = {{indent, E{{"'neighbor'"}}, ws, E{{sym::kPeerAddress}}, ws,
                                     E{{"'maximum-prefix'"}}, ws, E{{sym::kMaxPrefixLimit}},
                                     eol}};
  g[sym::kNetworkStmt] = {{indent, E{{"'network'"}}, ws, E{{sym::kNetworkPrefix}}, eol}};
  g[sym::kNetworkPrefix] = {
      {E{{sym::kNetworkAddress}}, ws, E{{"'mask'"}}, ws, E{{sym::kNetworkMask}}}};
  g[sym::kAddressFamilyBlock] = {{E{{sym::kAddressFamilyHeader}},
                                  E{{sym::kActivateStmt, sym::kBlankLine}, '*'},
                                  E{{sym::kExitAddressFamily}}}};
  g[sym::kAddressFamilyHeader] = {
      {indent, E{{"'address-family'"}}, ws, E{{"'ipv4'"}}, eol},
      {indent, E{{"'address-family'"}}, ws, E{{"'ipv4'"}}, ws, E{{"'unicast'"}}, eol}};
  g[sym::kActivateStmt] = {
      {indent, E{{"'neighbor'"}}, ws, E{{sym::kPeerAddress}}, ws, E{{"'activate'"}}, eol}};
  g[sym::kExitAddressFamily] = {{indent, E{{"'exit-address-family'"}}, eol}};
  g[sym::kStaticRouteStmt] = {{E{{"'ip'"}}, ws, E{{"'route'"}}, ws, E{{sym::kStaticPrefix}}, ws,
                               E{{sym::kStaticTarget}}, eol}};
  g[sym::kStaticPrefix] = {{E{{sym::kStaticAddress}}, ws, E{{sym::kStaticMask}}}};
  g[sym::kCommentLine] = {{E{{sym::kComment}}, eol}};
  g[sym::kBlankLine] = {{E{{sym::kWs}, '?'}, E{{sym::kNewline}}}, {E{{sym::kWs}}}};
  return g;
}

bool Matches(const Production& prod, size_t pi, const std::vector<DerivationTree>& ch,
             size_t ci) {
  if (pi == prod.size()) return ci == ch.size();
  const Element& e = prod[pi];
  auto accepts = [&](size_t i) {
    return i < ch.size() && std::find(e.alternatives.begin(), e.alternatives.end(),
                                      ch[i].symbol) != e.alternatives.end();
  };
  switch (e.quantifier) {
    case '1':
      return accepts(ci) && Matches(prod, pi + 1, ch, ci + 1);
    case '?':
      return (accepts(ci) && Matches(prod, pi + 1, ch, ci + 1)) || Matches(prod, pi + 1, ch, ci);
    default: {
      size_t end = ci;
      while (accepts(end)) ++end;
      for (size_t k = end + 1; k-- > ci;) {
        if (Matches(prod, pi + 1, ch, k)) return true;
      }
      return false;
    }
  }
}

std::optional<std::string> CheckTerminal(const DerivationTree& t) {
  const std::string& s = t.symbol;
  auto all_ws = [&] {
    return !t.text.empty() &&
           std::all_of(t.text.begin(), t.text.end(), [](char c) { return c == ' ' || c == '\t'; });
  };
  if (s == sym::kWs || s == sym::kIndent) {
    if (!all_ws()) return "non-whitespace in " + s;
  } else if (s == sym::kNewline) {
    if (t.text != "\n") return std::string("bad newline terminal");
  } else if (s == sym::kComment) {
    if (t.text.empty() || t.text[0] != '!') return std::string("bad comment terminal");
  } else if (s.size() > 2 && s.front() == '\'') {
    if (s.substr(1, s.size() - 2) != t.text) return "keyword " + s + " has text " + t.text;
  } else if (s == sym::kRouterId || s == sym::kPeerAddress || s == sym::kNetworkAddress ||
             s == sym::kStaticAddress) {
    if (!ParseIpv4(t.text)) return "bad address terminal " + t.text;
  } else if (s == sym::kNetworkMask || s == sym::kStaticMask) {
    auto m = ParseIpv4(t.text);
    if (!m || !MaskLength(*m)) return "bad mask terminal " + t.text;
  } else if (s == sym::kLocalAsn || s == sym::kRemoteAsn || s == sym::kMaxPrefixLimit) {
    auto v = ParseUnsigned(t.text);
    if (!v || *v == 0) return "bad number terminal " + t.text;
  } else if (s == sym::kStaticTarget) {
    if (t.text != "Null0" && !ParseIpv4(t.text)) return "bad static target " + t.text;
  } else {
    return "unknown terminal symbol " + s;
  }
  if (t.span.length != t.text.size()) return "terminal span mismatch at " + s;
  return std::nullopt;
}

std::optional<std::string> Validate(const DerivationTree& node,
                                    const std::map<std::string_view, std::vector<Production>>& g) {
  if (node.terminal) {
    if (!node.children.empty()) return "terminal with children: " + node.symbol;
    return CheckTerminal(node);
  }
  auto it = g.find(node.symbol);
  if (it == g.end()) return "unknown nonterminal " + node.symbol;
  bool ok = std::any_of(it->second.begin(), it->second.end(),
                        [&](const Production& p) { return Matches(p, 0, node.children, 0); });
  if (!ok) return "no production of " + node.symbol + " matches its children";
  size_t cursor = node.span.offset;
  for (const auto& c : node.children) {
    if (c.span.offset != cursor) return "span gap inside " + node.symbol;
    cursor += c.span.length;
    if (auto err = Validate(c, g)) return err;
  }
  if (!node.children.empty() && cursor != node.span.offset + node.span.length) {
    return "children do not cover " + node.symbol;
  }
  return std::nullopt;
}

void AppendLeaves(const DerivationTree& t, std::string& out) {
  if (t.terminal) {
    out += t.text;
    return;
  }
  for (const auto& c : t.children) AppendLeaves(c, out);
}

}  // namespace

ParseError::ParseError(size_t line, size_t column, std::string token, const std::string& message)
    : std::runtime_error("line " + std::to_string(line) + ", column " + std::to_string(column) +
                         ": " + message + " near '" + token + "'"),
      line_(line),
      column_(column),
      token_(std::move(token)) {}

const NeighborStmt* RouterConfig::FindNeighbor(Ipv4Address peer) const {
  for (const auto& n : neighbors) {
    if (n.peer_address == peer) return &n;
  }
  return nullptr;
}

std::vector<MaxPrefixStmt> RouterConfig::max_prefix() const {
  std::vector<MaxPrefixStmt> out;
  for (const auto& n : neighbors) {
    if (n.max_prefix_limit) out.push_back({n.peer_address, *n.max_prefix_limit});
  }
  return out;
}

std::string DerivationTree::Leaves() const {
  std::string out;
  AppendLeaves(*this, out);
  return out;
}

const DerivationTree* NodeAt(const DerivationTree& tree, const TreePath& path) {
  const DerivationTree* node = &tree;
  for (size_t i : path) {
    if (i >= node->children.size()) return nullptr;
    node = &node->children[i];
  }
  return node;
}

std::optional<std::string> ValidateTree(const DerivationTree& tree) {
  static const auto grammar = BuildGrammar();
  if (tree.symbol != sym::kConfig) return std::string("root is not <config>");
  return Validate(tree, grammar);
}

ParsedConfig parse_config(std::string_view text) { return Parser(text).Run(); }

bool IsParseable(std::string_view text) {
  try {
    parse_config(text);
    return true;
  } catch (const ParseError&) {
    return false;
  }
}

std::string render_config(const RouterConfig& config) {
  std::string out = "router bgp " + std::to_string(config.local_asn) + "\n";
  out += " router-id " + config.router_id.ToString() + "\n";
  if (config.log_neighbor_changes) out += " bgp log-neighbor-changes\n";
  for (const auto& n : config.neighbors) {
    out += " neighbor " + n.peer_address.ToString() + " remote-as " +
           std::to_string(n.remote_asn) + "\n";
    if (n.max_prefix_limit) {
      out += " neighbor " + n.peer_address.ToString() + " maximum-prefix " +
             std::to_string(*n.max_prefix_limit) + "\n";
    }
  }
  for (const auto& n : config.networks) {
    out += " network " + n.prefix.address().ToString() + " mask " +
           n.prefix.DottedMask().ToString() + "\n";
  }
  if (config.address_family) {
    out += " address-family ipv4";
    if (config.address_family->unicast) out += " unicast";
    out += "\n";
    for (const auto& peer : config.address_family->activated) {
      out += "  neighbor " + peer.ToString() + " activate\n";
    }
    out += " exit-address-family\n";
  }
  for (const auto& r : config.static_routes) {
    out += "ip route " + r.prefix.address().ToString() + " " + r.prefix.DottedMask().ToString() +
           " " + (r.next_hop ? r.next_hop->ToString() : std::string("Null0")) + "\n";
  }
  return out;
}

}  // namespace routefuzz
