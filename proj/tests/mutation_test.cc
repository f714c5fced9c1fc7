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

#include <gtest/gtest.h>

#include <map>

#include "testing/test_util.h"

namespace routefuzz {
namespace {

using testing::CorpusFiles;
using testing::kSeedConfig;
using testing::ReadFile;
using testing::Tiny5;

Ipv4Address Ip(std::string_view s) { return *ParseIpv4(s); }

RibEntry Learned(std::string_view prefix, std::string_view next_hop, std::vector<Asn> path) {
  RibEntry e;
  e.prefix = parse_prefix(prefix);
  e.next_hop = Ip(next_hop);
  e.as_path = std::move(path);
  e.best = true;
  e.peer_router_id = Ip(next_hop);
  return e;
}

RibEntry Local(std::string_view prefix) {
  RibEntry e;
  e.prefix = parse_prefix(prefix);
  e.weight = kLocalWeight;
  e.best = true;
  return e;
}

Feedback RemoteSlash22() {
  Feedback f;
  f.rib.entries = {Local("100.64.0.0/22"),
                   Learned("208.65.152.0/22", "192.168.1.2", {40000, 65100})};
  f.announced_prefixes = {parse_prefix("100.64.0.0/22"), parse_prefix("208.65.152.0/22")};
  return f;
}

FieldPools SeedConfigPools() {
  FieldPools pools;
  pools.addresses = {Ip("192.168.1.2"), Ip("192.168.3.2"), Ip("10.0.0.1")};
  pools.prefixes = {parse_prefix("208.65.152.0/22"), parse_prefix("10.0.0.0/16")};
  pools.asns = {40000, 45000, 50000};
  return pools;
}

std::vector<ParsedConfig> Corpus() {
  std::vector<ParsedConfig> out;
  for (const auto& path : CorpusFiles()) out.push_back(parse_config(ReadFile(path)));
  return out;
}

TEST(MutateFieldTest, RemoteAsnChangesOneNeighbor) {
  ParsedConfig seed = parse_config(kSeedConfig);
  Rng rng(1);
  FieldPools pools = SeedConfigPools();
  int seen = 0;
  for (int i = 0; i < 200 && seen < 20; ++i) {
    MutationPlan plan = PlanFieldMutation(seed, rng, pools);
    if (plan.field != FieldKind::kRemoteAsn) continue;
    ++seen;
    ParsedConfig out = apply_plan(seed, plan);
    int changed = 0;
    for (size_t n = 0; n < 2; ++n) {
      EXPECT_EQ(out.config.neighbors[n].peer_address, seed.config.neighbors[n].peer_address);
      changed += out.config.neighbors[n].remote_asn != seed.config.neighbors[n].remote_asn;
    }
    EXPECT_EQ(changed, 1);
    EXPECT_EQ(out.config.router_id, seed.config.router_id);
    EXPECT_EQ(out.tree.Leaves().find("remote-as " + plan.replacement) != std::string::npos, true);
  }
  EXPECT_EQ(seen, 20);
}

TEST(MutateFieldTest, SingleFieldIsAlwaysChosen) {
  ParsedConfig seed = parse_config("router bgp 1\n router-id 1.1.1.1\n");
  Rng rng(2);
  for (int i = 0; i < 100; ++i) {
    DerivationTree out = mutate_field(seed.tree, rng, SeedConfigPools());
    ParsedConfig parsed = parse_config(out.Leaves());
    EXPECT_NE(parsed.config.router_id, seed.config.router_id);
    EXPECT_EQ(parsed.config.local_asn, 1u);
  }
}

TEST(MutateFieldTest, PeerAddressRenamesReferences) {
  ParsedConfig seed = parse_config(
      "router bgp 1\n router-id 1.1.1.1\n neighbor 10.0.0.2 remote-as 2\n"
      " neighbor 10.0.0.2 maximum-prefix 3\n address-family ipv4\n  neighbor 10.0.0.2 activate\n"
      " exit-address-family\n");
  Rng rng(3);
  int seen = 0;
  for (int i = 0; i < 300; ++i) {
    MutationPlan plan = PlanFieldMutation(seed, rng, SeedConfigPools());
    if (plan.field != FieldKind::kPeerAddress) continue;
    ++seen;
    ParsedConfig out = apply_plan(seed, plan);
    Ipv4Address renamed = Ip(plan.replacement);
    ASSERT_EQ(out.config.neighbors.size(), 1u);
    EXPECT_EQ(out.config.neighbors[0].peer_address, renamed);
    EXPECT_EQ(out.config.neighbors[0].max_prefix_limit, 3u);
    EXPECT_EQ(out.config.address_family->activated, std::vector<Ipv4Address>{renamed});
  }
  EXPECT_GT(seen, 0);
}

TEST(MutateFieldTest, ShortPoolPrefixesStayInRange) {
  ParsedConfig seed = parse_config(kSeedConfig + std::string(" network 0.0.0.0 mask 0.0.0.0\n"));
  FieldPools pools;
  pools.prefixes = {parse_prefix("0.0.0.0/0"), parse_prefix("32.0.0.0/3")};
  Rng rng(5);
  for (int i = 0; i < 500; ++i) {
    MutationPlan plan = PlanFieldMutation(seed, rng, pools);
    EXPECT_EQ(ValidateTree(apply_plan(seed, plan).tree), std::nullopt);
  }
}

TEST(MutateFieldTest, NoFieldThrows) {
  Rng rng(4);
  ParsedConfig c = parse_config(kSeedConfig);
  DerivationTree empty = c.tree;
  // A tree whose block has only its header has no mutable field.
  auto& block = empty.children[0];
  block.children.resize(1);
  ParsedConfig stub{c.config, empty};
  EXPECT_THROW(PlanFieldMutation(stub, rng, SeedConfigPools()), NoMutableField);
}

// Share of each field kind expected when a kind is drawn uniformly among the
// kinds present in each mutated config.
std::map<FieldKind, double> ExpectedShares(const std::vector<const ParsedConfig*>& inputs) {
  std::map<FieldKind, double> expected;
  for (const ParsedConfig* c : inputs) {
    std::set<FieldKind> present = {FieldKind::kRouterId};
    if (!c->config.neighbors.empty()) {
      present.insert(FieldKind::kPeerAddress);
      present.insert(FieldKind::kRemoteAsn);
    }
    if (!c->config.networks.empty()) present.insert(FieldKind::kNetworkPrefix);
    if (!c->config.max_prefix().empty()) present.insert(FieldKind::kMaxPrefixLimit);
    for (FieldKind k : present) expected[k] += 1.0 / present.size() / inputs.size();
  }
  return expected;
}

void CheckFieldDistribution(int n, uint64_t seed, double tolerance, bool relative) {
  auto corpus = Corpus();
  Rng rng(seed);
  FieldPools pools = SeedConfigPools();
  std::map<FieldKind, int> tally;
  std::vector<const ParsedConfig*> inputs;
  for (int i = 0; i < n; ++i) {
    const ParsedConfig& c = corpus[static_cast<size_t>(i) % corpus.size()];
    inputs.push_back(&c);
    MutationPlan plan = PlanFieldMutation(c, rng, pools);
    ParsedConfig out = apply_plan(c, plan);  // throws if invalid
    EXPECT_NE(out.config, c.config) << plan.Describe();
    ++tally[*plan.field];
  }
  for (const auto& [kind, share] : ExpectedShares(inputs)) {
    double observed = static_cast<double>(tally[kind]) / n;
    double bound = relative ? tolerance * share : tolerance;
    EXPECT_NEAR(observed, share, bound) << FieldKindName(kind);
  }
}

TEST(MutateFieldTest, CorpusValidityAndUniformKinds) {
  CheckFieldDistribution(1000, 5, 0.10, /*relative=*/false);
}

TEST(MutateFieldTest, KindsWithinTenPercentRelativeAtScale) {
  CheckFieldDistribution(10000, 6, 0.10, /*relative=*/true);
}

TEST(InsertStatementTest, MaxPrefixIntoSeedConfig) {
  ParsedConfig seed = parse_config(kSeedConfig);
  Rng rng(7);
  Statement stmt = MaxPrefixStmt{Ip("192.168.1.2"), 1};
  DerivationTree out = insert_statement(seed.tree, stmt, rng);
  ParsedConfig parsed = parse_config(out.Leaves());
  EXPECT_EQ(parsed.config.FindNeighbor(Ip("192.168.1.2"))->max_prefix_limit, 1u);
  EXPECT_NE(out.Leaves().find(" neighbor 192.168.1.2 maximum-prefix 1\n"), std::string::npos);
  EXPECT_THROW(insert_statement(out, stmt, rng), DuplicateStatement);
}

TEST(InsertStatementTest, MaxPrefixReplacesADifferentLimit) {
  ParsedConfig seed = parse_config(kSeedConfig);
  Rng rng(8);
  DerivationTree once = insert_statement(seed.tree, MaxPrefixStmt{Ip("192.168.1.2"), 7}, rng);
  DerivationTree twice = insert_statement(once, MaxPrefixStmt{Ip("192.168.1.2"), 2}, rng);
  ParsedConfig parsed = parse_config(twice.Leaves());
  EXPECT_EQ(parsed.config.FindNeighbor(Ip("192.168.1.2"))->max_prefix_limit, 2u);
  EXPECT_THROW(insert_statement(seed.tree, MaxPrefixStmt{Ip("9.9.9.9"), 1}, rng),
               std::invalid_argument);
}

TEST(InsertStatementTest, NetworkLineRendersExactly) {
  ParsedConfig seed = parse_config(kSeedConfig);
  Rng rng(9);
  DerivationTree out =
      insert_statement(seed.tree, NetworkStmt{parse_prefix("208.65.152.0/24")}, rng);
  EXPECT_NE(out.Leaves().find("network 208.65.152.0 mask 255.255.255.0\n"), std::string::npos);
  EXPECT_THROW(insert_statement(out, NetworkStmt{parse_prefix("208.65.152.0/24")}, rng),
               DuplicateStatement);
}

TEST(InsertStatementTest, StaticRouteWithoutTrailingNewline) {
  std::string text = kSeedConfig;
  text.pop_back();
  ParsedConfig seed = parse_config(text);
  Rng rng(10);
  for (int i = 0; i < 50; ++i) {
    Statement s = StaticRouteStmt{parse_prefix("10.9.0.0/16"), std::nullopt};
    ParsedConfig out = parse_config(insert_statement(seed.tree, s, rng).Leaves());
    ASSERT_EQ(out.config.static_routes.size(), 1u);
    EXPECT_TRUE(out.config.static_routes[0].IsNullSink());
  }
}

TEST(InsertStatementTest, EveryPositionInEveryCorpusFileParses) {
  Rng rng(11);
  int inserted = 0;
  for (const ParsedConfig& c : Corpus()) {
    for (int i = 0; i < 40; ++i) {
      std::vector<Statement> choices = {
          NetworkStmt{Truncate(Ipv4Address(static_cast<uint32_t>(rng.Next())), 24)},
          StaticRouteStmt{Truncate(Ipv4Address(static_cast<uint32_t>(rng.Next())), 20),
                          std::nullopt},
          StaticRouteStmt{Truncate(Ipv4Address(static_cast<uint32_t>(rng.Next())), 16),
                          Ip("192.0.2.1")}};
      for (const auto& n : c.config.neighbors) {
        choices.push_back(MaxPrefixStmt{n.peer_address, static_cast<uint32_t>(1 + i)});
      }
      Statement s = rng.Pick(choices);
      MutationPlan plan;
      try {
        plan = PlanInsertion(c, {s}, rng, "test");
      } catch (const DuplicateStatement&) {
        continue;
      }
      ParsedConfig out = apply_plan(c, plan);
      EXPECT_EQ(ValidateTree(out.tree), std::nullopt);
      ++inserted;
    }
  }
  EXPECT_GT(inserted, 500);
}

TEST(SynthesizeTest, SubPrefixOfRemoteSlash22) {
  Rng rng(12);
  auto stmts = synthesize_subprefix(RemoteSlash22(), rng);
  ASSERT_EQ(stmts.size(), 2u);
  Prefix child = std::get<NetworkStmt>(stmts[0]).prefix;
  EXPECT_TRUE(prefix_contains(parse_prefix("208.65.152.0/22"), child));
  EXPECT_TRUE(child.length() == 23 || child.length() == 24);
  EXPECT_EQ(std::get<StaticRouteStmt>(stmts[1]), (StaticRouteStmt{child, std::nullopt}));
}

TEST(SynthesizeTest, NoCandidates) {
  Rng rng(13);
  Feedback local_only;
  local_only.rib.entries = {Local("100.64.0.0/22")};
  EXPECT_THROW(synthesize_subprefix(local_only, rng), NoCandidatePrefix);
  Feedback hosts_only;
  hosts_only.rib.entries = {Learned("198.51.100.7/32", "10.0.0.1", {1})};
  EXPECT_THROW(synthesize_subprefix(hosts_only, rng), NoCandidatePrefix);
  EXPECT_THROW(synthesize_subprefix(Feedback{}, rng), NoCandidatePrefix);
}

TEST(SynthesizeTest, ThousandSynthesesAreStrictSubPrefixes) {
  Rng rng(14);
  Feedback f = RemoteSlash22();
  f.rib.entries.push_back(Learned("0.0.0.0/0", "192.168.3.2", {50000}));
  f.rib.entries.push_back(Learned("203.0.113.128/31", "192.168.3.2", {50000, 7}));
  f.rib.entries.push_back(Learned("198.51.100.0/24", "192.168.3.2", {50000}));
  auto remotes = f.RemotePrefixes();
  std::map<int, int> offsets;
  for (int i = 0; i < 1000; ++i) {
    auto stmts = synthesize_subprefix(f, rng);
    Prefix child = std::get<NetworkStmt>(stmts[0]).prefix;
    EXPECT_EQ(std::get<StaticRouteStmt>(stmts[1]).prefix, child);
    EXPECT_TRUE(std::get<StaticRouteStmt>(stmts[1]).IsNullSink());
    int parents = 0;
    for (const Prefix& p : remotes) {
      // Range arithmetic, independent of the library's containment helper.
      uint64_t lo = p.address().value();
      uint64_t hi = lo + (uint64_t{1} << (32 - p.length())) - 1;
      uint64_t clo = child.address().value();
      uint64_t chi = clo + (uint64_t{1} << (32 - child.length())) - 1;
      bool contained = lo <= clo && chi <= hi;
      EXPECT_EQ(contained, prefix_contains(p, child));
      if (contained && child != p && child.length() - p.length() <= 2) {
        ++parents;
        ++offsets[child.length() - p.length()];
      }
    }
    EXPECT_GE(parents, 1) << child.ToString();
  }
  EXPECT_GT(offsets[1], 0);
  EXPECT_GT(offsets[2], 0);
}

TEST(SynthesizeTest, SynthesizedPrefixIsOriginatedByTheTarget) {
  Topology topo = Tiny5();
  Network net(topo);
  net.converge();
  Feedback f;
  f.rib = net.snapshot_rib("DC2");
  Rng rng(15);
  for (int i = 0; i < 20; ++i) {
    auto stmts = synthesize_subprefix(f, rng);
    ParsedConfig current = parse_config(net.config_text("DC2"));
    ParsedConfig out = apply_plan(current, PlanInsertion(current, stmts, rng, "synth"));
    Network trial(topo);
    trial.apply_config("DC2", out.tree.Leaves());
    auto originated = trial.originated("DC2");
    Prefix child = std::get<NetworkStmt>(stmts[0]).prefix;
    EXPECT_NE(std::find(originated.begin(), originated.end(), child), originated.end());
  }
}

TEST(RandomMutateTest, CorruptsSomeOutputs) {
  Rng rng(16);
  int invalid = 0;
  for (int i = 0; i < 100; ++i) invalid += !IsParseable(random_mutate(kSeedConfig, rng));
  EXPECT_GE(invalid, 1);
  EXPECT_EQ(random_mutate(kSeedConfig, rng, 0), kSeedConfig);
  EXPECT_EQ(random_mutate("", rng, 0), "");
  EXPECT_FALSE(random_mutate("", rng).empty());
}

TEST(RandomMutateTest, ValidityBelowGrammarMutator) {
  Rng rng(17);
  int valid = 0;
  for (int i = 0; i < 1000; ++i) valid += IsParseable(random_mutate(kSeedConfig, rng));
  EXPECT_LT(valid, 1000);
}

TEST(RandomMutateTest, Deterministic) {
  Rng a(18);
  Rng b(18);
  for (int i = 0; i < 50; ++i) EXPECT_EQ(random_mutate(kSeedConfig, a), random_mutate(kSeedConfig, b));
}

struct SelectFixture {
  ParsedConfig current = parse_config(kSeedConfig);
  RouterConfig seed = current.config;
  FieldPools pools = SeedConfigPools();
  MutationContext Context() const { return {&current, &seed, &pools, {}, {1, 2}}; }
};

TEST(SelectMutationTest, SynthesisWeightedUpWithRemotePrefix) {
  SelectFixture fx;
  Feedback f = RemoteSlash22();
  Rng rng(19);
  int synth = 0;
  const int n = 10000;
  for (int i = 0; i < n; ++i) {
    synth += select_mutation(f, FuzzState::kS1Intermediate, rng, fx.Context()).operation ==
             "synthesize-subprefix";
  }
  EXPECT_GE(static_cast<double>(synth) / n, 0.3);
}

TEST(SelectMutationTest, EmptyFeedbackOnlyFieldOrInsertion) {
  SelectFixture fx;
  Rng rng(20);
  std::map<std::string, int> ops;
  for (int i = 0; i < 2000; ++i) {
    MutationPlan plan = select_mutation(Feedback{}, FuzzState::kS0NormalRun, rng, fx.Context());
    EXPECT_TRUE(plan.kind == MutationKind::kFieldMutation ||
                plan.kind == MutationKind::kStatementInsertion);
    ++ops[plan.operation];
  }
  EXPECT_EQ(ops.count("synthesize-subprefix"), 0u);
  EXPECT_GT(ops["insert-max-prefix"], 0);
  EXPECT_GT(ops["mutate-field"], 0);
}

TEST(SelectMutationTest, MaxPrefixLimitBoundedByLearnedCount) {
  SelectFixture fx;
  Feedback f;
  f.rib.entries = {Learned("10.1.0.0/16", "192.168.1.2", {40000}),
                   Learned("10.2.0.0/16", "192.168.1.2", {40000, 7}),
                   Learned("10.3.0.0/16", "192.168.3.2", {50000})};
  Rng rng(21);
  std::set<uint32_t> limits_a;
  for (int i = 0; i < 3000; ++i) {
    MutationPlan plan = select_mutation(f, FuzzState::kS1Intermediate, rng, fx.Context());
    if (plan.operation != "insert-max-prefix") continue;
    const auto& m = std::get<MaxPrefixStmt>(plan.statements.at(0));
    if (m.peer_address == Ip("192.168.1.2")) {
      limits_a.insert(m.limit);
    } else {
      EXPECT_LE(m.limit, 2u);
    }
  }
  EXPECT_EQ(limits_a, (std::set<uint32_t>{1, 2, 3, 4}));
}

TEST(SelectMutationTest, DeterministicForFixedInputs) {
  SelectFixture fx;
  Feedback f = RemoteSlash22();
  for (uint64_t seed = 0; seed < 50; ++seed) {
    Rng a(seed);
    Rng b(seed);
    EXPECT_EQ(select_mutation(f, FuzzState::kS0NormalRun, a, fx.Context()),
              select_mutation(f, FuzzState::kS0NormalRun, b, fx.Context()));
  }
  Rng rng(1);
  EXPECT_THROW(select_mutation(f, FuzzState::kS2ErrorDetected, rng, fx.Context()),
               std::logic_error);
}

TEST(SelectMutationTest, RandomWalkStaysValidAndKeepsSeedStatements) {
  SelectFixture fx;
  Feedback f = RemoteSlash22();
  Rng rng(22);
  ParsedConfig current = fx.current;
  std::map<MutationKind, int> kinds;
  for (int step = 0; step < 3000; ++step) {
    if (step % 300 == 0) current = fx.current;
    MutationContext ctx{&current, &fx.seed, &fx.pools, {}, {1, 2}};
    MutationPlan plan = select_mutation(f, FuzzState::kS1Intermediate, rng, ctx);
    ParsedConfig next = apply_plan(current, plan);
    ASSERT_EQ(ValidateTree(next.tree), std::nullopt);
    ++kinds[plan.kind];
    if (plan.kind == MutationKind::kStatementDeletion) {
      // Whatever vanished was not part of the seed.
      for (const auto& n : fx.seed.networks) {
        if (std::count(current.config.networks.begin(), current.config.networks.end(), n)) {
          EXPECT_TRUE(std::count(next.config.networks.begin(), next.config.networks.end(), n));
        }
      }
      for (const auto& n : fx.seed.neighbors) {
        const NeighborStmt* before = current.config.FindNeighbor(n.peer_address);
        if (before && before->remote_asn == n.remote_asn) {
          EXPECT_TRUE(next.config.FindNeighbor(n.peer_address));
        }
      }
    }
    current = std::move(next);
  }
  EXPECT_GT(kinds[MutationKind::kFieldMutation], 0);
  EXPECT_GT(kinds[MutationKind::kStatementInsertion], 0);
  EXPECT_GT(kinds[MutationKind::kStatementDeletion], 0);
}

TEST(FeedbackTest, LearnedAndRemote) {
  Feedback f = RemoteSlash22();
  EXPECT_EQ(f.LearnedFrom(Ip("192.168.1.2")), 1u);
  EXPECT_EQ(f.LearnedFrom(Ip("192.168.3.2")), 0u);
  EXPECT_EQ(f.RemotePrefixes(), std::vector<Prefix>{parse_prefix("208.65.152.0/22")});
}

TEST(FieldPoolsTest, FromTopology) {
  Topology t = Tiny5();
  FieldPools pools = FieldPools::From(t, BaselineConfig(t, "DC2"));
  EXPECT_EQ(pools.asns.size(), 5u);
  EXPECT_TRUE(std::count(pools.prefixes.begin(), pools.prefixes.end(),
                         parse_prefix("208.65.152.0/22")));
  EXPECT_TRUE(std::is_sorted(pools.addresses.begin(), pools.addresses.end()));
}

TEST(PlanTest, DescribeNamesTheEvent) {
  MutationPlan plan;
  plan.kind = MutationKind::kStatementInsertion;
  plan.operation = "synthesize-subprefix";
  plan.statements = {NetworkStmt{parse_prefix("208.65.153.0/24")},
                     StaticRouteStmt{parse_prefix("208.65.153.0/24"), std::nullopt}};
  EXPECT_EQ(plan.Describe(),
            "E2 synthesize-subprefix: network 208.65.153.0 mask 255.255.255.0 | ip route "
            "208.65.153.0 255.255.255.0 Null0");
}

}  // namespace
}  // namespace routefuzz
