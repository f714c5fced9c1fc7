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

#include <benchmark/benchmark.h>

#include <fstream>
#include <sstream>

#include "routefuzz/config.h"
#include "routefuzz/mutation.h"
#include "routefuzz/oracles.h"
#include "routefuzz/rng.h"
#include "routefuzz/simulator.h"
#include "routefuzz/topology.h"

namespace routefuzz {
namespace {

Topology Tiny5() {
  std::ifstream in(std::string(ROUTEFUZZ_SOURCE_DIR) + "/topologies/tiny5.topo");
  std::ostringstream s;
  s << in.rdbuf();
  return load_topology(s.str());
}

// A ring of n routers with one chord per four nodes.
Topology Ring(int n) {
  std::ostringstream s;
  for (int i = 0; i < n; ++i) {
    s << "node N" << i << " asn " << 65000 + i << " router-id 10.255.0." << i + 1 << " owns 10."
      << i << ".0.0/16\n";
  }
  int subnet = 0;
  auto link = [&](int a, int b) {
    s << "link N" << a << " N" << b << " subnet 172.16." << subnet / 64 << "." << (subnet % 64) * 4
      << "/30\n";
    ++subnet;
  };
  for (int i = 0; i < n; ++i) link(i, (i + 1) % n);
  for (int i = 0; i + n / 2 < n; i += 4) link(i, i + n / 2);
  return load_topology(s.str());
}

void BM_ParseConfig(benchmark::State& state) {
  Network net(Tiny5());
  RouterConfig cfg = net.config("DC2");
  for (int i = 0; i < state.range(0); ++i) {
    cfg.networks.push_back({Prefix(Ipv4Address((20u << 24) | (static_cast<uint32_t>(i) << 8)), 24)});
  }
  std::string text = render_config(cfg);
  for (auto _ : state) benchmark::DoNotOptimize(parse_config(text));
  state.SetBytesProcessed(static_cast<int64_t>(state.iterations() * text.size()));
}
BENCHMARK(BM_ParseConfig)->Arg(0)->Arg(16)->Arg(256);

void BM_Converge(benchmark::State& state) {
  Topology t = state.range(0) == 5 ? Tiny5() : Ring(static_cast<int>(state.range(0)));
  for (auto _ : state) {
    Network net(t);
    benchmark::DoNotOptimize(net.converge());
  }
}
BENCHMARK(BM_Converge)->Arg(5)->Arg(15)->Arg(40);

void BM_ForwardingPath(benchmark::State& state) {
  Network net(Ring(15));
  net.converge();
  Rng rng(1);
  for (auto _ : state) {
    auto src = "N" + std::to_string(rng.Below(15));
    Ipv4Address dst((10u << 24) | (static_cast<uint32_t>(rng.Below(15)) << 16) | 0x101);
    benchmark::DoNotOptimize(net.forwarding_path(src, dst));
  }
}
BENCHMARK(BM_ForwardingPath);

void BM_SelectAndApplyMutation(benchmark::State& state) {
  Topology t = Tiny5();
  Network net(t);
  auto [result, events] = net.converge();
  RouterConfig seed = net.baseline_config("DC2");
  ParsedConfig current = parse_config(net.config_text("DC2"));
  FieldPools pools = FieldPools::From(t, seed);
  Feedback fb;
  fb.rib = net.snapshot_rib("DC2");
  for (const auto& e : fb.rib.entries) {
    if (e.best) fb.announced_prefixes.insert(e.prefix);
  }
  MutationContext ctx;
  ctx.current = &current;
  ctx.seed = &seed;
  ctx.pools = &pools;
  Rng rng(7);
  for (auto _ : state) {
    try {
      MutationPlan plan = select_mutation(fb, FuzzState::kS0NormalRun, rng, ctx);
      benchmark::DoNotOptimize(apply_plan(current, plan));
    } catch (const MutationError&) {
    }
  }
}
BENCHMARK(BM_SelectAndApplyMutation);

void BM_RandomMutate(benchmark::State& state) {
  Network net(Tiny5());
  std::string text = net.config_text("DC2");
  Rng rng(3);
  for (auto _ : state) benchmark::DoNotOptimize(random_mutate(text, rng));
}
BENCHMARK(BM_RandomMutate);

void BM_Oracles(benchmark::State& state) {
  Network net(Tiny5());
  auto [result, events] = net.converge();
  BaselineProfile baseline = BaselineProfile::Capture(net, result);
  RouterConfig cfg = net.config("DC2");
  cfg.networks.push_back({parse_prefix("208.65.153.0/24")});
  cfg.static_routes.push_back({parse_prefix("208.65.153.0/24"), std::nullopt});
  std::string text = render_config(cfg);
  size_t start = net.event_log().size();
  net.apply_config("DC2", text);
  auto [after, slice] = net.converge();
  IterationArtifacts artifacts = IterationArtifacts::Capture(net, "DC2", text, after, start);
  for (auto _ : state) benchmark::DoNotOptimize(run_all_oracles(baseline, artifacts));
}
BENCHMARK(BM_Oracles);

}  // namespace
}  // namespace routefuzz

BENCHMARK_MAIN();
