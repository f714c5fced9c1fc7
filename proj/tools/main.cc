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

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "routefuzz/config.h"
#include "routefuzz/fuzz.h"
#include "routefuzz/topology.h"
#include "routefuzz/version.h"
#include "routefuzz/zoo.h"

namespace fs = std::filesystem;
using namespace routefuzz;

namespace {

constexpr int kOk = 0;
constexpr int kSetupError = 1;
constexpr int kInvalidInvocation = 2;
constexpr int kCheckFailed = 3;

class Usage : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

std::string Slurp(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Usage("cannot read " + path.string());
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

void Spit(const fs::path& path, std::string_view text) {
  std::ofstream out(path, std::ios::binary);
  out << text;
  if (!out) throw Usage("cannot write " + path.string());
}

struct RunOptions {
  fs::path config;
  std::optional<uint64_t> seed;
  std::optional<uint64_t> budget_iters;
  std::optional<double> budget_seconds;
  std::optional<int> trials;
  std::optional<std::string> mutator;
  int jobs = 1;
  fs::path out_dir = "routefuzz-out";
  bool fail_on_finding = false;
};

std::string Manifest(const CampaignConfig& c, const std::string& topology_hash) {
  std::ostringstream s;
  s << "version: " << kVersion << "\n";
  s << "topology_hash: " << topology_hash << "\n";
  s << "asn_scheme: as written in the topology file\n";
  s << "layout:\n";
  s << "  manifest: manifest.yaml\n";
  s << "  report: report.json\n";
  s << "  summary: summary.txt\n";
  s << "  archives: archive/trial-<t>/iter-<i>-finding-<k>/\n";
  s << "campaign:\n";
  std::istringstream yaml(c.ToYaml());
  for (std::string line; std::getline(yaml, line);) s << "  " << line << "\n";
  return s.str();
}

int CmdRun(const RunOptions& o) {
  CampaignConfig c = CampaignConfig::Load(o.config);
  if (o.seed) c.seed = *o.seed;
  if (o.budget_iters) c.budget_iters = *o.budget_iters;
  if (o.budget_seconds) c.budget_seconds = *o.budget_seconds;
  if (o.trials) c.trials = *o.trials;
  if (o.mutator) c.mutator = *ParseMutator(*o.mutator);
  if (c.trials < 1) throw Usage("--trials must be at least 1");
  if (c.budget_seconds < 0) throw Usage("--budget-seconds must be non-negative");

  std::string topo_text;
  try {
    topo_text = Slurp(c.topology);
  } catch (const Usage&) {
    throw Usage("topology file not found: " + c.topology.string());
  }
  Topology topology;
  try {
    topology = load_topology(topo_text);
  } catch (const TopologyError& e) {
    throw SetupError(c.topology.string() + ": " + e.what());
  }
  for (const auto& w : topology.warnings) std::cerr << "warning: " << w << "\n";

  std::error_code ec;
  fs::create_directories(o.out_dir, ec);
  if (ec) throw Usage("cannot create " + o.out_dir.string() + ": " + ec.message());
  Spit(o.out_dir / "manifest.yaml", Manifest(c, Fnv1a(topology.ToText())));

  CampaignReport report = run_campaign(c, o.jobs, ArchiveOptions{o.out_dir / "archive"});
  Spit(o.out_dir / "report.json", report.ToJson());
  Spit(o.out_dir / "summary.txt", report.Summary());
  for (const auto& t : report.trials) {
    for (const auto& w : t.warnings) std::cerr << "warning: trial " << t.trial << ": " << w << "\n";
  }
  std::cout << report.Summary();
  std::cout << "\nreport written to " << o.out_dir.string() << "\n";

  bool any = false;
  for (const auto& t : report.trials) any = any || !t.first_detection.empty();
  return o.fail_on_finding && any ? kCheckFailed : kOk;
}

int CmdReplay(const fs::path& dir) {
  ReplayResult r = replay_archive(dir);
  std::cout << r.report.ToJson() << "\n";
  std::cout << "archived:";
  for (const auto& [c, k] : r.metadata.iteration_findings) std::cout << " " << BugClassName(c) << "(" << k << ")";
  std::cout << "\nreplayed:";
  for (const auto& [c, k] : r.report.Keys()) std::cout << " " << BugClassName(c) << "(" << k << ")";
  std::cout << "\n" << (r.match ? "MATCH" : "MISMATCH") << "\n";
  return r.match ? kOk : kCheckFailed;
}

int CmdImportZoo(const fs::path& input, const fs::path& output, const ZooOptions& options) {
  std::string graphml = Slurp(input);
  ZooImport z;
  try {
    z = import_topology_zoo(graphml, options);
  } catch (const ZooError& e) {
    throw SetupError(input.string() + ": " + e.what());
  }
  for (const auto& w : z.warnings) std::cerr << "warning: " << w << "\n";
  if (output.empty()) {
    std::cout << z.text;
  } else {
    Spit(output, z.text);
    std::cerr << "wrote " << z.topology.nodes.size() << " routers and " << z.topology.links.size()
              << " links to " << output.string() << "\n";
  }
  return kOk;
}

int CmdValidate(const fs::path& path, std::string kind) {
  std::string text = Slurp(path);
  if (kind == "auto") {
    std::string ext = path.extension().string();
    kind = ext == ".topo" ? "topology" : (ext == ".yaml" || ext == ".yml") ? "campaign" : "config";
  }
  if (kind == "topology") {
    Topology t;
    try {
      t = load_topology(text);
    } catch (const TopologyError& e) {
      std::cerr << path.string() << ": " << e.what() << "\n";
      return kSetupError;
    }
    for (const auto& w : t.warnings) std::cerr << "warning: " << w << "\n";
    std::cout << "ok: topology with " << t.nodes.size() << " routers and " << t.links.size()
              << " links\n";
  } else if (kind == "campaign") {
    CampaignConfig c = CampaignConfig::FromYaml(text, path.parent_path());
    std::string topo = Slurp(c.topology);
    try {
      Topology t = load_topology(topo);
      if (!t.Find(c.target)) throw SetupError("target '" + c.target + "' is not in the topology");
    } catch (const TopologyError& e) {
      throw SetupError(c.topology.string() + ": " + e.what());
    }
    std::cout << "ok: campaign on " << c.topology.string() << ", target " << c.target << "\n";
  } else {
    try {
      ParsedConfig p = parse_config(text);
      std::cout << "ok: router bgp " << p.config.local_asn << " with "
                << p.config.neighbors.size() << " neighbors\n";
    } catch (const ParseError& e) {
      std::cerr << path.string() << ": " << e.what() << "\n";
      return kSetupError;
    }
  }
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Grammar-aware BGP configuration fuzzer", "routefuzz"};
  app.set_version_flag("--version", std::string(kVersion));
  app.require_subcommand(1);

  RunOptions run;
  auto* run_cmd = app.add_subcommand("run", "Run a fuzzing campaign");
  run_cmd->add_option("--config", run.config, "Campaign file (YAML)")->required();
  run_cmd->add_option("--seed", run.seed, "Override the campaign seed");
  run_cmd->add_option("--budget-iters", run.budget_iters, "Iterations per trial");
  run_cmd->add_option("--budget-seconds", run.budget_seconds, "Wall-clock cap per trial");
  run_cmd->add_option("--trials", run.trials, "Number of trials");
  run_cmd->add_option("--mutator", run.mutator, "Mutator")
      ->check(CLI::IsMember({"grammar", "random"}));
  run_cmd->add_option("--jobs", run.jobs, "Trials run in parallel")->check(CLI::PositiveNumber);
  run_cmd->add_option("--out-dir", run.out_dir, "Report directory")
      ->capture_default_str();
  run_cmd->add_flag("--fail-on-finding", run.fail_on_finding,
                    "Exit with status 3 when any finding is reported");

  fs::path archive;
  auto* replay_cmd = app.add_subcommand("replay", "Replay an archived finding");
  replay_cmd->add_option("archive", archive, "Finding directory")->required();

  fs::path graphml;
  fs::path output;
  ZooOptions zoo;
  std::string owned_supernet = zoo.owned_supernet.ToString();
  std::string link_supernet = zoo.link_supernet.ToString();
  auto* zoo_cmd = app.add_subcommand("import-zoo", "Convert a Topology Zoo GraphML file");
  zoo_cmd->add_option("graphml", graphml, "GraphML input")->required();
  zoo_cmd->add_option("-o,--output", output, "Topology file to write (default stdout)");
  zoo_cmd->add_option("--base-asn", zoo.base_asn, "First synthesized ASN")
      ->capture_default_str();
  zoo_cmd->add_option("--owned-supernet", owned_supernet, "Pool for owned /22 blocks")
      ->capture_default_str();
  zoo_cmd->add_option("--link-supernet", link_supernet, "Pool for link /30 subnets")
      ->capture_default_str();

  fs::path validate_path;
  std::string validate_kind = "auto";
  auto* validate_cmd = app.add_subcommand("validate", "Check a router config, topology or campaign");
  validate_cmd->add_option("file", validate_path, "File to check")->required();
  validate_cmd->add_option("--kind", validate_kind, "config, topology, campaign or auto")
      ->capture_default_str()
      ->check(CLI::IsMember({"auto", "config", "topology", "campaign"}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? kOk : kInvalidInvocation;
  }

  try {
    if (*run_cmd) return CmdRun(run);
    if (*replay_cmd) return CmdReplay(archive);
    if (*zoo_cmd) {
      try {
        zoo.owned_supernet = parse_prefix(owned_supernet);
        zoo.link_supernet = parse_prefix(link_supernet);
      } catch (const PrefixError& e) {
        throw Usage(e.what());
      }
      return CmdImportZoo(graphml, output, zoo);
    }
    if (*validate_cmd) return CmdValidate(validate_path, validate_kind);
  } catch (const Usage& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInvalidInvocation;
  } catch (const CampaignError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInvalidInvocation;
  } catch (const SetupError& e) {
    std::cerr << "setup error: " << e.what() << "\n";
    return kSetupError;
  } catch (const ArchiveError& e) {
    std::cerr << "corrupt archive: " << e.what() << "\n";
    return kSetupError;
  } catch (const std::exception& e) {
    std::cerr << "setup error: " << e.what() << "\n";
    return kSetupError;
  }
  return kInvalidInvocation;
}
