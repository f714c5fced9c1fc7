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

#include "routefuzz/fuzz.h"

#include <yaml-cpp/yaml.h>

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cstdio>
#include <fstream>
#include <mutex>
#include <sstream>
#include <thread>

#include "json.hpp"

namespace routefuzz {
namespace {

namespace fs = std::filesystem;
using nlohmann::ordered_json;

std::string ReadText(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ArchiveError("cannot read " + path.string());
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

void WriteText(const fs::path& path, std::string_view text) {
  std::ofstream out(path, std::ios::binary);
  out << text;
  if (!out) throw std::runtime_error("cannot write " + path.string());
}

template <typename T>
T Scalar(const YAML::Node& node, const char* key) {
  try {
    return node.as<T>();
  } catch (const YAML::Exception&) {
    throw CampaignError(std::string("bad value for '") + key + "'");
  }
}

std::string Fixed(double v, int digits) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", digits, v);
  return buf;
}

std::string Pad(std::string s, size_t width) {
  if (s.size() < width) s.append(width - s.size(), ' ');
  return s;
}

std::string_view PeerOf(const NetworkEvent& e) {
  if (const auto* u = std::get_if<event::SessionUp>(&e.payload)) return u->peer;
  if (const auto* d = std::get_if<event::SessionDown>(&e.payload)) return d->peer;
  if (const auto* n = std::get_if<event::Notification>(&e.payload)) return n->peer;
  if (const auto* a = std::get_if<event::PrefixAnnounced>(&e.payload)) return a->from;
  if (const auto* w = std::get_if<event::PrefixWithdrawn>(&e.payload)) return w->from;
  return {};
}

bool InvolvesLink(const NetworkEvent& e, std::string_view target, std::string_view interface) {
  std::string_view peer = PeerOf(e);
  if (peer.empty()) return e.node == target;
  return (e.node == target && peer == interface) || (e.node == interface && peer == target);
}

constexpr std::string_view kBugNames[] = {"", "InvalidConfig",
                                          "SessionReset (max-prefix)",
                                          "SubPrefixHijack + Blackhole/PathAnomaly"};

}  // namespace

std::string_view MutatorName(MutatorKind kind) {
  return kind == MutatorKind::kGrammar ? "grammar" : "random";
}

std::optional<MutatorKind> ParseMutator(std::string_view name) {
  if (name == "grammar") return MutatorKind::kGrammar;
  if (name == "random") return MutatorKind::kRandom;
  return std::nullopt;
}

CampaignConfig CampaignConfig::FromYaml(std::string_view text, const fs::path& base_dir) {
  YAML::Node root;
  try {
    root = YAML::Load(std::string(text));
  } catch (const YAML::Exception& e) {
    throw CampaignError(std::string("campaign file: ") + e.what());
  }
  if (!root.IsMap()) throw CampaignError("campaign file must be a mapping");
  CampaignConfig c;
  bool have_topology = false;
  for (const auto& kv : root) {
    std::string key = kv.first.as<std::string>();
    const YAML::Node& v = kv.second;
    if (key == "topology") {
      c.topology = Scalar<std::string>(v, "topology");
      if (c.topology.is_relative() && !base_dir.empty()) c.topology = base_dir / c.topology;
      have_topology = true;
    } else if (key == "target") {
      c.target = Scalar<std::string>(v, "target");
    } else if (key == "interface") {
      c.interface = Scalar<std::string>(v, "interface");
    } else if (key == "budget_iters") {
      c.budget_iters = Scalar<uint64_t>(v, "budget_iters");
    } else if (key == "budget_seconds") {
      c.budget_seconds = Scalar<double>(v, "budget_seconds");
    } else if (key == "trials") {
      c.trials = Scalar<int>(v, "trials");
    } else if (key == "seed") {
      c.seed = Scalar<uint64_t>(v, "seed");
    } else if (key == "mutator") {
      auto m = ParseMutator(Scalar<std::string>(v, "mutator"));
      if (!m) throw CampaignError("mutator must be 'grammar' or 'random'");
      c.mutator = *m;
    } else if (key == "round_cap") {
      c.round_cap = Scalar<int>(v, "round_cap");
    } else if (key == "random_max_ops") {
      c.random_max_ops = Scalar<int>(v, "random_max_ops");
    } else if (key == "subprefix_offsets") {
      c.subprefix_offsets = Scalar<std::vector<int>>(v, "subprefix_offsets");
    } else if (key == "weights") {
      if (!v.IsMap()) throw CampaignError("weights must be a mapping");
      for (const auto& w : v) {
        std::string name = w.first.as<std::string>();
        double value = Scalar<double>(w.second, "weights");
        if (value < 0) throw CampaignError("weights must be non-negative");
        if (name == "synthesize_subprefix") {
          c.weights.synthesize_subprefix = value;
        } else if (name == "insert_max_prefix") {
          c.weights.insert_max_prefix = value;
        } else if (name == "mutate_field") {
          c.weights.mutate_field = value;
        } else if (name == "other") {
          c.weights.other = value;
        } else {
          throw CampaignError("unknown weight '" + name + "'");
        }
      }
    } else {
      throw CampaignError("unknown campaign key '" + key + "'");
    }
  }
  if (!have_topology) throw CampaignError("campaign file has no 'topology'");
  if (c.target.empty()) throw CampaignError("campaign file has no 'target'");
  if (c.trials < 1) throw CampaignError("trials must be at least 1");
  if (c.round_cap < 1) throw CampaignError("round_cap must be at least 1");
  if (c.random_max_ops < 1) throw CampaignError("random_max_ops must be at least 1");
  if (c.budget_seconds < 0) throw CampaignError("budget_seconds must be non-negative");
  if (c.subprefix_offsets.empty()) throw CampaignError("subprefix_offsets is empty");
  for (int o : c.subprefix_offsets) {
    if (o < 1 || o > 31) throw CampaignError("subprefix offsets must lie in [1, 31]");
  }
  return c;
}

CampaignConfig CampaignConfig::Load(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw CampaignError("cannot read campaign file " + path.string());
  std::ostringstream s;
  s << in.rdbuf();
  return FromYaml(s.str(), path.parent_path());
}

std::string CampaignConfig::ToYaml() const {
  YAML::Emitter out;
  out << YAML::BeginMap;
  out << YAML::Key << "topology" << YAML::Value << topology.generic_string();
  out << YAML::Key << "target" << YAML::Value << target;
  if (!interface.empty()) out << YAML::Key << "interface" << YAML::Value << interface;
  out << YAML::Key << "budget_iters" << YAML::Value << budget_iters;
  out << YAML::Key << "budget_seconds" << YAML::Value << budget_seconds;
  out << YAML::Key << "trials" << YAML::Value << trials;
  out << YAML::Key << "seed" << YAML::Value << seed;
  out << YAML::Key << "mutator" << YAML::Value << std::string(MutatorName(mutator));
  out << YAML::Key << "weights" << YAML::Value << YAML::BeginMap;
  out << YAML::Key << "synthesize_subprefix" << YAML::Value << weights.synthesize_subprefix;
  out << YAML::Key << "insert_max_prefix" << YAML::Value << weights.insert_max_prefix;
  out << YAML::Key << "mutate_field" << YAML::Value << weights.mutate_field;
  out << YAML::Key << "other" << YAML::Value << weights.other;
  out << YAML::EndMap;
  out << YAML::Key << "subprefix_offsets" << YAML::Value << YAML::Flow << subprefix_offsets;
  out << YAML::Key << "round_cap" << YAML::Value << round_cap;
  out << YAML::Key << "random_max_ops" << YAML::Value << random_max_ops;
  out << YAML::EndMap;
  return std::string(out.c_str()) + "\n";
}

std::string Fnv1a(std::string_view text) {
  uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : text) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

bool IterationRecord::Has(EventClass e) const {
  return std::any_of(events.begin(), events.end(),
                     [&](const FuzzEvent& f) { return f.kind == e; });
}

void validate_trace(std::span<const IterationRecord> records) {
  FuzzState state = FuzzState::kS0NormalRun;
  for (const auto& r : records) {
    if (r.before != state) {
      throw IllegalTransition(state, FuzzEvent{EventClass::kE1});
    }
    if (r.states.size() != r.events.size()) {
      throw std::logic_error("trace record has mismatched events and states");
    }
    for (size_t i = 0; i < r.events.size(); ++i) {
      state = transition(state, r.events[i]);
      if (state != r.states[i]) throw IllegalTransition(state, r.events[i]);
    }
    if (state != r.after) throw IllegalTransition(state, FuzzEvent{EventClass::kE1});
    if (r.Has(EventClass::kE5) &&
        (r.events.back().kind != EventClass::kE6 || r.after != FuzzState::kS0NormalRun)) {
      throw std::logic_error("error state not recovered within its iteration");
    }
  }
}

Feedback collect_feedback(const Network& net, std::string_view target,
                          std::span<const NetworkEvent> events, std::string_view interface) {
  Feedback fb;
  fb.rib = net.snapshot_rib(target);
  for (const auto& e : fb.rib.entries) {
    if (e.best) fb.announced_prefixes.insert(e.prefix);
  }
  for (const auto& s : net.sessions_of(target)) fb.session_states[s.peer_address] = s.state;
  for (const auto& e : events) {
    bool keep = interface.empty() ? e.node == target || PeerOf(e) == target
                                  : InvolvesLink(e, target, interface);
    if (keep) fb.last_events.push_back(e);
  }
  return fb;
}

bool IsMaxPrefixReset(const OracleReport& report) {
  for (const auto& f : report.findings) {
    if (f.bug_class != BugClass::kSessionReset) continue;
    for (const auto& ev : f.evidence) {
      const auto* e = std::get_if<NetworkEvent>(&ev);
      if (!e) continue;
      const auto* n = std::get_if<event::Notification>(&e->payload);
      if (n && n->code == kNotificationCease && n->subcode == kCeaseMaxPrefixesReached) {
        return true;
      }
    }
  }
  return false;
}

bool IsSubPrefixHijack(const OracleReport& report) {
  return report.Has(BugClass::kSubPrefixHijack) &&
         (report.Has(BugClass::kBlackhole) || report.Has(BugClass::kPathAnomaly));
}

double TrialResult::Validity() const {
  return records.empty() ? 1.0 : static_cast<double>(parseable) / records.size();
}

std::string SnapshotText(const Network& net) {
  std::string out;
  for (const auto& name : net.NodeNames()) {
    out += "# " + name + "\n";
    out += net.snapshot_rib(name).ToText();
  }
  return out;
}

Trial::Trial(const CampaignConfig& config, const Topology& topology, int index,
             ArchiveOptions archive)
    : config_(config),
      topology_(topology),
      index_(index),
      archive_(std::move(archive)),
      rng_seed_(Rng::Derive(config.seed, static_cast<uint64_t>(index))),
      rng_(rng_seed_),
      net_(topology, SimulatorOptions{config.round_cap}) {
  if (!topology_.Find(config.target)) {
    throw SetupError("target '" + config.target + "' is not in the topology");
  }
  if (!config.interface.empty()) {
    bool linked = std::any_of(topology_.links.begin(), topology_.links.end(), [&](const auto& l) {
      return (l.a == config.target && l.b == config.interface) ||
             (l.b == config.target && l.a == config.interface);
    });
    if (!linked) {
      throw SetupError("interface '" + config.interface + "' is not a neighbor of '" +
                       config.target + "'");
    }
  }
  auto [result, events] = net_.converge();
  if (!result.converged) {
    throw SetupError("baseline did not converge within " + std::to_string(config.round_cap) +
                     " rounds");
  }
  baseline_ = BaselineProfile::Capture(net_, result);
  golden_text_ = SnapshotText(net_);
  seed_config_ = net_.baseline_config(config.target);
  pools_ = FieldPools::From(topology_, seed_config_);
  current_text_ = net_.config_text(config.target);
  current_ = parse_config(current_text_);
  golden_feedback_ = collect_feedback(net_, config.target, events, config.interface);
  feedback_ = golden_feedback_;
}

FuzzState Trial::Fire(IterationRecord& record, FuzzEvent event) {
  state_ = transition(state_, event);
  record.events.push_back(event);
  record.states.push_back(state_);
  return state_;
}

void Trial::Recover(IterationRecord& record) {
  net_.reset();
  net_.converge();
  record.recovered = SnapshotText(net_) == golden_text_;
  current_text_ = net_.config_text(config_.target);
  current_ = parse_config(current_text_);
  feedback_ = golden_feedback_;
}

void Trial::Archive(IterationRecord& record, const IterationArtifacts& artifacts) {
  if (archive_.out_dir.empty()) return;
  ArchiveMetadata meta;
  meta.seed = config_.seed;
  meta.trial = index_;
  meta.iteration = record.index;
  meta.target = config_.target;
  meta.round_cap = config_.round_cap;
  meta.iteration_findings = record.report.Keys();
  for (size_t k = 0; k < record.report.findings.size(); ++k) {
    const Finding& f = record.report.findings[k];
    meta.bug_class = f.bug_class;
    meta.key = f.key;
    fs::path dir = archive_.out_dir / ("trial-" + std::to_string(index_)) /
                   ("iter-" + std::to_string(record.index) + "-finding-" + std::to_string(k));
    try {
      record.archives.push_back(archive_finding(dir, f, meta, topology_, artifacts, baseline_));
    } catch (const std::exception& e) {
      warnings_.push_back("archive failed for iteration " + std::to_string(record.index) + ": " +
                          e.what());
    }
  }
}

IterationRecord Trial::RunIteration() {
  auto start = std::chrono::steady_clock::now();
  IterationRecord record;
  record.index = iteration_++;
  record.before = state_;
  const std::string& target = config_.target;

  std::string text;
  EventClass change = EventClass::kE1;
  if (config_.mutator == MutatorKind::kGrammar) {
    MutationContext ctx;
    ctx.current = &*current_;
    ctx.seed = &seed_config_;
    ctx.pools = &pools_;
    ctx.weights = config_.weights;
    ctx.subprefix_offsets = config_.subprefix_offsets;
    try {
      MutationPlan plan = select_mutation(feedback_, state_, rng_, ctx);
      change = EventOf(plan.kind);
      record.mutation = plan.Describe();
      text = apply_plan(*current_, plan).tree.Leaves();
    } catch (const MutationError& e) {
      record.mutation = std::string("dropped: ") + e.what();
      record.parseable = true;
      Fire(record, FuzzEvent{change, false});
      record.after = state_;
      record.config_hash = Fnv1a(current_text_);
      record.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
      return record;
    }
  } else {
    text = random_mutate(current_text_, rng_, config_.random_max_ops);
    record.mutation = "random-bytes";
  }
  record.deployed = true;
  record.parseable = IsParseable(text);
  record.config_hash = Fnv1a(text);

  auto before = net_.originated(target);
  size_t log_start = net_.event_log().size();
  net_.apply_config(target, text);
  auto [result, events] = net_.converge();
  record.convergence = result;
  IterationArtifacts artifacts =
      IterationArtifacts::Capture(net_, target, text, result, log_start);
  record.report = run_all_oracles(baseline_, artifacts);

  Fire(record, FuzzEvent{change, true});
  auto after = net_.originated(target);
  bool announced = std::any_of(after.begin(), after.end(), [&](const Prefix& p) {
    return std::find(before.begin(), before.end(), p) == before.end();
  });
  if (announced) Fire(record, FuzzEvent{EventClass::kE4});

  if (!record.report.findings.empty()) {
    Fire(record, FuzzEvent{EventClass::kE5});
    Archive(record, artifacts);
    Fire(record, FuzzEvent{EventClass::kE6});
    Recover(record);
  } else {
    current_text_ = text;
    if (config_.mutator == MutatorKind::kGrammar) current_ = parse_config(text);
    feedback_ = collect_feedback(net_, target, artifacts.events, config_.interface);
  }
  record.after = state_;
  record.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return record;
}

int CampaignReport::Detected(int bug) const {
  int n = 0;
  for (const auto& t : trials) {
    const auto& v = bug == 1 ? t.bug01 : bug == 2 ? t.bug02 : t.bug03;
    n += v.has_value();
  }
  return n;
}

double CampaignReport::Validity() const {
  uint64_t ok = 0;
  uint64_t total = 0;
  for (const auto& t : trials) {
    ok += t.parseable;
    total += t.records.size();
  }
  return total == 0 ? 1.0 : static_cast<double>(ok) / total;
}

std::string CampaignReport::Summary() const {
  std::ostringstream s;
  uint64_t ok = 0;
  uint64_t total = 0;
  for (const auto& t : trials) {
    ok += t.parseable;
    total += t.records.size();
  }
  s << "routefuzz " << kVersion << " campaign summary\n";
  s << "mutator        " << MutatorName(config.mutator) << "\n";
  s << "seed           " << config.seed << "\n";
  s << "target         " << config.target << "\n";
  s << "topology hash  " << topology_hash << "\n";
  s << "trials         " << trials.size() << "\n";
  s << "budget iters   " << config.budget_iters << "\n";
  s << "iterations     " << total << "\n";
  s << "validity       " << Fixed(Validity(), 4) << " (" << ok << "/" << total << ")\n\n";
  s << Pad("bug", 8) << Pad("description", 42) << Pad("detected", 10) << "mean first iteration\n";
  for (int bug = 1; bug <= 3; ++bug) {
    double sum = 0;
    int n = 0;
    for (const auto& t : trials) {
      const auto& v = bug == 1 ? t.bug01 : bug == 2 ? t.bug02 : t.bug03;
      if (v) sum += static_cast<double>(*v), ++n;
    }
    s << Pad("Bug-0" + std::to_string(bug), 8) << Pad(std::string(kBugNames[bug]), 42)
      << Pad(std::to_string(n) + "/" + std::to_string(trials.size()), 10)
      << (n ? Fixed(sum / n, 1) : "-") << "\n";
  }
  s << "\n" << Pad("finding class", 18) << Pad("trials", 8) << "iterations\n";
  for (BugClass c : kAllBugClasses) {
    int in_trials = 0;
    uint64_t iterations = 0;
    for (const auto& t : trials) {
      in_trials += t.first_detection.count(c) > 0;
      for (const auto& r : t.records) iterations += r.report.Has(c);
    }
    s << Pad(std::string(BugClassName(c)), 18) << Pad(std::to_string(in_trials), 8)
      << iterations << "\n";
  }
  return s.str();
}

std::string CampaignReport::ToJson() const {
  ordered_json j;
  j["version"] = std::string(kVersion);
  j["seed"] = config.seed;
  j["mutator"] = std::string(MutatorName(config.mutator));
  j["target"] = config.target;
  j["topology_hash"] = topology_hash;
  j["budget_iters"] = config.budget_iters;
  j["budget_seconds"] = config.budget_seconds;
  j["validity"] = Validity();
  j["detected"] = {{"bug01", Detected(1)}, {"bug02", Detected(2)}, {"bug03", Detected(3)}};
  j["trials"] = ordered_json::array();
  for (const auto& t : trials) {
    ordered_json tj;
    tj["trial"] = t.trial;
    tj["rng_seed"] = t.rng_seed;
    tj["iterations"] = t.records.size();
    tj["validity"] = t.Validity();
    auto opt = [](const std::optional<uint64_t>& v) {
      return v ? ordered_json(*v) : ordered_json(nullptr);
    };
    tj["bug01"] = opt(t.bug01);
    tj["bug02"] = opt(t.bug02);
    tj["bug03"] = opt(t.bug03);
    tj["first_detection"] = ordered_json::object();
    for (const auto& [c, i] : t.first_detection) {
      tj["first_detection"][std::string(BugClassName(c))] = i;
    }
    tj["warnings"] = t.warnings;
    tj["records"] = ordered_json::array();
    for (const auto& r : t.records) {
      ordered_json rj;
      rj["iteration"] = r.index;
      rj["before"] = std::string(StateName(r.before));
      rj["after"] = std::string(StateName(r.after));
      rj["events"] = ordered_json::array();
      for (const auto& e : r.events) rj["events"].push_back(EventName(e));
      rj["mutation"] = r.mutation;
      rj["config_hash"] = r.config_hash;
      rj["parseable"] = r.parseable;
      rj["converged"] = r.convergence.converged;
      rj["rounds"] = r.convergence.rounds;
      rj["findings"] = ordered_json::array();
      for (const auto& f : r.report.findings) {
        rj["findings"].push_back(std::string(BugClassName(f.bug_class)) + " " + f.key);
      }
      if (r.recovered) rj["recovered"] = *r.recovered;
      rj["seconds"] = r.seconds;
      tj["records"].push_back(std::move(rj));
    }
    j["trials"].push_back(std::move(tj));
  }
  return j.dump(2) + "\n";
}

std::string FormatMatrix(std::span<const CampaignReport> reports) {
  std::ostringstream s;
  s << Pad("bug", 8) << Pad("description", 42);
  for (const auto& r : reports) s << Pad(std::string(MutatorName(r.config.mutator)), 10);
  s << "\n";
  for (int bug = 1; bug <= 3; ++bug) {
    s << Pad("Bug-0" + std::to_string(bug), 8) << Pad(std::string(kBugNames[bug]), 42);
    for (const auto& r : reports) {
      s << Pad(std::to_string(r.Detected(bug)) + "/" + std::to_string(r.trials.size()), 10);
    }
    s << "\n";
  }
  s << Pad("validity", 50);
  for (const auto& r : reports) s << Pad(Fixed(r.Validity(), 4), 10);
  s << "\n";
  return s.str();
}

CampaignReport run_campaign(const CampaignConfig& config, int jobs, ArchiveOptions archive) {
  std::string topo_text;
  {
    std::ifstream in(config.topology, std::ios::binary);
    if (!in) throw CampaignError("cannot read topology file " + config.topology.string());
    std::ostringstream s;
    s << in.rdbuf();
    topo_text = s.str();
  }
  Topology topology;
  try {
    topology = load_topology(topo_text);
  } catch (const std::exception& e) {
    throw SetupError(std::string("topology: ") + e.what());
  }
  CampaignReport report;
  report.config = config;
  report.topology_hash = Fnv1a(topology.ToText());
  report.trials.resize(static_cast<size_t>(config.trials));

  // Construct the first trial up front so setup errors surface before any
  // work is distributed.
  std::vector<std::unique_ptr<Trial>> first;
  first.push_back(std::make_unique<Trial>(config, topology, 0, archive));

  auto run_one = [&](int index, std::unique_ptr<Trial> trial) {
    if (!trial) trial = std::make_unique<Trial>(config, topology, index, archive);
    auto started = std::chrono::steady_clock::now();
    TrialResult& out = report.trials[static_cast<size_t>(index)];
    out.trial = index;
    out.rng_seed = trial->rng_seed();
    for (uint64_t i = 0; i < config.budget_iters; ++i) {
      if (config.budget_seconds > 0 &&
          std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count() >=
              config.budget_seconds) {
        break;
      }
      IterationRecord r = trial->RunIteration();
      out.parseable += r.parseable;
      for (const auto& f : r.report.findings) out.first_detection.emplace(f.bug_class, r.index);
      if (!out.bug01 && r.report.Has(BugClass::kInvalidConfig)) out.bug01 = r.index;
      if (!out.bug02 && IsMaxPrefixReset(r.report)) out.bug02 = r.index;
      if (!out.bug03 && IsSubPrefixHijack(r.report)) out.bug03 = r.index;
      out.records.push_back(std::move(r));
    }
    out.warnings = trial->warnings();
  };

  jobs = std::max(1, std::min(jobs, config.trials));
  std::atomic<int> next{1};
  std::mutex error_mu;
  std::exception_ptr error;
  auto worker = [&](std::unique_ptr<Trial> seeded) {
    try {
      if (seeded) run_one(0, std::move(seeded));
      for (int i = next++; i < config.trials; i = next++) run_one(i, nullptr);
    } catch (...) {
      std::lock_guard<std::mutex> lock(error_mu);
      if (!error) error = std::current_exception();
    }
  };
  std::vector<std::thread> threads;
  for (int j = 1; j < jobs; ++j) threads.emplace_back(worker, nullptr);
  worker(std::move(first[0]));
  for (auto& t : threads) t.join();
  if (error) std::rethrow_exception(error);
  return report;
}

std::filesystem::path archive_finding(const fs::path& dir, const Finding& finding,
                                      const ArchiveMetadata& metadata, const Topology& topology,
                                      const IterationArtifacts& artifacts,
                                      const BaselineProfile& baseline) {
  fs::create_directories(dir);
  WriteText(dir / kArchiveConfig, artifacts.config_text);
  WriteText(dir / kArchiveTopology, topology.ToText());
  std::string before;
  std::string after;
  for (const auto& [node, snap] : baseline.ribs) before += "# " + node + "\n" + snap.ToText();
  for (const auto& [node, snap] : artifacts.ribs) after += "# " + node + "\n" + snap.ToText();
  WriteText(dir / kArchiveBaselineRib, before);
  WriteText(dir / kArchiveCurrentRib, after);
  WriteText(dir / kArchiveEvents, EventsToJsonl(artifacts.events));

  ordered_json j;
  j["version"] = std::string(kVersion);
  j["seed"] = metadata.seed;
  j["trial"] = metadata.trial;
  j["iteration"] = metadata.iteration;
  j["target"] = metadata.target;
  j["round_cap"] = metadata.round_cap;
  j["class"] = std::string(BugClassName(metadata.bug_class));
  j["key"] = metadata.key;
  j["iteration_findings"] = ordered_json::array();
  for (const auto& [c, k] : metadata.iteration_findings) {
    j["iteration_findings"].push_back({{"class", std::string(BugClassName(c))}, {"key", k}});
  }
  j["finding"] = ordered_json::parse(finding.ToJson());
  WriteText(dir / kArchiveFinding, j.dump(2) + "\n");
  return dir;
}

ReplayResult replay_archive(const fs::path& dir) {
  if (!fs::is_directory(dir)) throw ArchiveError("not an archive directory: " + dir.string());
  ReplayResult out;
  std::string config_text = ReadText(dir / kArchiveConfig);
  Topology topology;
  try {
    topology = load_topology(ReadText(dir / kArchiveTopology));
  } catch (const TopologyError& e) {
    throw ArchiveError(std::string("archived topology: ") + e.what());
  }
  try {
    auto j = ordered_json::parse(ReadText(dir / kArchiveFinding));
    ArchiveMetadata& m = out.metadata;
    m.seed = j.at("seed").get<uint64_t>();
    m.trial = j.at("trial").get<int>();
    m.iteration = j.at("iteration").get<uint64_t>();
    m.target = j.at("target").get<std::string>();
    m.round_cap = j.at("round_cap").get<int>();
    auto c = ParseBugClass(j.at("class").get<std::string>());
    if (!c) throw ArchiveError("unknown finding class");
    m.bug_class = *c;
    m.key = j.at("key").get<std::string>();
    for (const auto& f : j.at("iteration_findings")) {
      auto fc = ParseBugClass(f.at("class").get<std::string>());
      if (!fc) throw ArchiveError("unknown finding class");
      m.iteration_findings.insert({*fc, f.at("key").get<std::string>()});
    }
  } catch (const nlohmann::json::exception& e) {
    throw ArchiveError(std::string("finding metadata: ") + e.what());
  }
  if (!topology.Find(out.metadata.target)) {
    throw ArchiveError("archived target is not in the archived topology");
  }
  if (out.metadata.round_cap < 1) throw ArchiveError("archived round cap is invalid");

  Network net(topology, SimulatorOptions{out.metadata.round_cap});
  auto [baseline_result, baseline_events] = net.converge();
  if (!baseline_result.converged) throw ArchiveError("archived topology does not converge");
  BaselineProfile baseline = BaselineProfile::Capture(net, baseline_result);
  size_t log_start = net.event_log().size();
  net.apply_config(out.metadata.target, config_text);
  auto [result, events] = net.converge();
  out.report = run_all_oracles(
      baseline,
      IterationArtifacts::Capture(net, out.metadata.target, config_text, result, log_start));
  out.match = out.report.Keys() == out.metadata.iteration_findings;
  return out;
}

}  // namespace routefuzz
