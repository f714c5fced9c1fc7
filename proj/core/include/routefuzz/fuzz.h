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

#ifndef ROUTEFUZZ_FUZZ_H_
#define ROUTEFUZZ_FUZZ_H_

#include <cstdint>
#include <filesystem>
#include <map>
#include <memory>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "routefuzz/config.h"
#include "routefuzz/mutation.h"
#include "routefuzz/oracles.h"
#include "routefuzz/rng.h"
#include "routefuzz/simulator.h"
#include "routefuzz/state_machine.h"
#include "routefuzz/topology.h"
#include "routefuzz/version.h"

namespace routefuzz {

enum class MutatorKind { kGrammar, kRandom };
std::string_view MutatorName(MutatorKind kind);
std::optional<MutatorKind> ParseMutator(std::string_view name);

// A campaign description that cannot be used as written (exit status 2).
class CampaignError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// The campaign is well formed but its network is not (exit status 1).
class SetupError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct CampaignConfig {
  std::filesystem::path topology;
  std::string target;
  // Neighbor node name; restricts feedback events to that link. Empty = all.
  std::string interface;
  uint64_t budget_iters = 500;
  double budget_seconds = 0;  // 0 = no wall-clock cap
  int trials = 1;
  uint64_t seed = 0;
  MutatorKind mutator = MutatorKind::kGrammar;
  MutationWeights weights;
  std::vector<int> subprefix_offsets{kDefaultSubprefixOffsets.begin(),
                                     kDefaultSubprefixOffsets.end()};
  int round_cap = 100;
  int random_max_ops = 4;

  // Relative topology paths resolve against `base_dir`. Throws CampaignError.
  static CampaignConfig FromYaml(std::string_view text,
                                 const std::filesystem::path& base_dir = {});
  static CampaignConfig Load(const std::filesystem::path& path);
  std::string ToYaml() const;

  friend bool operator==(const CampaignConfig&, const CampaignConfig&) = default;
};

// 64-bit FNV-1a, as 16 lowercase hex digits.
std::string Fnv1a(std::string_view text);

struct IterationRecord {
  uint64_t index = 0;
  FuzzState before = FuzzState::kS0NormalRun;
  FuzzState after = FuzzState::kS0NormalRun;
  std::vector<FuzzEvent> events;
  std::vector<FuzzState> states;  // state after each event
  std::string mutation;
  std::string config_hash;
  bool deployed = false;
  bool parseable = false;
  ConvergenceResult convergence;
  OracleReport report;
  // Set when E6 fired: the post-recovery snapshot equals the golden one.
  std::optional<bool> recovered;
  std::vector<std::filesystem::path> archives;
  double seconds = 0;

  bool Has(EventClass e) const;
};

// Throws IllegalTransition at the first event the table does not allow.
void validate_trace(std::span<const IterationRecord> records);

// Target RIB, its best prefixes, per-neighbor session state and the events
// involving the target (or only its link to `interface`, when set).
Feedback collect_feedback(const Network& net, std::string_view target,
                          std::span<const NetworkEvent> events, std::string_view interface = {});

// Two finding shapes measured per trial.
bool IsMaxPrefixReset(const OracleReport& report);
bool IsSubPrefixHijack(const OracleReport& report);

struct TrialResult {
  int trial = 0;
  uint64_t rng_seed = 0;
  std::vector<IterationRecord> records;
  std::map<BugClass, uint64_t> first_detection;
  std::optional<uint64_t> bug01;  // InvalidConfig
  std::optional<uint64_t> bug02;  // max-prefix SessionReset
  std::optional<uint64_t> bug03;  // SubPrefixHijack with Blackhole or PathAnomaly
  uint64_t parseable = 0;
  std::vector<std::string> warnings;

  double Validity() const;
};

struct CampaignReport {
  CampaignConfig config;
  std::string topology_hash;
  std::vector<TrialResult> trials;

  int Detected(int bug) const;  // bug in {1, 2, 3}
  double Validity() const;
  // Deterministic in (config, topology); no timings.
  std::string Summary() const;
  std::string ToJson() const;
};

// Bug rows by mutator columns, one column per report.
std::string FormatMatrix(std::span<const CampaignReport> reports);

struct ArchiveOptions {
  std::filesystem::path out_dir;  // empty = do not archive
};

// One trial: a network, its golden baseline and the state machine.
class Trial {
 public:
  // Throws SetupError if the target is unknown or the baseline diverges.
  Trial(const CampaignConfig& config, const Topology& topology, int index,
        ArchiveOptions archive = {});

  IterationRecord RunIteration();

  FuzzState state() const { return state_; }
  uint64_t iteration() const { return iteration_; }
  const Network& network() const { return net_; }
  const BaselineProfile& baseline() const { return baseline_; }
  const std::string& golden_text() const { return golden_text_; }
  const std::string& current_text() const { return current_text_; }
  const std::vector<std::string>& warnings() const { return warnings_; }
  uint64_t rng_seed() const { return rng_seed_; }

 private:
  FuzzState Fire(IterationRecord& record, FuzzEvent event);
  void Archive(IterationRecord& record, const IterationArtifacts& artifacts);
  void Recover(IterationRecord& record);

  const CampaignConfig& config_;
  Topology topology_;
  int index_;
  ArchiveOptions archive_;
  uint64_t rng_seed_;
  Rng rng_;
  Network net_;
  BaselineProfile baseline_;
  std::string golden_text_;
  RouterConfig seed_config_;
  FieldPools pools_;
  std::string current_text_;
  std::optional<ParsedConfig> current_;
  Feedback feedback_;
  Feedback golden_feedback_;
  FuzzState state_ = FuzzState::kS0NormalRun;
  uint64_t iteration_ = 0;
  std::vector<std::string> warnings_;
};

// Concatenated RIB text of every node, in node order.
std::string SnapshotText(const Network& net);

// Runs every trial, `jobs` at a time. Throws SetupError.
CampaignReport run_campaign(const CampaignConfig& config, int jobs = 1,
                            ArchiveOptions archive = {});

// Files written per finding, under
// <out_dir>/trial-<t>/iter-<i>-finding-<k>/.
inline constexpr std::string_view kArchiveConfig = "config.txt";
inline constexpr std::string_view kArchiveTopology = "topology.txt";
inline constexpr std::string_view kArchiveBaselineRib = "baseline_rib.txt";
inline constexpr std::string_view kArchiveCurrentRib = "current_rib.txt";
inline constexpr std::string_view kArchiveEvents = "events.jsonl";
inline constexpr std::string_view kArchiveFinding = "finding.json";

class ArchiveError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct ArchiveMetadata {
  uint64_t seed = 0;
  int trial = 0;
  uint64_t iteration = 0;
  std::string target;
  int round_cap = 100;
  BugClass bug_class = BugClass::kInvalidConfig;
  std::string key;
  // Every (class, key) the iteration reported.
  std::set<std::pair<BugClass, std::string>> iteration_findings;
};

std::filesystem::path archive_finding(const std::filesystem::path& dir, const Finding& finding,
                                      const ArchiveMetadata& metadata, const Topology& topology,
                                      const IterationArtifacts& artifacts,
                                      const BaselineProfile& baseline);

struct ReplayResult {
  ArchiveMetadata metadata;
  OracleReport report;
  bool match = false;  // replayed (class, key) set equals the archived one
};

// Throws ArchiveError for a missing or unreadable archive.
ReplayResult replay_archive(const std::filesystem::path& dir);

}  // namespace routefuzz

#endif  // ROUTEFUZZ_FUZZ_H_
