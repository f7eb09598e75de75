// Copyright 2026 The hetgame Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Seeded Monte-Carlo sweeps over SNR and carrier count. Every scheme at a
// sweep point and trial plays the same sampled instance.

#ifndef HETGAME_HARNESS_H_
#define HETGAME_HARNESS_H_

#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "hetgame/baselines.h"
#include "hetgame/efficiency.h"
#include "hetgame/model.h"

namespace hetgame {

enum class Scheme { kStackelberg, kNash, kBestChannel };

std::string_view SchemeName(Scheme scheme);
Scheme ParseScheme(std::string_view name);

struct ScenarioConfig {
  // More than one entry sweeps the carrier count.
  std::vector<int> carriers{5};
  int followers = 4;
  int exponent = 2;
  double mean_signal = 1.0;
  double mean_cross = 0.5;
  double snr_start_db = -5.0;
  double snr_stop_db = 25.0;
  double snr_step_db = 5.0;
  int trials = 500;
  std::uint64_t seed = 1;
  std::vector<Scheme> schemes{Scheme::kStackelberg, Scheme::kNash,
                              Scheme::kBestChannel};
  Regime regime = Regime::kDense;
  // Empty: R_n = 1 for every player.
  std::vector<double> rates;
  std::string output_path = "sweep.csv";
  // Per-point aggregate CSV; empty disables it.
  std::string summary_path;
  // Fraction of trials whose equilibria are certified by the oracle.
  double verify_fraction = 0.01;
  int verify_grid_size = 300;
  int threads = 1;
  IterationOptions iteration;

  // Throws std::invalid_argument on an inconsistent configuration.
  void Validate() const;
  std::vector<double> SnrPoints() const;
};

// key=value setters shared by the config file and the CLI flags. Keys are the
// flag names without leading dashes. Throws std::invalid_argument.
void ApplyConfigValue(ScenarioConfig& config, std::string_view key,
                      std::string_view value);
// Flat key=value lines; '#' starts a comment, blank lines are ignored.
void ApplyConfigText(ScenarioConfig& config, std::istream& in);
void ApplyConfigFile(ScenarioConfig& config, const std::string& path);

struct SweepPoint {
  int index = 0;
  int carriers = 0;
  double snr_db = 0.0;
};

// Carrier-major: every SNR point for the first carrier count, then the next.
std::vector<SweepPoint> SweepPoints(const ScenarioConfig& config);

// base_seed xor splitmix64(point, trial).
std::uint64_t TrialSeed(std::uint64_t base_seed, int point, int trial);

InstanceDistribution PointDistribution(const ScenarioConfig& config,
                                       int carriers, double snr_db);

// Deterministic per-seed subsample decision for oracle certification.
bool SelectedForVerification(std::uint64_t trial_seed, double fraction);

enum class Verdict { kNotChecked, kPass, kFail };

struct SweepRecord {
  Scheme scheme = Scheme::kStackelberg;
  Regime regime = Regime::kDense;
  double snr_db = 0.0;
  int carriers = 0;
  int followers = 0;
  int trial = 0;
  std::uint64_t seed = 0;
  int player = 0;
  double utility = 0.0;
  int active_carrier = kNoCarrier;
  bool converged = true;
  Verdict verified = Verdict::kNotChecked;
  // Not serialized.
  std::uint64_t instance_digest = 0;
  std::string error;
};

struct SchemeOutcome {
  EquilibriumResult equilibrium;
  bool converged = true;
};

SchemeOutcome RunScheme(const NetworkInstance& instance,
                        const EfficiencyModel& model, Scheme scheme,
                        Regime regime, const IterationOptions& iteration);

// Per-player oracle verdicts. Stackelberg: leader bi-level check plus follower
// exactness. Nash: unilateral deviations, only when the dynamics converged.
// Best channel makes no equilibrium claim and is never checked.
std::vector<Verdict> VerifyOutcome(const NetworkInstance& instance,
                                   const EfficiencyModel& model, Scheme scheme,
                                   Regime regime, const SchemeOutcome& outcome,
                                   int grid_size);

// Records in (point, trial, scheme, player) order. Solver failures are stored
// in the record's error field and never abort the sweep.
std::vector<SweepRecord> RunSweep(const ScenarioConfig& config);

inline constexpr std::string_view kCsvHeader =
    "scheme,regime,snr_db,carriers,followers,trial,seed,player,utility,"
    "active_carrier,converged,verified";

void WriteCsv(std::ostream& out, std::span<const SweepRecord> records);
// Throws std::runtime_error on a malformed file.
std::vector<SweepRecord> ReadCsv(std::istream& in);

// Runs the sweep and writes output_path (and summary_path when set).
// Throws std::runtime_error on I/O failure. Returns the record count.
std::size_t RunSweepToFiles(const ScenarioConfig& config);

struct Statistic {
  int count = 0;
  double mean = 0.0;
  double stddev = 0.0;
  // 95% normal-approximation half-width.
  double ci_half_width = 0.0;
};

Statistic Describe(std::span<const double> values);

struct SummaryRow {
  Scheme scheme = Scheme::kStackelberg;
  Regime regime = Regime::kDense;
  double snr_db = 0.0;
  int carriers = 0;
  int followers = 0;
  int trials = 0;
  int converged_trials = 0;
  double convergence_rate = 0.0;
  Statistic leader;
  // Per-trial mean over followers; count 0 when F = 0.
  Statistic follower;
};

// One row per (scheme, regime, snr, K, F) in first-appearance order. Only
// converged trials enter the statistics when converged_only is set; errored
// trials never do. Throws std::invalid_argument on empty input.
std::vector<SummaryRow> Summarize(std::span<const SweepRecord> records,
                                  bool converged_only = false);

void WriteSummaryCsv(std::ostream& out, std::span<const SummaryRow> rows);

struct PairedComparison {
  int carriers = 0;
  double snr_db = 0.0;
  int pairs = 0;
  // Mean over paired trials of first-scheme minus second-scheme leader utility.
  Statistic difference;
};

// Paired leader-utility differences per sweep point over trials where both
// schemes converged and neither errored.
std::vector<PairedComparison> CompareLeaderUtility(
    std::span<const SweepRecord> records, Scheme first, Scheme second);

struct TrendStep {
  int from_carriers = 0;
  int to_carriers = 0;
  double from_mean = 0.0;
  double to_mean = 0.0;
  // Combined 95% half-width of the two means.
  double slack = 0.0;
  bool decreased = false;
  bool within_slack = true;
};

struct TrendReport {
  std::vector<TrendStep> steps;
  // No decrease beyond the confidence slack.
  bool holds = true;
};

enum class TrendTarget { kLeader, kFollower };

// Mean utility of `scheme` should not decrease with the carrier count. Rows
// are grouped by carrier count at each SNR point.
TrendReport CheckCarrierTrend(std::span<const SummaryRow> rows, Scheme scheme,
                              TrendTarget target);

struct CsvVerification {
  int trials_checked = 0;
  int mismatches = 0;
  int oracle_checked = 0;
  int oracle_failures = 0;
  std::vector<std::string> messages;

  bool ok() const { return mismatches == 0 && oracle_failures == 0; }
};

// Rebuilds each recorded trial from its seed, re-solves the scheme, compares
// utilities (1e-9 relative) and re-runs the oracle on the configured
// subsample. Shape parameters come from the CSV rows; distribution means,
// rates and M come from `config`.
CsvVerification VerifyCsv(const ScenarioConfig& config,
                          std::span<const SweepRecord> records);

}  // namespace hetgame

#endif  // HETGAME_HARNESS_H_
