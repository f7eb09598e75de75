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

#include "hetgame/harness.h"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <istream>
#include <map>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <thread>
#include <tuple>

#include "hetgame/dense_eq.h"
#include "hetgame/oracle.h"
#include "hetgame/sparse_eq.h"

namespace hetgame {
namespace {

constexpr double kZ95 = 1.959963984540054;

std::uint64_t SplitMix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

std::string_view Trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r\n");
  return s.substr(first, last - first + 1);
}

std::vector<std::string_view> Split(std::string_view s, char delimiter) {
  std::vector<std::string_view> parts;
  std::size_t start = 0;
  for (;;) {
    const auto pos = s.find(delimiter, start);
    parts.push_back(s.substr(start, pos - start));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return parts;
}

[[noreturn]] void BadValue(std::string_view key, std::string_view value) {
  throw std::invalid_argument("invalid value '" + std::string(value) +
                              "' for '" + std::string(key) + "'");
}

template <typename T>
T ParseNumber(std::string_view key, std::string_view text) {
  text = Trim(text);
  T value{};
  const auto [ptr, ec] =
      std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc() || ptr != text.data() + text.size() || text.empty()) {
    BadValue(key, text);
  }
  return value;
}

std::string FormatDouble(double value) {
  if (std::isnan(value)) return "nan";
  char buffer[64];
  std::snprintf(buffer, sizeof buffer, "%.12g", value);
  return buffer;
}

std::string_view VerdictName(Verdict verdict) {
  switch (verdict) {
    case Verdict::kPass:
      return "pass";
    case Verdict::kFail:
      return "fail";
    case Verdict::kNotChecked:
      break;
  }
  return "";
}

Verdict ParseVerdict(std::string_view text) {
  if (text == "pass") return Verdict::kPass;
  if (text == "fail") return Verdict::kFail;
  if (text.empty()) return Verdict::kNotChecked;
  throw std::runtime_error("bad verdict '" + std::string(text) + "'");
}

struct TrialWork {
  SweepPoint point;
  int trial = 0;
};

std::vector<SweepRecord> RunTrial(const ScenarioConfig& config,
                                  const EfficiencyModel& model,
                                  const TrialWork& work) {
  const std::uint64_t seed = TrialSeed(config.seed, work.point.index, work.trial);
  const InstanceDistribution distribution =
      PointDistribution(config, work.point.carriers, work.point.snr_db);
  const NetworkInstance instance = SampleInstance(distribution, seed);
  const std::uint64_t digest = instance.Digest();
  const bool verify = SelectedForVerification(seed, config.verify_fraction);

  std::vector<SweepRecord> records;
  for (Scheme scheme : config.schemes) {
    SweepRecord base;
    base.scheme = scheme;
    base.regime = config.regime;
    base.snr_db = work.point.snr_db;
    base.carriers = work.point.carriers;
    base.followers = config.followers;
    base.trial = work.trial;
    base.seed = seed;
    base.instance_digest = digest;
    try {
      const SchemeOutcome outcome =
          RunScheme(instance, model, scheme, config.regime, config.iteration);
      std::vector<Verdict> verdicts(instance.players(), Verdict::kNotChecked);
      if (verify) {
        verdicts = VerifyOutcome(instance, model, scheme, config.regime,
                                 outcome, config.verify_grid_size);
      }
      for (int n = 0; n < instance.players(); ++n) {
        SweepRecord record = base;
        record.player = n;
        record.utility = outcome.equilibrium.utility[n];
        record.active_carrier = outcome.equilibrium.active_carrier[n];
        record.converged = outcome.converged;
        record.verified = verdicts[n];
        records.push_back(std::move(record));
      }
    } catch (const std::exception& e) {
      for (int n = 0; n < instance.players(); ++n) {
        SweepRecord record = base;
        record.player = n;
        record.utility = std::nan("");
        record.converged = false;
        record.error = e.what();
        records.push_back(std::move(record));
      }
    }
  }
  return records;
}

using PointKey = std::tuple<int, int, int, double, int>;  // scheme, regime, K, snr, F

PointKey KeyOf(const SweepRecord& r) {
  return {static_cast<int>(r.scheme), static_cast<int>(r.regime), r.carriers,
          r.snr_db, r.followers};
}

}  // namespace

std::string_view SchemeName(Scheme scheme) {
  switch (scheme) {
    case Scheme::kStackelberg:
      return "stackelberg";
    case Scheme::kNash:
      return "nash";
    case Scheme::kBestChannel:
      return "best_channel";
  }
  return "unknown";
}

Scheme ParseScheme(std::string_view name) {
  name = Trim(name);
  if (name == "stackelberg") return Scheme::kStackelberg;
  if (name == "nash") return Scheme::kNash;
  if (name == "best_channel") return Scheme::kBestChannel;
  throw std::invalid_argument("unknown scheme '" + std::string(name) + "'");
}

void ScenarioConfig::Validate() const {
  if (carriers.empty()) throw std::invalid_argument("no carrier count given");
  if (followers < 0) throw std::invalid_argument("followers must be >= 0");
  for (int k : carriers) {
    if (k < 2) throw std::invalid_argument("carriers must be >= 2");
    if (k < followers + 1) {
      throw std::invalid_argument("carriers must be >= followers + 1");
    }
  }
  if (exponent < 2) throw std::invalid_argument("m-exponent must be >= 2");
  if (!(mean_signal > 0.0)) throw std::invalid_argument("mean-signal must be > 0");
  if (!(mean_cross >= 0.0)) throw std::invalid_argument("mean-cross must be >= 0");
  if (!(snr_step_db > 0.0)) throw std::invalid_argument("snr step must be > 0");
  if (!(snr_stop_db >= snr_start_db)) {
    throw std::invalid_argument("snr stop must be >= start");
  }
  if (trials < 1) throw std::invalid_argument("trials must be >= 1");
  if (schemes.empty()) throw std::invalid_argument("no scheme selected");
  if (!rates.empty() && static_cast<int>(rates.size()) != followers + 1) {
    throw std::invalid_argument("rates needs followers + 1 entries");
  }
  for (double r : rates) {
    if (!(r > 0.0)) throw std::invalid_argument("rates must be > 0");
  }
  if (!(verify_fraction >= 0.0 && verify_fraction <= 1.0)) {
    throw std::invalid_argument("verify-fraction must be in [0, 1]");
  }
  if (verify_grid_size < 100) {
    throw std::invalid_argument("verify-grid must be >= 100");
  }
  if (threads < 1) throw std::invalid_argument("threads must be >= 1");
  if (iteration.max_iterations < 1 || !(iteration.tolerance > 0.0)) {
    throw std::invalid_argument("bad iteration limits");
  }
}

std::vector<double> ScenarioConfig::SnrPoints() const {
  std::vector<double> points;
  const double slack = 1e-9 * snr_step_db;
  for (int i = 0;; ++i) {
    const double snr = snr_start_db + i * snr_step_db;
    if (snr > snr_stop_db + slack) break;
    points.push_back(snr);
  }
  return points;
}

void ApplyConfigValue(ScenarioConfig& config, std::string_view key,
                      std::string_view value) {
  key = Trim(key);
  value = Trim(value);
  if (key == "carriers") {
    config.carriers.clear();
    for (auto part : Split(value, ',')) {
      config.carriers.push_back(ParseNumber<int>(key, part));
    }
  } else if (key == "followers") {
    config.followers = ParseNumber<int>(key, value);
  } else if (key == "m-exponent") {
    config.exponent = ParseNumber<int>(key, value);
  } else if (key == "mean-signal") {
    config.mean_signal = ParseNumber<double>(key, value);
  } else if (key == "mean-cross") {
    config.mean_cross = ParseNumber<double>(key, value);
  } else if (key == "snr-db") {
    const auto parts = Split(value, ':');
    if (parts.size() == 1) {
      config.snr_start_db = config.snr_stop_db = ParseNumber<double>(key, parts[0]);
    } else if (parts.size() == 3) {
      config.snr_start_db = ParseNumber<double>(key, parts[0]);
      config.snr_stop_db = ParseNumber<double>(key, parts[1]);
      config.snr_step_db = ParseNumber<double>(key, parts[2]);
    } else {
      BadValue(key, value);
    }
  } else if (key == "trials") {
    config.trials = ParseNumber<int>(key, value);
  } else if (key == "seed") {
    config.seed = ParseNumber<std::uint64_t>(key, value);
  } else if (key == "schemes") {
    config.schemes.clear();
    for (auto part : Split(value, ',')) {
      const Scheme scheme = ParseScheme(part);
      if (std::find(config.schemes.begin(), config.schemes.end(), scheme) ==
          config.schemes.end()) {
        config.schemes.push_back(scheme);
      }
    }
  } else if (key == "regime") {
    config.regime = ParseRegime(value);
  } else if (key == "rates") {
    config.rates.clear();
    if (!value.empty()) {
      for (auto part : Split(value, ',')) {
        config.rates.push_back(ParseNumber<double>(key, part));
      }
    }
  } else if (key == "output") {
    config.output_path = std::string(value);
  } else if (key == "summary") {
    config.summary_path = std::string(value);
  } else if (key == "verify-fraction") {
    config.verify_fraction = ParseNumber<double>(key, value);
  } else if (key == "verify-grid") {
    config.verify_grid_size = ParseNumber<int>(key, value);
  } else if (key == "threads") {
    config.threads = ParseNumber<int>(key, value);
  } else if (key == "max-iter") {
    config.iteration.max_iterations = ParseNumber<int>(key, value);
  } else if (key == "tol") {
    config.iteration.tolerance = ParseNumber<double>(key, value);
  } else {
    throw std::invalid_argument("unknown config key '" + std::string(key) + "'");
  }
}

void ApplyConfigText(ScenarioConfig& config, std::istream& in) {
  std::string line;
  int line_number = 0;
  while (std::getline(in, line)) {
    ++line_number;
    std::string_view view = line;
    if (const auto hash = view.find('#'); hash != std::string_view::npos) {
      view = view.substr(0, hash);
    }
    view = Trim(view);
    if (view.empty()) continue;
    const auto eq = view.find('=');
    if (eq == std::string_view::npos) {
      throw std::invalid_argument("config line " + std::to_string(line_number) +
                                  ": expected key=value");
    }
    ApplyConfigValue(config, view.substr(0, eq), view.substr(eq + 1));
  }
}

void ApplyConfigFile(ScenarioConfig& config, const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open config file " + path);
  ApplyConfigText(config, in);
}

std::vector<SweepPoint> SweepPoints(const ScenarioConfig& config) {
  std::vector<SweepPoint> points;
  const std::vector<double> snrs = config.SnrPoints();
  for (int k : config.carriers) {
    for (double snr : snrs) {
      points.push_back({static_cast<int>(points.size()), k, snr});
    }
  }
  return points;
}

std::uint64_t TrialSeed(std::uint64_t base_seed, int point, int trial) {
  return base_seed ^ SplitMix64((static_cast<std::uint64_t>(point) << 32) ^
                                static_cast<std::uint32_t>(trial));
}

InstanceDistribution PointDistribution(const ScenarioConfig& config,
                                       int carriers, double snr_db) {
  InstanceDistribution d;
  d.carriers = carriers;
  d.followers = config.followers;
  d.mean_signal = config.mean_signal;
  d.mean_cross = config.mean_cross;
  d.snr_db = snr_db;
  d.rates = config.rates;
  return d;
}

bool SelectedForVerification(std::uint64_t trial_seed, double fraction) {
  if (fraction <= 0.0) return false;
  if (fraction >= 1.0) return true;
  const double u =
      static_cast<double>(SplitMix64(trial_seed ^ 0x5eedf00dULL) >> 11) *
      0x1.0p-53;
  return u < fraction;
}

SchemeOutcome RunScheme(const NetworkInstance& instance,
                        const EfficiencyModel& model, Scheme scheme,
                        Regime regime, const IterationOptions& iteration) {
  switch (scheme) {
    case Scheme::kStackelberg:
      if (regime == Regime::kSparse) return {SolveSparse(instance, model), true};
      return {SolveDense(instance, model).equilibrium, true};
    case Scheme::kNash: {
      BaselineResult r = SolveNash(instance, model, regime, iteration);
      return {std::move(r.equilibrium), r.report.converged};
    }
    case Scheme::kBestChannel: {
      BaselineResult r = SolveBestChannel(instance, model, regime, iteration);
      return {std::move(r.equilibrium), r.report.converged};
    }
  }
  throw std::logic_error("unhandled scheme");
}

std::vector<Verdict> VerifyOutcome(const NetworkInstance& instance,
                                   const EfficiencyModel& model, Scheme scheme,
                                   Regime regime, const SchemeOutcome& outcome,
                                   int grid_size) {
  std::vector<Verdict> verdicts(instance.players(), Verdict::kNotChecked);
  auto verdict = [](bool passed) {
    return passed ? Verdict::kPass : Verdict::kFail;
  };
  const PowerAllocation& allocation = outcome.equilibrium.allocation;
  if (scheme == Scheme::kStackelberg) {
    OracleOptions leader_options;
    leader_options.grid_size = grid_size;
    verdicts[kLeader] = verdict(
        VerifyLeaderStackelberg(instance, model, allocation, regime,
                                leader_options)
            .passed);
    OracleOptions follower_options;
    follower_options.grid_size = std::max(100, grid_size);
    follower_options.tolerance = 1e-6;
    for (int f = 1; f < instance.players(); ++f) {
      const bool exact =
          VerifyFollower(instance, model, f, allocation, follower_options).passed;
      const bool stable =
          CheckFollowerCarrierStability(instance, model, f, allocation).passed;
      verdicts[f] = verdict(exact && stable);
    }
  } else if (scheme == Scheme::kNash && outcome.converged) {
    OracleOptions options;
    options.grid_size = grid_size;
    const auto reports = VerifyNash(instance, model, allocation, regime, options);
    for (const auto& report : reports) verdicts[report.player] = verdict(report.passed);
  }
  return verdicts;
}

std::vector<SweepRecord> RunSweep(const ScenarioConfig& config) {
  config.Validate();
  const EfficiencyModel model(config.exponent);
  std::vector<TrialWork> work;
  for (const SweepPoint& point : SweepPoints(config)) {
    for (int t = 0; t < config.trials; ++t) work.push_back({point, t});
  }

  std::vector<std::vector<SweepRecord>> results(work.size());
  const int threads =
      std::min<int>(config.threads, static_cast<int>(work.size()));
  if (threads <= 1) {
    for (std::size_t i = 0; i < work.size(); ++i) {
      results[i] = RunTrial(config, model, work[i]);
    }
  } else {
    std::atomic<std::size_t> next{0};
    std::vector<std::jthread> pool;
    for (int t = 0; t < threads; ++t) {
      pool.emplace_back([&] {
        for (std::size_t i = next++; i < work.size(); i = next++) {
          results[i] = RunTrial(config, model, work[i]);
        }
      });
    }
  }

  std::vector<SweepRecord> records;
  for (auto& batch : results) {
    for (auto& record : batch) records.push_back(std::move(record));
  }
  return records;
}

void WriteCsv(std::ostream& out, std::span<const SweepRecord> records) {
  out << kCsvHeader << '\n';
  for (const SweepRecord& r : records) {
    out << SchemeName(r.scheme) << ',' << RegimeName(r.regime) << ','
        << FormatDouble(r.snr_db) << ',' << r.carriers << ',' << r.followers
        << ',' << r.trial << ',' << r.seed << ',' << r.player << ','
        << FormatDouble(r.utility) << ',' << r.active_carrier << ','
        << (r.converged ? 1 : 0) << ',' << VerdictName(r.verified) << '\n';
  }
}

std::vector<SweepRecord> ReadCsv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line) || Trim(line) != kCsvHeader) {
    throw std::runtime_error("CSV header does not match the sweep format");
  }
  std::vector<SweepRecord> records;
  int line_number = 1;
  while (std::getline(in, line)) {
    ++line_number;
    if (Trim(line).empty()) continue;
    const auto fields = Split(Trim(line), ',');
    if (fields.size() != 12) {
      throw std::runtime_error("CSV line " + std::to_string(line_number) +
                               ": expected 12 fields");
    }
    try {
      SweepRecord r;
      r.scheme = ParseScheme(fields[0]);
      r.regime = ParseRegime(fields[1]);
      r.snr_db = ParseNumber<double>("snr_db", fields[2]);
      r.carriers = ParseNumber<int>("carriers", fields[3]);
      r.followers = ParseNumber<int>("followers", fields[4]);
      r.trial = ParseNumber<int>("trial", fields[5]);
      r.seed = ParseNumber<std::uint64_t>("seed", fields[6]);
      r.player = ParseNumber<int>("player", fields[7]);
      r.utility = fields[8] == "nan" ? std::nan("")
                                     : ParseNumber<double>("utility", fields[8]);
      r.active_carrier = ParseNumber<int>("active_carrier", fields[9]);
      r.converged = ParseNumber<int>("converged", fields[10]) != 0;
      r.verified = ParseVerdict(fields[11]);
      records.push_back(std::move(r));
    } catch (const std::exception& e) {
      throw std::runtime_error("CSV line " + std::to_string(line_number) + ": " +
                               e.what());
    }
  }
  return records;
}

std::size_t RunSweepToFiles(const ScenarioConfig& config) {
  const std::vector<SweepRecord> records = RunSweep(config);
  {
    std::ofstream out(config.output_path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + config.output_path);
    WriteCsv(out, records);
    if (!out) throw std::runtime_error("write failed for " + config.output_path);
  }
  if (!config.summary_path.empty()) {
    std::ofstream out(config.summary_path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + config.summary_path);
    WriteSummaryCsv(out, Summarize(records));
    if (!out) throw std::runtime_error("write failed for " + config.summary_path);
  }
  return records.size();
}

Statistic Describe(std::span<const double> values) {
  Statistic s;
  s.count = static_cast<int>(values.size());
  if (values.empty()) return s;
  double sum = 0.0;
  for (double v : values) sum += v;
  s.mean = sum / s.count;
  if (s.count > 1) {
    double squares = 0.0;
    for (double v : values) squares += (v - s.mean) * (v - s.mean);
    s.stddev = std::sqrt(squares / (s.count - 1));
    s.ci_half_width = kZ95 * s.stddev / std::sqrt(static_cast<double>(s.count));
  }
  return s;
}

std::vector<SummaryRow> Summarize(std::span<const SweepRecord> records,
                                  bool converged_only) {
  if (records.empty()) throw std::invalid_argument("no records to summarize");

  struct TrialAccumulator {
    double leader = 0.0;
    double follower_sum = 0.0;
    int follower_count = 0;
    bool converged = true;
    bool errored = false;
  };
  struct Group {
    SummaryRow row;
    std::map<int, TrialAccumulator> trials;
  };
  std::vector<Group> groups;
  std::map<PointKey, std::size_t> index;

  for (const SweepRecord& r : records) {
    auto [it, inserted] = index.try_emplace(KeyOf(r), groups.size());
    if (inserted) {
      Group g;
      g.row.scheme = r.scheme;
      g.row.regime = r.regime;
      g.row.snr_db = r.snr_db;
      g.row.carriers = r.carriers;
      g.row.followers = r.followers;
      groups.push_back(std::move(g));
    }
    TrialAccumulator& t = groups[it->second].trials[r.trial];
    t.converged = t.converged && r.converged;
    t.errored = t.errored || !r.error.empty() || std::isnan(r.utility);
    if (r.player == kLeader) {
      t.leader = r.utility;
    } else {
      t.follower_sum += r.utility;
      ++t.follower_count;
    }
  }

  std::vector<SummaryRow> rows;
  for (Group& g : groups) {
    std::vector<double> leader, follower;
    g.row.trials = static_cast<int>(g.trials.size());
    for (const auto& [trial, t] : g.trials) {
      g.row.converged_trials += t.converged;
      if (t.errored || (converged_only && !t.converged)) continue;
      leader.push_back(t.leader);
      if (t.follower_count > 0) follower.push_back(t.follower_sum / t.follower_count);
    }
    g.row.convergence_rate =
        static_cast<double>(g.row.converged_trials) / g.row.trials;
    g.row.leader = Describe(leader);
    g.row.follower = Describe(follower);
    rows.push_back(g.row);
  }
  return rows;
}

void WriteSummaryCsv(std::ostream& out, std::span<const SummaryRow> rows) {
  out << "scheme,regime,snr_db,carriers,followers,trials,convergence_rate,"
         "leader_mean,leader_std,leader_ci95,follower_mean,follower_std,"
         "follower_ci95\n";
  for (const SummaryRow& r : rows) {
    out << SchemeName(r.scheme) << ',' << RegimeName(r.regime) << ','
        << FormatDouble(r.snr_db) << ',' << r.carriers << ',' << r.followers
        << ',' << r.trials << ',' << FormatDouble(r.convergence_rate) << ','
        << FormatDouble(r.leader.mean) << ',' << FormatDouble(r.leader.stddev)
        << ',' << FormatDouble(r.leader.ci_half_width) << ','
        << FormatDouble(r.follower.mean) << ','
        << FormatDouble(r.follower.stddev) << ','
        << FormatDouble(r.follower.ci_half_width) << '\n';
  }
}

std::vector<PairedComparison> CompareLeaderUtility(
    std::span<const SweepRecord> records, Scheme first, Scheme second) {
  struct Pair {
    double first = 0.0, second = 0.0;
    bool has_first = false, has_second = false;
  };
  std::map<std::pair<int, double>, std::size_t> order;
  std::vector<std::pair<std::pair<int, double>, std::map<int, Pair>>> points;
  for (const SweepRecord& r : records) {
    if (r.player != kLeader || (r.scheme != first && r.scheme != second)) {
      continue;
    }
    const auto key = std::make_pair(r.carriers, r.snr_db);
    auto [it, inserted] = order.try_emplace(key, points.size());
    if (inserted) points.push_back({key, {}});
    Pair& p = points[it->second].second[r.trial];
    const bool usable = r.converged && r.error.empty() && !std::isnan(r.utility);
    if (r.scheme == first) {
      p.first = r.utility;
      p.has_first = usable;
    } else {
      p.second = r.utility;
      p.has_second = usable;
    }
  }
  std::vector<PairedComparison> out;
  for (const auto& [key, trials] : points) {
    std::vector<double> differences;
    for (const auto& [trial, p] : trials) {
      if (p.has_first && p.has_second) differences.push_back(p.first - p.second);
    }
    PairedComparison c;
    c.carriers = key.first;
    c.snr_db = key.second;
    c.pairs = static_cast<int>(differences.size());
    c.difference = Describe(differences);
    out.push_back(c);
  }
  return out;
}

TrendReport CheckCarrierTrend(std::span<const SummaryRow> rows, Scheme scheme,
                              TrendTarget target) {
  std::map<double, std::vector<const SummaryRow*>> by_snr;
  for (const SummaryRow& r : rows) {
    if (r.scheme == scheme) by_snr[r.snr_db].push_back(&r);
  }
  TrendReport report;
  for (auto& [snr, series] : by_snr) {
    std::sort(series.begin(), series.end(),
              [](const SummaryRow* a, const SummaryRow* b) {
                return a->carriers < b->carriers;
              });
    for (std::size_t i = 1; i < series.size(); ++i) {
      const Statistic& from = target == TrendTarget::kLeader
                                  ? series[i - 1]->leader
                                  : series[i - 1]->follower;
      const Statistic& to = target == TrendTarget::kLeader ? series[i]->leader
                                                           : series[i]->follower;
      TrendStep step;
      step.from_carriers = series[i - 1]->carriers;
      step.to_carriers = series[i]->carriers;
      step.from_mean = from.mean;
      step.to_mean = to.mean;
      step.slack = std::hypot(from.ci_half_width, to.ci_half_width);
      step.decreased = to.mean < from.mean;
      step.within_slack = !step.decreased || from.mean - to.mean <= step.slack;
      report.holds = report.holds && step.within_slack;
      report.steps.push_back(step);
    }
  }
  return report;
}

CsvVerification VerifyCsv(const ScenarioConfig& config,
                          std::span<const SweepRecord> records) {
  const EfficiencyModel model(config.exponent);
  CsvVerification out;

  using TrialKey = std::tuple<int, int, int, double, int, int, std::uint64_t>;
  std::map<TrialKey, std::size_t> index;
  std::vector<std::vector<const SweepRecord*>> trials;
  for (const SweepRecord& r : records) {
    const TrialKey key{static_cast<int>(r.scheme), static_cast<int>(r.regime),
                       r.carriers,   r.snr_db,
                       r.followers,  r.trial,
                       r.seed};
    auto [it, inserted] = index.try_emplace(key, trials.size());
    if (inserted) trials.emplace_back();
    trials[it->second].push_back(&r);
  }

  for (const auto& rows : trials) {
    const SweepRecord& head = *rows.front();
    std::ostringstream label;
    label << SchemeName(head.scheme) << " K=" << head.carriers
          << " snr=" << FormatDouble(head.snr_db) << " trial=" << head.trial;
    ++out.trials_checked;
    try {
      InstanceDistribution distribution =
          PointDistribution(config, head.carriers, head.snr_db);
      distribution.followers = head.followers;
      if (static_cast<int>(distribution.rates.size()) != head.followers + 1) {
        distribution.rates.clear();
      }
      const NetworkInstance instance = SampleInstance(distribution, head.seed);
      const SchemeOutcome outcome = RunScheme(instance, model, head.scheme,
                                              head.regime, config.iteration);
      for (const SweepRecord* r : rows) {
        if (r->player < 0 || r->player >= instance.players()) {
          throw std::runtime_error("player index out of range");
        }
        const double expected = outcome.equilibrium.utility[r->player];
        const double recorded = r->utility;
        const bool same =
            (std::isnan(expected) && std::isnan(recorded)) ||
            std::abs(expected - recorded) <=
                1e-9 * std::max(std::abs(expected), 1e-300);
        if (!same ||
            r->active_carrier != outcome.equilibrium.active_carrier[r->player] ||
            r->converged != outcome.converged) {
          ++out.mismatches;
          out.messages.push_back(label.str() + " player=" +
                                 std::to_string(r->player) +
                                 ": recorded result does not reproduce");
        }
      }
      if (SelectedForVerification(head.seed, config.verify_fraction)) {
        const std::vector<Verdict> verdicts =
            VerifyOutcome(instance, model, head.scheme, head.regime, outcome,
                          config.verify_grid_size);
        bool checked = false;
        bool failed = false;
        for (Verdict v : verdicts) {
          checked = checked || v != Verdict::kNotChecked;
          failed = failed || v == Verdict::kFail;
        }
        if (checked) ++out.oracle_checked;
        if (failed) {
          ++out.oracle_failures;
          out.messages.push_back(label.str() + ": oracle found a profitable deviation");
        }
      }
    } catch (const std::exception& e) {
      ++out.mismatches;
      out.messages.push_back(label.str() + ": " + e.what());
    }
  }
  return out;
}

}  // namespace hetgame
