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


#include <cmath>
#include <filesystem>
#include <fstream>
#include <random>
#include <set>
#include <sstream>
#include <stdexcept>

#include "doctest.h"
#include "hetgame/harness.h"

using namespace hetgame;

namespace {

ScenarioConfig Small() {
  ScenarioConfig c;
  c.carriers = {3};
  c.followers = 2;
  c.snr_start_db = 0.0;
  c.snr_stop_db = 10.0;
  c.snr_step_db = 10.0;
  c.trials = 6;
  c.verify_fraction = 0.5;
  c.output_path = "";
  return c;
}

std::string Csv(const std::vector<SweepRecord>& records) {
  std::ostringstream out;
  WriteCsv(out, records);
  return out.str();
}

SweepRecord Leader(int trial, double utility, Scheme scheme = Scheme::kNash) {
  SweepRecord r;
  r.scheme = scheme;
  r.trial = trial;
  r.utility = utility;
  r.carriers = 5;
  r.followers = 0;
  return r;
}

}  // namespace

TEST_CASE("config defaults and parsing") {
  ScenarioConfig c;
  CHECK_NOTHROW(c.Validate());
  CHECK(c.SnrPoints() == std::vector<double>{-5, 0, 5, 10, 15, 20, 25});
  CHECK(c.exponent == 2);
  CHECK(c.regime == Regime::kDense);

  std::istringstream text(
      "# comment\n"
      "carriers = 2,3,5  # trailing\n"
      "followers=1\n"
      "\n"
      "snr-db=10\n"
      "schemes=nash,stackelberg,nash\n"
      "regime=sparse\n"
      "rates=2,1\n"
      "m-exponent=4\n"
      "seed=18446744073709551615\n"
      "max-iter=50\n"
      "tol=1e-8\n");
  ApplyConfigText(c, text);
  CHECK(c.carriers == std::vector<int>{2, 3, 5});
  CHECK(c.followers == 1);
  CHECK(c.SnrPoints() == std::vector<double>{10.0});
  CHECK(c.schemes == std::vector<Scheme>{Scheme::kNash, Scheme::kStackelberg});
  CHECK(c.regime == Regime::kSparse);
  CHECK(c.rates == std::vector<double>{2.0, 1.0});
  CHECK(c.exponent == 4);
  CHECK(c.seed == 18446744073709551615ULL);
  CHECK(c.iteration.max_iterations == 50);
  CHECK(c.iteration.tolerance == 1e-8);
  CHECK_NOTHROW(c.Validate());

  CHECK_THROWS_AS(ApplyConfigValue(c, "colour", "red"), std::invalid_argument);
  CHECK_THROWS_AS(ApplyConfigValue(c, "trials", "ten"), std::invalid_argument);
  CHECK_THROWS_AS(ApplyConfigValue(c, "trials", "10x"), std::invalid_argument);
  CHECK_THROWS_AS(ApplyConfigValue(c, "snr-db", "1:2"), std::invalid_argument);
  CHECK_THROWS_AS(ApplyConfigValue(c, "schemes", "auction"),
                  std::invalid_argument);
  std::istringstream broken("trials 10\n");
  CHECK_THROWS_AS(ApplyConfigText(c, broken), std::invalid_argument);
  CHECK_THROWS_AS(ApplyConfigFile(c, "/nonexistent/hetgame.cfg"),
                  std::runtime_error);

  ScenarioConfig bad;
  bad.followers = 5;
  CHECK_THROWS_AS(bad.Validate(), std::invalid_argument);
  bad = {};
  bad.rates = {1.0};
  CHECK_THROWS_AS(bad.Validate(), std::invalid_argument);
  bad = {};
  bad.verify_fraction = 1.5;
  CHECK_THROWS_AS(bad.Validate(), std::invalid_argument);
}

TEST_CASE("sweep points and seeds") {
  ScenarioConfig c = Small();
  c.carriers = {3, 4};
  const auto points = SweepPoints(c);
  REQUIRE(points.size() == 4);
  CHECK(points[1].carriers == 3);
  CHECK(points[1].snr_db == 10.0);
  CHECK(points[2].carriers == 4);
  CHECK(points[3].index == 3);

  std::set<std::uint64_t> seeds;
  for (int p = 0; p < 20; ++p) {
    for (int t = 0; t < 200; ++t) seeds.insert(TrialSeed(1, p, t));
  }
  CHECK(seeds.size() == 4000);
  CHECK(TrialSeed(1, 2, 3) == TrialSeed(1, 2, 3));
  CHECK(TrialSeed(1, 2, 3) != TrialSeed(2, 2, 3));

  int selected = 0;
  for (int t = 0; t < 20000; ++t) {
    selected += SelectedForVerification(TrialSeed(7, 0, t), 0.1);
  }
  CHECK(selected == doctest::Approx(2000).epsilon(0.1));
  CHECK_FALSE(SelectedForVerification(5, 0.0));
  CHECK(SelectedForVerification(5, 1.0));
}

TEST_CASE("single leader record") {
  ScenarioConfig c;
  c.carriers = {2};
  c.followers = 0;
  c.snr_start_db = c.snr_stop_db = 10.0;
  c.trials = 1;
  c.schemes = {Scheme::kStackelberg};
  c.rates = {3.0};
  for (Regime regime : {Regime::kSparse, Regime::kDense}) {
    c.regime = regime;
    const auto records = RunSweep(c);
    REQUIRE(records.size() == 1);
    const NetworkInstance inst =
        SampleInstance(PointDistribution(c, 2, 10.0), records[0].seed);
    CHECK(records[0].instance_digest == inst.Digest());
    const EfficiencyModel m(2);
    const double g = m.gamma_star();
    const double best = std::max(inst.gain(0, 0), inst.gain(0, 1));
    CHECK(records[0].utility ==
          doctest::Approx(m.Value(g) * best * 3.0 / (g * inst.noise()))
              .epsilon(1e-12));
  }
}

TEST_CASE("sweep records are paired and deterministic") {
  ScenarioConfig c = Small();
  const auto a = RunSweep(c);
  // 2 points x 6 trials x 3 schemes x 3 players.
  REQUIRE(a.size() == 108);
  for (std::size_t i = 0; i < a.size(); i += 3) {
    CHECK(a[i].player == 0);
    CHECK(a[i + 2].player == 2);
  }
  for (std::size_t i = 0; i < a.size(); i += 9) {
    CHECK(a[i].instance_digest == a[i + 3].instance_digest);
    CHECK(a[i].instance_digest == a[i + 6].instance_digest);
    CHECK(a[i].scheme == Scheme::kStackelberg);
    CHECK(a[i + 6].scheme == Scheme::kBestChannel);
  }
  bool any_checked = false;
  for (const SweepRecord& r : a) {
    CHECK(r.error.empty());
    if (r.scheme == Scheme::kBestChannel) CHECK(r.verified == Verdict::kNotChecked);
    if (r.scheme == Scheme::kStackelberg && r.verified != Verdict::kNotChecked) {
      any_checked = true;
      CHECK(r.verified == Verdict::kPass);
    }
  }
  CHECK(any_checked);

  c.threads = 4;
  const auto b = RunSweep(c);
  CHECK(Csv(a) == Csv(b));
  c.seed = 2;
  CHECK(Csv(RunSweep(c)) != Csv(a));
}

TEST_CASE("csv round trip") {
  const auto records = RunSweep(Small());
  const std::string text = Csv(records);
  CHECK(text.substr(0, kCsvHeader.size()) == kCsvHeader);
  std::istringstream in(text);
  const auto back = ReadCsv(in);
  REQUIRE(back.size() == records.size());
  for (std::size_t i = 0; i < back.size(); ++i) {
    CHECK(back[i].scheme == records[i].scheme);
    CHECK(back[i].seed == records[i].seed);
    CHECK(back[i].active_carrier == records[i].active_carrier);
    CHECK(back[i].verified == records[i].verified);
    CHECK(back[i].utility ==
          doctest::Approx(records[i].utility).epsilon(1e-11));
  }
  CHECK(Csv(back) == text);

  std::istringstream wrong("a,b\n1,2\n");
  CHECK_THROWS_AS(ReadCsv(wrong), std::runtime_error);
  std::istringstream short_row(std::string(kCsvHeader) + "\nnash,dense,1\n");
  CHECK_THROWS_AS(ReadCsv(short_row), std::runtime_error);
}

TEST_CASE("sweep to files") {
  const auto dir = std::filesystem::temp_directory_path() / "hetgame_harness";
  std::filesystem::create_directories(dir);
  ScenarioConfig c = Small();
  c.output_path = (dir / "a.csv").string();
  c.summary_path = (dir / "s.csv").string();
  CHECK(RunSweepToFiles(c) == 108);
  std::ifstream summary(c.summary_path);
  std::string line;
  int lines = 0;
  while (std::getline(summary, line)) ++lines;
  CHECK(lines == 7);
  c.output_path = (dir / "missing" / "x.csv").string();
  CHECK_THROWS_AS(RunSweepToFiles(c), std::runtime_error);
}

TEST_CASE("csv verification") {
  ScenarioConfig c = Small();
  auto records = RunSweep(c);
  std::istringstream in(Csv(records));
  auto parsed = ReadCsv(in);
  const CsvVerification ok = VerifyCsv(c, parsed);
  CHECK(ok.ok());
  CHECK(ok.trials_checked == 36);
  CHECK(ok.oracle_checked > 0);

  parsed[4].utility *= 1.001;
  const CsvVerification bad = VerifyCsv(c, parsed);
  CHECK_FALSE(bad.ok());
  CHECK(bad.mismatches == 1);
  CHECK(bad.messages.size() == 1);
}

TEST_CASE("summary statistics") {
  CHECK_THROWS_AS(Summarize({}), std::invalid_argument);
  std::vector<SweepRecord> one{Leader(0, 2.5)};
  auto rows = Summarize(one);
  REQUIRE(rows.size() == 1);
  CHECK(rows[0].leader.mean == 2.5);
  CHECK(rows[0].leader.stddev == 0.0);
  CHECK(rows[0].follower.count == 0);

  std::vector<SweepRecord> twice{Leader(0, 2.5), Leader(1, 2.5)};
  rows = Summarize(twice);
  CHECK(rows[0].leader.mean == 2.5);
  CHECK(rows[0].leader.stddev == 0.0);
  CHECK(rows[0].leader.ci_half_width == 0.0);

  std::vector<SweepRecord> mixed{Leader(0, 1.0), Leader(1, 3.0), Leader(2, 5.0)};
  mixed[2].converged = false;
  CHECK(Summarize(mixed)[0].leader.mean == 3.0);
  CHECK(Summarize(mixed)[0].convergence_rate == doctest::Approx(2.0 / 3.0));
  CHECK(Summarize(mixed, true)[0].leader.mean == 2.0);
  CHECK(Summarize(mixed, true)[0].leader.stddev == doctest::Approx(std::sqrt(2.0)));
  mixed[1].error = "boom";
  CHECK(Summarize(mixed, true)[0].leader.count == 1);
}

TEST_CASE("confidence half-width shrinks as one over root n") {
  std::mt19937_64 rng(3);
  std::normal_distribution<double> jitter(0.0, 0.2);
  std::vector<SweepRecord> records;
  for (int t = 0; t < 10000; ++t) records.push_back(Leader(t, 4.0 + jitter(rng)));
  const std::span<const SweepRecord> all(records);
  for (std::size_t n : {100, 400, 625, 2500}) {
    const double small = Summarize(all.first(n))[0].leader.ci_half_width;
    const double large = Summarize(all.first(4 * n))[0].leader.ci_half_width;
    CAPTURE(n);
    CHECK(small / large == doctest::Approx(2.0).epsilon(0.15));
  }
}

TEST_CASE("paired comparison and trend report") {
  std::vector<SweepRecord> records;
  for (int t = 0; t < 4; ++t) {
    records.push_back(Leader(t, 2.0 + t, Scheme::kStackelberg));
    records.push_back(Leader(t, 1.0 + t, Scheme::kNash));
  }
  records.back().converged = false;
  const auto cmp =
      CompareLeaderUtility(records, Scheme::kStackelberg, Scheme::kNash);
  REQUIRE(cmp.size() == 1);
  CHECK(cmp[0].pairs == 3);
  CHECK(cmp[0].difference.mean == 1.0);
  CHECK(cmp[0].difference.stddev == 0.0);

  auto row = [](int k, double mean, double ci) {
    SummaryRow r;
    r.carriers = k;
    r.leader.mean = mean;
    r.leader.ci_half_width = ci;
    r.follower = r.leader;
    return r;
  };
  std::vector<SummaryRow> rising{row(2, 1.0, 0.1), row(5, 2.0, 0.1),
                                 row(3, 1.5, 0.1)};
  TrendReport up = CheckCarrierTrend(rising, Scheme::kStackelberg,
                                     TrendTarget::kLeader);
  CHECK(up.holds);
  REQUIRE(up.steps.size() == 2);
  CHECK(up.steps[0].to_carriers == 3);

  std::vector<SummaryRow> dip{row(2, 1.0, 0.1), row(3, 0.9, 0.1)};
  TrendReport small = CheckCarrierTrend(dip, Scheme::kStackelberg,
                                        TrendTarget::kFollower);
  CHECK(small.holds);
  CHECK(small.steps[0].decreased);
  dip[1].leader.mean = 0.5;
  CHECK_FALSE(
      CheckCarrierTrend(dip, Scheme::kStackelberg, TrendTarget::kLeader).holds);
}
