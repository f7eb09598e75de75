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
#include <limits>
#include <stdexcept>

#include "doctest.h"
#include "hetgame/baselines.h"
#include "hetgame/dense_eq.h"
#include "hetgame/oracle.h"
#include "hetgame/sparse_eq.h"
#include "support.h"

using namespace hetgame;

TEST_CASE("power grid") {
  const auto grid = GeometricPowerGrid(2.0, 9);
  REQUIRE(grid.size() == 9);
  CHECK(grid.front() == doctest::Approx(2e-4));
  CHECK(grid.back() == doctest::Approx(2e4));
  CHECK(grid[4] == doctest::Approx(2.0));
  for (std::size_t i = 1; i < grid.size(); ++i) CHECK(grid[i] > grid[i - 1]);
  CHECK_THROWS_AS(GeometricPowerGrid(1.0, 1), std::invalid_argument);

  // Odd sizes nest: every point of the 151 grid is in the 301 grid.
  const auto coarse = GeometricPowerGrid(0.37, 151);
  const auto fine = GeometricPowerGrid(0.37, 301);
  for (std::size_t i = 0; i < coarse.size(); ++i) {
    CHECK(coarse[i] == fine[2 * i]);
  }
}

TEST_CASE("relative gain") {
  CHECK(RelativeGain(1.1, 1.0) == doctest::Approx(0.1));
  CHECK(RelativeGain(0.9, 1.0) < 0.0);
  CHECK(RelativeGain(1.0, 0.0) == std::numeric_limits<double>::infinity());
  CHECK(RelativeGain(0.0, 0.0) == 0.0);
}

TEST_CASE("follower oracle") {
  EfficiencyModel m(2);
  const NetworkInstance inst({{2.0, 1.0, 0.5}, {3.0, 1.0, 0.2}, {1.0, 2.0, 0.4}},
                             {{1.0, 0.5, 0.1}, {0.3, 0.2, 0.1}, {0.2, 0.2, 0.2}},
                             1.0);
  const EquilibriumResult r = SolveSparse(inst, m);
  OracleOptions exact;
  exact.tolerance = 1e-6;
  for (int f = 1; f < inst.players(); ++f) {
    const DeviationReport rep = VerifyFollower(inst, m, f, r.allocation, exact);
    CHECK(rep.passed);
    CHECK(rep.closed_form_utility >= rep.grid_best_utility);
    CHECK(rep.relative_gain == doctest::Approx(0.0).epsilon(1e-12));
  }

  PowerAllocation halved = r.allocation;
  const int k = halved.ActiveCarrier(1);
  halved.Set(1, k, 0.5 * halved.at(1, k));
  const DeviationReport worse = VerifyFollower(inst, m, 1, halved, exact);
  CHECK_FALSE(worse.passed);
  CHECK(worse.relative_gain > 0.0);

  PowerAllocation silent = r.allocation;
  silent.ClearRow(2);
  const DeviationReport mute = VerifyFollower(inst, m, 2, silent, exact);
  CHECK_FALSE(mute.passed);
  CHECK(std::isinf(mute.relative_gain));
  CHECK_FALSE(CheckFollowerCarrierStability(inst, m, 2, silent).passed);

  OracleOptions tiny;
  tiny.grid_size = 50;
  CHECK_THROWS_AS(VerifyFollower(inst, m, 1, r.allocation, tiny),
                  std::invalid_argument);
}

TEST_CASE("carrier stability catches a wrong carrier") {
  EfficiencyModel m(2);
  const NetworkInstance inst({{2.0, 1.0}, {3.0, 1.0}}, {{0.0, 0.0}, {0.0, 0.0}},
                             1.0);
  PowerAllocation p(2, 2);
  p.Set(0, 0, 0.5);
  p.Set(1, 1, m.gamma_star());
  const DeviationReport rep = CheckFollowerCarrierStability(inst, m, 1, p);
  CHECK_FALSE(rep.passed);
  CHECK(rep.deviating_carrier == 0);
  CHECK(rep.relative_gain == doctest::Approx(2.0));
  p.ClearRow(1);
  p.Set(1, 0, m.gamma_star() / 3.0);
  CHECK(CheckFollowerCarrierStability(inst, m, 1, p).passed);
}

TEST_CASE("nash oracle on a one-player game") {
  EfficiencyModel m(3);
  const NetworkInstance inst({{1.0, 2.0}}, {{0.0, 0.0}}, 1.0);
  const BaselineResult r = SolveNash(inst, m, Regime::kDense);
  const auto reps =
      VerifyNash(inst, m, r.equilibrium.allocation, Regime::kDense, {});
  REQUIRE(reps.size() == 1);
  CHECK(reps[0].passed);
  // The closed-form leader beats every grid point.
  CHECK(reps[0].relative_gain <= 0.0);
}

TEST_CASE("a Stackelberg leader need not be a Nash best response") {
  EfficiencyModel m(2);
  const NetworkInstance inst({{2.0, 1.0}, {3.0, 1.0}}, {{1.0, 0.5}, {1.0, 0.2}},
                             1.0);
  const DenseEquilibrium d = SolveDense(inst, m);
  const auto reps = VerifyNash(inst, m, d.equilibrium.allocation,
                               Regime::kDense, OracleOptions{});
  REQUIRE(reps.size() == 2);
  // The committed eviction power overshoots the leader's simultaneous-move
  // best response.
  CHECK_FALSE(reps[0].passed);
  CHECK(reps[1].passed);
}

TEST_CASE("brute force agrees with the sparse closed form") {
  EfficiencyModel m(2);
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    CAPTURE(seed);
    const NetworkInstance inst = testing::MixedInstance(seed, 2, 5, 3, 0.5);
    const EquilibriumResult s = SolveSparse(inst, m);
    const PowerAllocation brute =
        BruteForceStackelberg(inst, m, Regime::kSparse, 601);
    const double ub = Utility(inst, m, 0, brute, Regime::kSparse);
    CHECK(ub <= s.utility[0] * (1 + 1e-12));
    CHECK(testing::RelativeDifference(ub, s.utility[0]) < 5e-3);

    // With no follower-to-leader gain the dense search is the same search.
    const NetworkInstance quiet = testing::WithoutFollowerCross(inst);
    CHECK(BruteForceStackelberg(quiet, m, Regime::kDense, 301) ==
          BruteForceStackelberg(quiet, m, Regime::kSparse, 301));
  }
}

TEST_CASE("grid refinement tightens the gap to the dense solution") {
  EfficiencyModel m(2);
  double total[3] = {0.0, 0.0, 0.0};
  for (std::uint64_t seed = 1; seed <= 30; ++seed) {
    CAPTURE(seed);
    const NetworkInstance inst = testing::MixedInstance(seed, 2, 6, 5, 0.5);
    const double solved = SolveDense(inst, m).equilibrium.utility[0];
    double prev = std::numeric_limits<double>::infinity();
    int i = 0;
    for (int size : {151, 301, 601}) {
      const PowerAllocation brute =
          BruteForceStackelberg(inst, m, Regime::kDense, size);
      const double gap =
          (solved - Utility(inst, m, 0, brute, Regime::kDense)) / solved;
      CHECK(gap >= -1e-12);
      CHECK(gap <= prev);
      prev = gap;
      total[i++] += gap;
    }
  }
  CHECK(total[2] < total[1]);
  CHECK(total[1] < total[0]);
}
