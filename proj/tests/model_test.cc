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
#include <stdexcept>

#include "doctest.h"
#include "hetgame/model.h"

using namespace hetgame;

namespace {

NetworkInstance TwoPlayer(double noise = 1.0) {
  return NetworkInstance({{2.0, 1.0}, {3.0, 1.0}}, {{1.0, 0.5}, {1.0, 0.2}},
                         noise);
}

}  // namespace

TEST_CASE("instance validation") {
  CHECK_NOTHROW(TwoPlayer());
  // K < F + 1.
  CHECK_THROWS_AS(NetworkInstance({{1.0}, {1.0}}, {{0.0}, {0.0}}, 1.0),
                  std::invalid_argument);
  CHECK_THROWS_AS(NetworkInstance({{0.0, 1.0}}, {{0.0, 0.0}}, 1.0),
                  std::invalid_argument);
  CHECK_THROWS_AS(NetworkInstance({{1.0, 1.0}}, {{-0.1, 0.0}}, 1.0),
                  std::invalid_argument);
  CHECK_THROWS_AS(NetworkInstance({{1.0, 1.0}}, {{0.0, 0.0}}, 0.0),
                  std::invalid_argument);
  CHECK_THROWS_AS(NetworkInstance({{1.0, NAN}}, {{0.0, 0.0}}, 1.0),
                  std::invalid_argument);
  CHECK_THROWS_AS(NetworkInstance({{1.0, 1.0}}, {{0.0}}, 1.0),
                  std::invalid_argument);
  CHECK_THROWS_AS(NetworkInstance({{1.0, 1.0}}, {{0.0, 0.0}}, 1.0, {1.0, 2.0}),
                  std::invalid_argument);
  CHECK_THROWS_AS(NetworkInstance({{1.0, 1.0}}, {{0.0, 0.0}}, 1.0, {0.0}),
                  std::invalid_argument);

  const NetworkInstance inst = TwoPlayer(2.0);
  CHECK(inst.carriers() == 2);
  CHECK(inst.followers() == 1);
  CHECK(inst.gain(1, 0) == 3.0);
  CHECK(inst.cross(1, 1) == 0.2);
  CHECK(inst.rate(1) == 1.0);
  CHECK(inst.WithNoise(1.0).Digest() == TwoPlayer().Digest());
  CHECK(inst.Digest() != TwoPlayer().Digest());
}

TEST_CASE("allocation") {
  PowerAllocation p(2, 3);
  CHECK(p.ActiveCarrier(0) == kNoCarrier);
  p.Set(0, 2, 0.5);
  p.Set(1, 0, 0.25);
  p.Set(1, 1, 0.75);
  CHECK(p.ActiveCarrier(0) == 2);
  CHECK(p.NonzeroCount(1) == 2);
  CHECK(p.RowTotal(1) == 1.0);
  p.ClearRow(1);
  CHECK(p.RowTotal(1) == 0.0);
  CHECK_THROWS_AS(p.Set(0, 0, -1.0), std::invalid_argument);
  CHECK_THROWS_AS(p.Set(0, 0, INFINITY), std::invalid_argument);
  CHECK_THROWS_AS(PowerAllocation(0, 1), std::invalid_argument);
}

TEST_CASE("SINR arithmetic") {
  NetworkInstance one({{2.0, 1.0}}, {{0.0, 0.0}}, 1.0);
  PowerAllocation p(1, 2);
  p.Set(0, 0, 0.5);
  CHECK(SparseLeaderSinr(one, p, 0) == 1.0);
  CHECK(SparseLeaderSinr(one, p, 1) == 0.0);

  NetworkInstance f({{2.0, 1.0}, {3.0, 1.0}}, {{0.0, 0.0}, {0.0, 0.0}}, 1.0);
  PowerAllocation q(2, 2);
  q.Set(1, 0, 0.418810402875390);
  CHECK(FollowerSinr(f, q, 1, 0) == doctest::Approx(1.25643120862617));
  CHECK(FollowerSinr(f, q, 1, 1) == 0.0);
  q.Set(0, 0, 1.0);
  // No follower cross gain: dense equals sparse.
  CHECK(DenseLeaderSinr(f, q, 0) == SparseLeaderSinr(f, q, 0));

  NetworkInstance loud({{2.0, 1.0}, {3.0, 1.0}}, {{0.0, 0.0}, {1.0, 0.0}},
                       1.0);
  PowerAllocation r(2, 2);
  r.Set(0, 0, 1.0);
  r.Set(1, 0, 1.0);
  CHECK(DenseLeaderSinr(loud, r, 0) == 1.0);
  CHECK(SparseLeaderSinr(loud, r, 0) == 2.0);
  CHECK(Sinr(loud, r, 0, 0, Regime::kDense) == 1.0);
  CHECK(Sinr(loud, r, 0, 0, Regime::kSparse) == 2.0);
  r.ClearRow(1);
  CHECK(DenseLeaderSinr(loud, r, 0) == 2.0);
}

TEST_CASE("utility") {
  EfficiencyModel m(2);
  NetworkInstance inst({{2.0, 1.0}, {3.0, 1.0}}, {{0.0, 0.0}, {0.0, 0.0}},
                       1.0, {2.0, 1.0});
  PowerAllocation p(2, 2);
  CHECK(Utility(inst, m, 0, p, Regime::kSparse) == 0.0);
  p.Set(0, 0, 0.5);
  // R f(1) / 0.5.
  const double expected = 2.0 * std::pow(1.0 - std::exp(-1.0), 2) / 0.5;
  CHECK(Utility(inst, m, 0, p, Regime::kSparse) ==
        doctest::Approx(expected).epsilon(1e-14));
  p.Set(0, 1, 0.5);
  const double both = 2.0 *
                      (std::pow(1.0 - std::exp(-1.0), 2) +
                       std::pow(1.0 - std::exp(-0.5), 2)) /
                      1.0;
  CHECK(Utility(inst, m, 0, p, Regime::kSparse) ==
        doctest::Approx(both).epsilon(1e-14));
}

TEST_CASE("best and second carriers") {
  auto rank = [](std::vector<double> g) {
    std::vector<double> zero(g.size(), 0.0);
    return BestAndSecondCarriers(NetworkInstance({g}, {zero}, 1.0), 0);
  };
  CHECK(rank({2, 1}).best == 0);
  CHECK(rank({2, 1}).second == 1);
  CHECK(rank({1, 3, 2}).best == 1);
  CHECK(rank({1, 3, 2}).second == 2);
  CHECK(rank({2, 2}).best == 0);
  CHECK(rank({2, 2}).second == 1);
  CHECK(rank({1, 2, 2}).second == 2);
  CHECK_THROWS_AS(rank({1}), std::invalid_argument);
}

TEST_CASE("sampling") {
  InstanceDistribution d;
  const NetworkInstance a = SampleInstance(d, 7);
  const NetworkInstance b = SampleInstance(d, 7);
  CHECK(a.Digest() == b.Digest());
  CHECK(SampleInstance(d, 8).Digest() != a.Digest());
  CHECK(a.carriers() == 5);
  CHECK(a.followers() == 4);
  CHECK(a.noise() == doctest::Approx(0.1).epsilon(1e-14));

  d.mean_cross = 0.0;
  const NetworkInstance quiet = SampleInstance(d, 3);
  for (int n = 0; n < quiet.players(); ++n) {
    for (int k = 0; k < quiet.carriers(); ++k) CHECK(quiet.cross(n, k) == 0.0);
  }

  // Sample mean of the exponential gains.
  d.mean_cross = 0.5;
  d.mean_signal = 2.0;
  d.carriers = 50;
  d.followers = 49;
  const NetworkInstance big = SampleInstance(d, 11);
  double signal = 0.0, cross = 0.0;
  for (int n = 0; n < big.players(); ++n) {
    for (int k = 0; k < big.carriers(); ++k) {
      signal += big.gain(n, k);
      cross += big.cross(n, k);
    }
  }
  CHECK(signal / 2500.0 == doctest::Approx(2.0).epsilon(0.05));
  CHECK(cross / 2500.0 == doctest::Approx(0.5).epsilon(0.05));

  d.mean_signal = 0.0;
  CHECK_THROWS_AS(SampleInstance(d, 1), std::invalid_argument);
  d.mean_signal = 1.0;
  d.mean_cross = -1.0;
  CHECK_THROWS_AS(SampleInstance(d, 1), std::invalid_argument);
}

TEST_CASE("regime names") {
  CHECK(ParseRegime("sparse") == Regime::kSparse);
  CHECK(ParseRegime(RegimeName(Regime::kDense)) == Regime::kDense);
  CHECK_THROWS_AS(ParseRegime("medium"), std::invalid_argument);
}
