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


// Independent reference computations shared by the tests. Nothing here calls
// into the solvers it is used to check.

#ifndef HETGAME_TESTS_SUPPORT_H_
#define HETGAME_TESTS_SUPPORT_H_

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <vector>

#include "hetgame/model.h"

namespace hetgame::testing {

inline double RelativeDifference(double a, double b) {
  const double scale = std::max(std::abs(a), std::abs(b));
  return scale == 0.0 ? 0.0 : std::abs(a - b) / scale;
}

// Raw residual x f'(x) - f(x) for f = (1 - e^{-x})^M, in long double.
inline long double RawResidual(int m, long double x, long double a = 0.0L) {
  const long double s = 1.0L - std::exp(-x);
  const long double f = std::pow(s, m);
  const long double df = m * std::exp(-x) * std::pow(s, m - 1);
  return (x - a * x * x) * df - f;
}

// Plain bisection on the raw residual over [lo, hi]; the caller supplies a
// bracket with residual(lo) > 0 > residual(hi).
inline double BisectRoot(int m, double lo, double hi, double a = 0.0) {
  long double l = lo, h = hi;
  for (int i = 0; i < 200; ++i) {
    const long double mid = 0.5L * (l + h);
    if (RawResidual(m, mid, a) > 0.0L) {
      l = mid;
    } else {
      h = mid;
    }
  }
  return static_cast<double>(0.5L * (l + h));
}

// Argmax of f(x)/x over a uniform grid of `points` points on (0, upper].
inline double GridArgmaxRatio(int m, int points, double upper) {
  double best_x = 0.0, best = -1.0;
  const double step = upper / points;
  for (int i = 1; i <= points; ++i) {
    const double x = step * i;
    const double ratio = std::pow(-std::expm1(-x), m) / x;
    if (ratio > best) {
      best = ratio;
      best_x = x;
    }
  }
  return best_x;
}

// Sign changes of the raw residual across a geometric grid on [lo, hi].
inline int CountSignChanges(int m, double a, double lo, double hi, int points) {
  int changes = 0;
  const double ratio = std::pow(hi / lo, 1.0 / (points - 1));
  long double prev = RawResidual(m, lo, a);
  for (int i = 1; i < points; ++i) {
    const long double r = RawResidual(m, lo * std::pow(ratio, i), a);
    if ((prev > 0.0L) != (r > 0.0L) && r != 0.0L) ++changes;
    if (r != 0.0L) prev = r;
  }
  return changes;
}

// Mixed random small games of the shape the certification runs use.
inline NetworkInstance MixedInstance(std::uint64_t seed, int min_carriers,
                                     int max_carriers, int max_followers,
                                     double mean_cross, double snr_db = 10.0) {
  InstanceDistribution d;
  const std::uint64_t h = seed * 0x9e3779b97f4a7c15ULL;
  d.followers = 1 + static_cast<int>((h >> 20) % max_followers);
  const int lo = std::max(min_carriers, d.followers + 1);
  const int hi = std::max(lo, max_carriers);
  d.carriers = lo + static_cast<int>((h >> 40) % (hi - lo + 1));
  d.mean_cross = mean_cross;
  d.snr_db = snr_db;
  return SampleInstance(d, seed);
}

inline NetworkInstance WithoutFollowerCross(const NetworkInstance& instance) {
  std::vector<std::vector<double>> gain(instance.players()),
      cross(instance.players());
  for (int n = 0; n < instance.players(); ++n) {
    for (int k = 0; k < instance.carriers(); ++k) {
      gain[n].push_back(instance.gain(n, k));
      cross[n].push_back(n == kLeader ? instance.cross(n, k) : 0.0);
    }
  }
  return NetworkInstance(gain, cross, instance.noise());
}

}  // namespace hetgame::testing

#endif  // HETGAME_TESTS_SUPPORT_H_
