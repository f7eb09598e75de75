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

#include "hetgame/efficiency.h"

#include <algorithm>
#include <cmath>
#include <string>

#include "hetgame/model.h"

namespace hetgame {
namespace {

constexpr double kScanUpper = 1e3;
constexpr int kScanPoints = 400;
constexpr int kMaxBisections = 400;

// For x > 0, sign of (x - a x^2) f'(x) - f(x) for f = (1 - e^{-x})^M.
// Dividing out e^{-x} (1 - e^{-x})^{M-1} > 0 leaves M x (1 - a x) - expm1(x),
// which stays well conditioned where f itself underflows.
double ReducedResidual(int exponent, double a, double x) {
  return exponent * x * (1.0 - a * x) - std::expm1(x);
}

double SolveFixedPoint(const EfficiencyModel& model, double a, double tol) {
  if (!(tol > 0.0)) {
    throw std::invalid_argument("root tolerance must be positive");
  }
  if (!(a >= 0.0) || !std::isfinite(a)) {
    throw std::invalid_argument("quadratic coefficient must be finite and >= 0");
  }
  const int m = model.exponent();
  // Near zero the reduced residual is ~ (M - 1) x > 0; start well inside that
  // region even when a is large.
  const double lower = 1e-6 * std::min(1.0, 1.0 / std::max(a, 1e-300));
  const double upper = a > 0.0 ? std::min(kScanUpper, 1.0 / a) : kScanUpper;
  const double ratio = std::pow(upper / lower, 1.0 / (kScanPoints - 1));

  double lo = lower;
  double r_lo = ReducedResidual(m, a, lo);
  double hi = 0.0;
  bool bracketed = false;
  for (int i = 1; i < kScanPoints; ++i) {
    const double x = i == kScanPoints - 1 ? upper : lower * std::pow(ratio, i);
    const double r = ReducedResidual(m, a, x);
    if (r_lo > 0.0 && r <= 0.0) {
      hi = x;
      bracketed = true;
      break;
    }
    lo = x;
    r_lo = r;
  }
  if (!bracketed) {
    throw RootNotFound("no positive root of the efficiency fixed point for M=" +
                       std::to_string(m) + ", a=" + std::to_string(a));
  }
  for (int i = 0; i < kMaxBisections && hi - lo > 1e-3 * tol; ++i) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    if (ReducedResidual(m, a, mid) > 0.0) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

}  // namespace

EfficiencyModel::EfficiencyModel(int exponent) : exponent_(exponent) {
  if (exponent < 2) {
    throw std::invalid_argument(
        "efficiency exponent M must be an integer >= 2, got " +
        std::to_string(exponent));
  }
  gamma_star_ = SolveFixedPoint(*this, 0.0, kDefaultRootTolerance);
}

double EfficiencyModel::Value(double x) const {
  if (!(x >= 0.0)) throw std::domain_error("efficiency argument must be >= 0");
  return std::pow(-std::expm1(-x), exponent_);
}

double EfficiencyModel::Derivative(double x) const {
  if (!(x >= 0.0)) throw std::domain_error("efficiency argument must be >= 0");
  return exponent_ * std::exp(-x) * std::pow(-std::expm1(-x), exponent_ - 1);
}

double SolveGammaStar(const EfficiencyModel& model, double tol) {
  return SolveFixedPoint(model, 0.0, tol);
}

GammaDoubleStar SolveGammaDoubleStar(const EfficiencyModel& model, double a,
                                     double tol) {
  GammaDoubleStar out;
  out.value = SolveFixedPoint(model, a, tol);
  out.admissible = a * out.value < 1.0;
  return out;
}

AssumptionA1Report CheckAssumptionA1(const EfficiencyModel& model,
                                     const NetworkInstance& instance) {
  AssumptionA1Report report;
  double worst = 0.0;
  for (int k = 0; k < instance.carriers(); ++k) {
    double follower_sum = 0.0;
    for (int f = 1; f < instance.players(); ++f) {
      follower_sum += instance.cross(f, k) / instance.gain(f, k);
    }
    worst = std::max(worst,
                     instance.cross(kLeader, k) / instance.gain(kLeader, k) *
                         follower_sum);
  }
  report.interference_bound = 2.0 * model.gamma_star() * worst;
  // M >= 2 is a constructor invariant, so f'(0+) = 0 and the first branch
  // always applies; the curvature branch is never reached.
  report.branch = 1;
  report.passed = model.Derivative(0.0) == 0.0;
  return report;
}

}  // namespace hetgame
