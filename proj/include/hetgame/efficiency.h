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

#ifndef HETGAME_EFFICIENCY_H_
#define HETGAME_EFFICIENCY_H_

#include <stdexcept>
#include <string>

namespace hetgame {

class NetworkInstance;

inline constexpr double kDefaultRootTolerance = 1e-12;

// Raised when a scalar fixed-point equation has no positive root on the
// search range, i.e. the efficiency function breaks the sigmoidal premise.
class RootNotFound : public std::runtime_error {
 public:
  explicit RootNotFound(const std::string& what) : std::runtime_error(what) {}
};

// Packet-success efficiency function f(x) = (1 - e^{-x})^M.
//
// M >= 2 is enforced at construction: it gives f(0) = f'(0+) = 0, so the
// energy-efficiency utility tends to zero as the transmit power vanishes and
// x f'(x) = f(x) has exactly one positive root. The root (the SINR target
// gamma*) is solved once and cached.
class EfficiencyModel {
 public:
  explicit EfficiencyModel(int exponent);

  int exponent() const { return exponent_; }

  // f(x). Throws std::domain_error for x < 0.
  double Value(double x) const;
  // f'(x) = M e^{-x} (1 - e^{-x})^{M-1}. Throws std::domain_error for x < 0.
  double Derivative(double x) const;

  // Cached root of x f'(x) = f(x), solved to kDefaultRootTolerance.
  double gamma_star() const { return gamma_star_; }

 private:
  int exponent_;
  double gamma_star_;
};

// Positive root of x f'(x) = f(x). The result satisfies
// |x f'(x) - f(x)| < tol. Throws std::invalid_argument for tol <= 0 and
// RootNotFound if no sign change exists on a geometric grid up to 1e3.
double SolveGammaStar(const EfficiencyModel& model,
                      double tol = kDefaultRootTolerance);

struct GammaDoubleStar {
  double value = 0.0;
  // a * value < 1. When false the implied leader power is not positive and
  // the candidate must be discarded by the caller.
  bool admissible = true;
};

// Positive root of (x - a x^2) f'(x) = f(x); equals the gamma* root when
// a == 0. Throws RootNotFound when no root exists.
GammaDoubleStar SolveGammaDoubleStar(const EfficiencyModel& model, double a,
                                     double tol = kDefaultRootTolerance);

struct AssumptionA1Report {
  bool passed = false;
  // 1: f'(0+) = 0 holds. 2: the curvature inequality was needed.
  int branch = 0;
  // 2 gamma* max_k [(h0^k / g0^k) sum_f (hf^k / gf^k)].
  double interference_bound = 0.0;
};

AssumptionA1Report CheckAssumptionA1(const EfficiencyModel& model,
                                     const NetworkInstance& instance);

}  // namespace hetgame

#endif  // HETGAME_EFFICIENCY_H_
