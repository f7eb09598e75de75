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

// Brute-force certification of equilibria. Searches replace the claimed action
// of one player (or the leader's commitment, with followers re-responding) by
// actions drawn from geometric power grids and report the best improvement.

#ifndef HETGAME_ORACLE_H_
#define HETGAME_ORACLE_H_

#include <vector>

#include "hetgame/efficiency.h"
#include "hetgame/model.h"

namespace hetgame {

struct OracleOptions {
  // Points per carrier, spread over 1e-4..1e4 times the gamma*-scale power.
  int grid_size = 300;
  // Pass iff relative_gain <= tolerance.
  double tolerance = 1e-3;
  // Two-carrier leader splits: total powers per pair and split fractions.
  bool probe_splits = true;
  int split_grid_size = 30;
  int split_fractions = 11;
};

struct DeviationReport {
  int player = kLeader;
  double best_found_utility = 0.0;
  double claimed_utility = 0.0;
  // (best_found - claimed) / claimed; +inf when the claim is 0 and a positive
  // utility exists.
  double relative_gain = 0.0;
  // The best deviation found, as the deviating player's full power row.
  std::vector<double> deviating_row;
  int deviating_carrier = kNoCarrier;
  double tolerance = 0.0;
  bool passed = true;
  // Follower checks only: the grid's best and the closed-form best response.
  double grid_best_utility = 0.0;
  double closed_form_utility = 0.0;
};

// Geometric grid of `size` points from 1e-4 * scale to 1e4 * scale.
std::vector<double> GeometricPowerGrid(double scale, int size);

double RelativeGain(double best_found, double claimed);

// Unilateral follower deviations: the closed-form best response to the
// claimed leader row plus every carrier x grid power with the rest fixed.
// grid_size >= 100.
DeviationReport VerifyFollower(const NetworkInstance& instance,
                               const EfficiencyModel& model, int follower,
                               const PowerAllocation& allocation,
                               const OracleOptions& options);

// A follower cannot gain by moving to another carrier at its gamma* level
// there, given the claimed leader row. Closed form; tolerance is relative.
DeviationReport CheckFollowerCarrierStability(const NetworkInstance& instance,
                                              const EfficiencyModel& model,
                                              int follower,
                                              const PowerAllocation& allocation,
                                              double tolerance = 1e-9);

// Bi-level leader check: every single-carrier commitment on the grid (and
// two-carrier splits if enabled) with all followers re-responding.
DeviationReport VerifyLeaderStackelberg(const NetworkInstance& instance,
                                        const EfficiencyModel& model,
                                        const PowerAllocation& allocation,
                                        Regime regime,
                                        const OracleOptions& options);

// One unilateral-deviation report per player, others held fixed.
std::vector<DeviationReport> VerifyNash(const NetworkInstance& instance,
                                        const EfficiencyModel& model,
                                        const PowerAllocation& allocation,
                                        Regime regime,
                                        const OracleOptions& options);

// Best single-carrier leader commitment on the grid and the induced follower
// responses. Meant for small games (F <= 5, K <= 6).
PowerAllocation BruteForceStackelberg(const NetworkInstance& instance,
                                      const EfficiencyModel& model,
                                      Regime regime, int grid_size);

}  // namespace hetgame

#endif  // HETGAME_ORACLE_H_
