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

// Comparison schemes without hierarchy: simultaneous-move Nash play reached by
// best-response dynamics, and the best-channel heuristic.

#ifndef HETGAME_BASELINES_H_
#define HETGAME_BASELINES_H_

#include "hetgame/efficiency.h"
#include "hetgame/model.h"

namespace hetgame {

struct IterationOptions {
  int max_iterations = 1000;
  // On the largest absolute power change within one sweep.
  double tolerance = 1e-10;
};

struct IterationReport {
  bool converged = false;
  int iterations = 0;
  double final_change = 0.0;
};

struct BaselineResult {
  EquilibriumResult equilibrium;
  IterationReport report;
};

// Interference seen by `player` on `carrier` under the regime: sum_f hf pf at
// the leader (zero when sparse), h0 p0 at a follower.
double Interference(const NetworkInstance& instance,
                    const PowerAllocation& allocation, int player, int carrier,
                    Regime regime);

// All power on argmax_k g_n^k / (sigma^2 + I_n^k), sized for SINR gamma*
// there, with every other row held fixed.
std::vector<double> PlayerBestResponse(const NetworkInstance& instance,
                                       const EfficiencyModel& model,
                                       const PowerAllocation& allocation,
                                       int player, Regime regime);

// Round-robin best-response dynamics from all-zero powers, leader first and
// followers by index. A run that hits max_iterations returns the last iterate
// with converged = false; cycling is possible.
BaselineResult SolveNash(const NetworkInstance& instance,
                         const EfficiencyModel& model, Regime regime,
                         const IterationOptions& options = {});

// Every player is pinned to its largest own-gain carrier B_n and iterates its
// power toward SINR gamma* given the current interference (sequential
// fixed-point sweeps). Unbounded interference growth ends the run with
// converged = false.
BaselineResult SolveBestChannel(const NetworkInstance& instance,
                                const EfficiencyModel& model, Regime regime,
                                const IterationOptions& options = {});

}  // namespace hetgame

#endif  // HETGAME_BASELINES_H_
