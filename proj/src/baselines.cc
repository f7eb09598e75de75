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

#include "hetgame/baselines.h"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace hetgame {
namespace {

// Powers beyond this multiple of the isolated gamma* level mean the pinned
// system has no finite fixed point.
constexpr double kDivergenceFactor = 1e12;

void ValidateOptions(const IterationOptions& options) {
  if (options.max_iterations < 1) {
    throw std::invalid_argument("max_iterations must be >= 1");
  }
  if (!(options.tolerance > 0.0)) {
    throw std::invalid_argument("iteration tolerance must be positive");
  }
}

double RowChange(std::span<const double> before, std::span<const double> after) {
  double change = 0.0;
  for (std::size_t k = 0; k < before.size(); ++k) {
    change = std::max(change, std::abs(after[k] - before[k]));
  }
  return change;
}

}  // namespace

double Interference(const NetworkInstance& instance,
                    const PowerAllocation& allocation, int player, int carrier,
                    Regime regime) {
  if (player != kLeader) {
    return instance.cross(kLeader, carrier) * allocation.at(kLeader, carrier);
  }
  if (regime == Regime::kSparse) return 0.0;
  double sum = 0.0;
  for (int f = 1; f < instance.players(); ++f) {
    sum += instance.cross(f, carrier) * allocation.at(f, carrier);
  }
  return sum;
}

std::vector<double> PlayerBestResponse(const NetworkInstance& instance,
                                       const EfficiencyModel& model,
                                       const PowerAllocation& allocation,
                                       int player, Regime regime) {
  int best = 0;
  double best_score = -1.0;
  for (int k = 0; k < instance.carriers(); ++k) {
    const double score =
        instance.gain(player, k) /
        (instance.noise() + Interference(instance, allocation, player, k, regime));
    if (score > best_score) {
      best = k;
      best_score = score;
    }
  }
  std::vector<double> response(instance.carriers(), 0.0);
  response[best] =
      model.gamma_star() *
      (instance.noise() + Interference(instance, allocation, player, best, regime)) /
      instance.gain(player, best);
  return response;
}

BaselineResult SolveNash(const NetworkInstance& instance,
                         const EfficiencyModel& model, Regime regime,
                         const IterationOptions& options) {
  ValidateOptions(options);
  PowerAllocation allocation(instance.players(), instance.carriers());
  IterationReport report;
  for (int sweep = 1; sweep <= options.max_iterations; ++sweep) {
    double change = 0.0;
    for (int n = 0; n < instance.players(); ++n) {
      const std::vector<double> response =
          PlayerBestResponse(instance, model, allocation, n, regime);
      change = std::max(change, RowChange(allocation.row(n), response));
      allocation.SetRow(n, response);
    }
    report.iterations = sweep;
    report.final_change = change;
    if (change < options.tolerance) {
      report.converged = true;
      break;
    }
  }
  BaselineResult out{MakeEquilibriumResult(instance, model,
                                           std::move(allocation), regime),
                     report};
  out.equilibrium.diagnostics.iterations = report.iterations;
  out.equilibrium.diagnostics.converged = report.converged;
  out.equilibrium.diagnostics.notes.push_back("order=leader_then_followers");
  return out;
}

BaselineResult SolveBestChannel(const NetworkInstance& instance,
                                const EfficiencyModel& model, Regime regime,
                                const IterationOptions& options) {
  ValidateOptions(options);
  const double gamma = model.gamma_star();
  const double noise = instance.noise();
  std::vector<int> pinned(instance.players());
  for (int n = 0; n < instance.players(); ++n) {
    pinned[n] = instance.carriers() < 2
                    ? 0
                    : BestAndSecondCarriers(instance, n).best;
  }

  PowerAllocation allocation(instance.players(), instance.carriers());
  IterationReport report;
  bool diverged = false;
  for (int sweep = 1; sweep <= options.max_iterations && !diverged; ++sweep) {
    double change = 0.0;
    for (int n = 0; n < instance.players(); ++n) {
      const int k = pinned[n];
      const double power =
          gamma * (noise + Interference(instance, allocation, n, k, regime)) /
          instance.gain(n, k);
      if (!std::isfinite(power) ||
          power > kDivergenceFactor * gamma * noise / instance.gain(n, k)) {
        diverged = true;
        break;
      }
      change = std::max(change, std::abs(power - allocation.at(n, k)));
      allocation.Set(n, k, power);
    }
    report.iterations = sweep;
    report.final_change = change;
    if (!diverged && change < options.tolerance) {
      report.converged = true;
      break;
    }
  }
  BaselineResult out{MakeEquilibriumResult(instance, model,
                                           std::move(allocation), regime),
                     report};
  out.equilibrium.diagnostics.iterations = report.iterations;
  out.equilibrium.diagnostics.converged = report.converged;
  if (diverged) out.equilibrium.diagnostics.notes.push_back("diverged");
  return out;
}

}  // namespace hetgame
