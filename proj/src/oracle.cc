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

#include "hetgame/oracle.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "hetgame/dense_eq.h"

namespace hetgame {
namespace {

constexpr double kGridDecades = 4.0;

void ValidateGrid(int size, int minimum) {
  if (size < minimum) {
    throw std::invalid_argument("oracle grid needs at least " +
                                std::to_string(minimum) + " points");
  }
}

void Finish(DeviationReport& report, double tolerance) {
  report.relative_gain =
      RelativeGain(report.best_found_utility, report.claimed_utility);
  report.tolerance = tolerance;
  report.passed = report.relative_gain <= tolerance;
  report.deviating_carrier = kNoCarrier;
  for (std::size_t k = 0; k < report.deviating_row.size(); ++k) {
    if (report.deviating_row[k] > 0.0) {
      report.deviating_carrier = static_cast<int>(k);
      break;
    }
  }
}

struct Best {
  double utility = -1.0;
  std::vector<double> row;

  void Offer(double u, std::span<const double> candidate) {
    if (u > utility) {
      utility = u;
      row.assign(candidate.begin(), candidate.end());
    }
  }
};

double LeaderUtilityUnderResponse(const NetworkInstance& instance,
                                  const EfficiencyModel& model,
                                  std::span<const double> leader_row,
                                  Regime regime) {
  const PowerAllocation responded =
      RespondToLeader(instance, model, leader_row);
  return Utility(instance, model, kLeader, responded, regime);
}

Best UnilateralSearch(const NetworkInstance& instance,
                      const EfficiencyModel& model,
                      const PowerAllocation& allocation, int player,
                      Regime regime, int grid_size) {
  const auto gains = instance.gains(player);
  const double scale = model.gamma_star() * instance.noise() /
                       *std::max_element(gains.begin(), gains.end());
  const std::vector<double> grid = GeometricPowerGrid(scale, grid_size);
  PowerAllocation trial = allocation;
  std::vector<double> row(instance.carriers(), 0.0);
  Best best;
  for (int k = 0; k < instance.carriers(); ++k) {
    for (double p : grid) {
      std::fill(row.begin(), row.end(), 0.0);
      row[k] = p;
      trial.SetRow(player, row);
      best.Offer(Utility(instance, model, player, trial, regime), row);
    }
  }
  return best;
}

}  // namespace

std::vector<double> GeometricPowerGrid(double scale, int size) {
  ValidateGrid(size, 2);
  std::vector<double> grid(size);
  for (int i = 0; i < size; ++i) {
    const double exponent =
        -kGridDecades + 2.0 * kGridDecades * i / static_cast<double>(size - 1);
    grid[i] = scale * std::pow(10.0, exponent);
  }
  return grid;
}

double RelativeGain(double best_found, double claimed) {
  if (claimed > 0.0) return (best_found - claimed) / claimed;
  return best_found > 0.0 ? std::numeric_limits<double>::infinity() : 0.0;
}

DeviationReport VerifyFollower(const NetworkInstance& instance,
                               const EfficiencyModel& model, int follower,
                               const PowerAllocation& allocation,
                               const OracleOptions& options) {
  ValidateGrid(options.grid_size, 100);
  DeviationReport report;
  report.player = follower;
  report.claimed_utility =
      Utility(instance, model, follower, allocation, Regime::kDense);

  const Best grid = UnilateralSearch(instance, model, allocation, follower,
                                     Regime::kDense, options.grid_size);
  report.grid_best_utility = grid.utility;

  const std::vector<double> closed_form = FollowerBestResponse(
      instance, model, follower, allocation.row(kLeader));
  PowerAllocation trial = allocation;
  trial.SetRow(follower, closed_form);
  report.closed_form_utility =
      Utility(instance, model, follower, trial, Regime::kDense);

  if (report.closed_form_utility >= grid.utility) {
    report.best_found_utility = report.closed_form_utility;
    report.deviating_row = closed_form;
  } else {
    report.best_found_utility = grid.utility;
    report.deviating_row = grid.row;
  }
  Finish(report, options.tolerance);
  return report;
}

DeviationReport CheckFollowerCarrierStability(const NetworkInstance& instance,
                                              const EfficiencyModel& model,
                                              int follower,
                                              const PowerAllocation& allocation,
                                              double tolerance) {
  DeviationReport report;
  report.player = follower;
  report.claimed_utility =
      Utility(instance, model, follower, allocation, Regime::kDense);
  const double gamma = model.gamma_star();
  const double peak = model.Value(gamma) * instance.rate(follower) / gamma;
  report.deviating_row.assign(instance.carriers(), 0.0);
  report.best_found_utility = -1.0;
  int best_carrier = 0;
  for (int k = 0; k < instance.carriers(); ++k) {
    const double effective_noise =
        instance.noise() +
        instance.cross(kLeader, k) * allocation.at(kLeader, k);
    const double u = peak * instance.gain(follower, k) / effective_noise;
    if (u > report.best_found_utility) {
      report.best_found_utility = u;
      best_carrier = k;
    }
  }
  report.deviating_row[best_carrier] =
      gamma *
      (instance.noise() +
       instance.cross(kLeader, best_carrier) * allocation.at(kLeader, best_carrier)) /
      instance.gain(follower, best_carrier);
  Finish(report, tolerance);
  return report;
}

DeviationReport VerifyLeaderStackelberg(const NetworkInstance& instance,
                                        const EfficiencyModel& model,
                                        const PowerAllocation& allocation,
                                        Regime regime,
                                        const OracleOptions& options) {
  ValidateGrid(options.grid_size, 100);
  DeviationReport report;
  report.player = kLeader;
  report.claimed_utility =
      Utility(instance, model, kLeader, allocation, regime);

  const int carriers = instance.carriers();
  const double gamma_noise = model.gamma_star() * instance.noise();
  std::vector<double> row(carriers, 0.0);
  Best best;
  for (int k = 0; k < carriers; ++k) {
    for (double p : GeometricPowerGrid(
             gamma_noise / instance.gain(kLeader, k), options.grid_size)) {
      std::fill(row.begin(), row.end(), 0.0);
      row[k] = p;
      best.Offer(LeaderUtilityUnderResponse(instance, model, row, regime), row);
    }
  }

  if (options.probe_splits && carriers >= 2 && options.split_fractions >= 2) {
    for (int a = 0; a < carriers; ++a) {
      for (int b = a + 1; b < carriers; ++b) {
        const double scale =
            gamma_noise /
            std::max(instance.gain(kLeader, a), instance.gain(kLeader, b));
        for (double total :
             GeometricPowerGrid(scale, std::max(2, options.split_grid_size))) {
          for (int i = 1; i + 1 < options.split_fractions; ++i) {
            const double share = i / static_cast<double>(options.split_fractions - 1);
            std::fill(row.begin(), row.end(), 0.0);
            row[a] = share * total;
            row[b] = (1.0 - share) * total;
            best.Offer(LeaderUtilityUnderResponse(instance, model, row, regime),
                       row);
          }
        }
      }
    }
  }

  report.best_found_utility = best.utility;
  report.deviating_row = best.row;
  Finish(report, options.tolerance);
  return report;
}

std::vector<DeviationReport> VerifyNash(const NetworkInstance& instance,
                                        const EfficiencyModel& model,
                                        const PowerAllocation& allocation,
                                        Regime regime,
                                        const OracleOptions& options) {
  ValidateGrid(options.grid_size, 100);
  std::vector<DeviationReport> reports;
  for (int n = 0; n < instance.players(); ++n) {
    DeviationReport report;
    report.player = n;
    report.claimed_utility = Utility(instance, model, n, allocation, regime);
    Best best = UnilateralSearch(instance, model, allocation, n, regime,
                                 options.grid_size);
    report.best_found_utility = best.utility;
    report.grid_best_utility = best.utility;
    report.deviating_row = std::move(best.row);
    Finish(report, options.tolerance);
    reports.push_back(std::move(report));
  }
  return reports;
}

PowerAllocation BruteForceStackelberg(const NetworkInstance& instance,
                                      const EfficiencyModel& model,
                                      Regime regime, int grid_size) {
  ValidateGrid(grid_size, 2);
  const double gamma_noise = model.gamma_star() * instance.noise();
  std::vector<double> row(instance.carriers(), 0.0);
  Best best;
  for (int k = 0; k < instance.carriers(); ++k) {
    for (double p :
         GeometricPowerGrid(gamma_noise / instance.gain(kLeader, k), grid_size)) {
      std::fill(row.begin(), row.end(), 0.0);
      row[k] = p;
      best.Offer(LeaderUtilityUnderResponse(instance, model, row, regime), row);
    }
  }
  return RespondToLeader(instance, model, best.row);
}

}  // namespace hetgame
