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

#include "hetgame/model.h"

#include <cmath>
#include <cstring>
#include <random>
#include <stdexcept>
#include <string>
#include <utility>

namespace hetgame {

std::string_view RegimeName(Regime regime) {
  return regime == Regime::kSparse ? "sparse" : "dense";
}

Regime ParseRegime(std::string_view name) {
  if (name == "sparse") return Regime::kSparse;
  if (name == "dense") return Regime::kDense;
  throw std::invalid_argument("unknown regime '" + std::string(name) +
                              "' (expected sparse or dense)");
}

NetworkInstance::NetworkInstance(std::vector<std::vector<double>> gain,
                                 std::vector<std::vector<double>> cross,
                                 double noise, std::vector<double> rates)
    : noise_(noise) {
  if (gain.empty()) throw std::invalid_argument("instance needs a leader row");
  players_ = static_cast<int>(gain.size());
  carriers_ = static_cast<int>(gain.front().size());
  if (carriers_ < 1) throw std::invalid_argument("instance needs K >= 1");
  if (carriers_ < players_) {
    throw std::invalid_argument("instance needs K >= F + 1 (K=" +
                                std::to_string(carriers_) + ", F=" +
                                std::to_string(players_ - 1) + ")");
  }
  if (cross.size() != gain.size()) {
    throw std::invalid_argument("cross gain rows must match signal gain rows");
  }
  if (!(noise > 0.0) || !std::isfinite(noise)) {
    throw std::invalid_argument("noise variance must be positive and finite");
  }
  gain_.reserve(static_cast<std::size_t>(players_) * carriers_);
  cross_.reserve(gain_.capacity());
  for (int n = 0; n < players_; ++n) {
    if (static_cast<int>(gain[n].size()) != carriers_ ||
        static_cast<int>(cross[n].size()) != carriers_) {
      throw std::invalid_argument("every gain row must have K entries");
    }
    for (int k = 0; k < carriers_; ++k) {
      if (!(gain[n][k] > 0.0) || !std::isfinite(gain[n][k])) {
        throw std::invalid_argument("signal gains must be positive and finite");
      }
      if (!(cross[n][k] >= 0.0) || !std::isfinite(cross[n][k])) {
        throw std::invalid_argument("cross gains must be >= 0 and finite");
      }
      gain_.push_back(gain[n][k]);
      cross_.push_back(cross[n][k]);
    }
  }
  if (rates.empty()) rates.assign(players_, 1.0);
  if (static_cast<int>(rates.size()) != players_) {
    throw std::invalid_argument("need one rate per player");
  }
  for (double r : rates) {
    if (!(r > 0.0) || !std::isfinite(r)) {
      throw std::invalid_argument("rates must be positive and finite");
    }
  }
  rates_ = std::move(rates);
}

NetworkInstance NetworkInstance::WithNoise(double noise) const {
  if (!(noise > 0.0) || !std::isfinite(noise)) {
    throw std::invalid_argument("noise variance must be positive and finite");
  }
  NetworkInstance copy = *this;
  copy.noise_ = noise;
  return copy;
}

std::uint64_t NetworkInstance::Digest() const {
  std::uint64_t hash = 1469598103934665603ULL;
  auto mix = [&hash](const void* data, std::size_t size) {
    const auto* bytes = static_cast<const unsigned char*>(data);
    for (std::size_t i = 0; i < size; ++i) {
      hash ^= bytes[i];
      hash *= 1099511628211ULL;
    }
  };
  mix(&carriers_, sizeof carriers_);
  mix(&players_, sizeof players_);
  mix(gain_.data(), gain_.size() * sizeof(double));
  mix(cross_.data(), cross_.size() * sizeof(double));
  mix(&noise_, sizeof noise_);
  mix(rates_.data(), rates_.size() * sizeof(double));
  return hash;
}

PowerAllocation::PowerAllocation(int players, int carriers)
    : players_(players), carriers_(carriers) {
  if (players < 1 || carriers < 1) {
    throw std::invalid_argument("allocation needs at least one row and column");
  }
  power_.assign(static_cast<std::size_t>(players) * carriers, 0.0);
}

void PowerAllocation::Set(int player, int carrier, double power) {
  if (!(power >= 0.0) || !std::isfinite(power)) {
    throw std::invalid_argument("transmit power must be finite and >= 0");
  }
  power_[static_cast<std::size_t>(player) * carriers_ + carrier] = power;
}

void PowerAllocation::SetRow(int player, std::span<const double> powers) {
  if (static_cast<int>(powers.size()) != carriers_) {
    throw std::invalid_argument("power row must have K entries");
  }
  for (int k = 0; k < carriers_; ++k) Set(player, k, powers[k]);
}

void PowerAllocation::ClearRow(int player) {
  for (int k = 0; k < carriers_; ++k) {
    power_[static_cast<std::size_t>(player) * carriers_ + k] = 0.0;
  }
}

double PowerAllocation::RowTotal(int player) const {
  double total = 0.0;
  for (double p : row(player)) total += p;
  return total;
}

int PowerAllocation::NonzeroCount(int player) const {
  int count = 0;
  for (double p : row(player)) count += p > 0.0;
  return count;
}

int PowerAllocation::ActiveCarrier(int player) const {
  for (int k = 0; k < carriers_; ++k) {
    if (at(player, k) > 0.0) return k;
  }
  return kNoCarrier;
}

double SparseLeaderSinr(const NetworkInstance& instance,
                        const PowerAllocation& allocation, int carrier) {
  return instance.gain(kLeader, carrier) * allocation.at(kLeader, carrier) /
         instance.noise();
}

double DenseLeaderSinr(const NetworkInstance& instance,
                       const PowerAllocation& allocation, int carrier) {
  double interference = 0.0;
  for (int f = 1; f < instance.players(); ++f) {
    interference += instance.cross(f, carrier) * allocation.at(f, carrier);
  }
  return instance.gain(kLeader, carrier) * allocation.at(kLeader, carrier) /
         (instance.noise() + interference);
}

double FollowerSinr(const NetworkInstance& instance,
                    const PowerAllocation& allocation, int follower,
                    int carrier) {
  return instance.gain(follower, carrier) * allocation.at(follower, carrier) /
         (instance.noise() +
          instance.cross(kLeader, carrier) * allocation.at(kLeader, carrier));
}

double Sinr(const NetworkInstance& instance, const PowerAllocation& allocation,
            int player, int carrier, Regime regime) {
  if (player != kLeader) {
    return FollowerSinr(instance, allocation, player, carrier);
  }
  return regime == Regime::kSparse
             ? SparseLeaderSinr(instance, allocation, carrier)
             : DenseLeaderSinr(instance, allocation, carrier);
}

double Utility(const NetworkInstance& instance, const EfficiencyModel& model,
               int player, const PowerAllocation& allocation, Regime regime) {
  const double total_power = allocation.RowTotal(player);
  if (total_power <= 0.0) return 0.0;
  double throughput = 0.0;
  for (int k = 0; k < instance.carriers(); ++k) {
    if (allocation.at(player, k) > 0.0) {
      throughput +=
          model.Value(Sinr(instance, allocation, player, k, regime));
    }
  }
  return instance.rate(player) * throughput / total_power;
}

CarrierRank BestAndSecondCarriers(const NetworkInstance& instance,
                                  int player) {
  if (instance.carriers() < 2) {
    throw std::invalid_argument("second-best carrier needs K >= 2");
  }
  CarrierRank rank;
  const auto g = instance.gains(player);
  rank.best = 0;
  for (int k = 1; k < instance.carriers(); ++k) {
    if (g[k] > g[rank.best]) rank.best = k;
  }
  for (int k = 0; k < instance.carriers(); ++k) {
    if (k == rank.best) continue;
    if (rank.second == kNoCarrier || g[k] > g[rank.second]) rank.second = k;
  }
  return rank;
}

NetworkInstance SampleInstance(const InstanceDistribution& distribution,
                               std::uint64_t seed) {
  if (!(distribution.mean_signal > 0.0) ||
      !std::isfinite(distribution.mean_signal)) {
    throw std::invalid_argument("mean_signal must be positive");
  }
  if (!(distribution.mean_cross >= 0.0) ||
      !std::isfinite(distribution.mean_cross)) {
    throw std::invalid_argument("mean_cross must be >= 0");
  }
  if (!std::isfinite(distribution.snr_db)) {
    throw std::invalid_argument("snr_db must be finite");
  }
  if (distribution.carriers < 1 || distribution.followers < 0) {
    throw std::invalid_argument("need K >= 1 and F >= 0");
  }
  const int players = distribution.followers + 1;
  const int carriers = distribution.carriers;

  std::mt19937_64 engine(seed);
  // Exponential draws from raw 53-bit uniforms so the stream does not depend
  // on the standard library's distribution implementations.
  auto exponential = [&engine](double mean) {
    if (mean == 0.0) return 0.0;
    for (;;) {
      const double u = static_cast<double>(engine() >> 11) * 0x1.0p-53;
      const double draw = -mean * std::log1p(-u);
      if (draw > 0.0) return draw;
    }
  };

  std::vector<std::vector<double>> gain(players, std::vector<double>(carriers));
  std::vector<std::vector<double>> cross(players,
                                         std::vector<double>(carriers));
  for (auto& row : gain) {
    for (double& g : row) g = exponential(distribution.mean_signal);
  }
  for (auto& row : cross) {
    for (double& h : row) h = exponential(distribution.mean_cross);
  }
  const double noise =
      distribution.mean_signal / std::pow(10.0, distribution.snr_db / 10.0);
  return NetworkInstance(std::move(gain), std::move(cross), noise,
                         distribution.rates);
}

EquilibriumResult MakeEquilibriumResult(const NetworkInstance& instance,
                                        const EfficiencyModel& model,
                                        PowerAllocation allocation,
                                        Regime regime) {
  EquilibriumResult result{std::move(allocation), {}, {}, {}};
  for (int n = 0; n < instance.players(); ++n) {
    result.utility.push_back(
        Utility(instance, model, n, result.allocation, regime));
    result.active_carrier.push_back(result.allocation.ActiveCarrier(n));
  }
  return result;
}

}  // namespace hetgame
