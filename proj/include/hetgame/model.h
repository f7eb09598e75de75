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

// Game data for the two-tier downlink: one macro cell (player 0, the leader)
// and F small cells (players 1..F, the followers) sharing K carriers.

#ifndef HETGAME_MODEL_H_
#define HETGAME_MODEL_H_

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "hetgame/efficiency.h"

namespace hetgame {

inline constexpr int kLeader = 0;
inline constexpr int kNoCarrier = -1;

// Sparse: follower transmissions do not reach the macro user. Dense: they
// add to the leader's interference. Followers see the same SINR in both.
enum class Regime { kSparse, kDense };

std::string_view RegimeName(Regime regime);
Regime ParseRegime(std::string_view name);

// All linear power gains of one game. Immutable after construction.
//
// gain(n, k) is player n's own-signal gain on carrier k. cross(0, k) is the
// leader's gain into follower receivers and cross(f, k) is follower f's gain
// into the macro user's receiver.
class NetworkInstance {
 public:
  // gain and cross are (F+1) x K, row n for player n. Empty rates means
  // R_n = 1 for every player. Throws std::invalid_argument when K < F + 1,
  // a signal gain is not strictly positive, a cross gain is negative, any
  // value is not finite, noise <= 0 or a rate <= 0.
  NetworkInstance(std::vector<std::vector<double>> gain,
                  std::vector<std::vector<double>> cross, double noise,
                  std::vector<double> rates = {});

  int carriers() const { return carriers_; }
  int followers() const { return players_ - 1; }
  int players() const { return players_; }

  double gain(int player, int carrier) const {
    return gain_[Index(player, carrier)];
  }
  double cross(int player, int carrier) const {
    return cross_[Index(player, carrier)];
  }
  std::span<const double> gains(int player) const {
    return {gain_.data() + Index(player, 0),
            static_cast<std::size_t>(carriers_)};
  }
  double noise() const { return noise_; }
  double rate(int player) const { return rates_[player]; }

  // Same gains with a different noise variance.
  NetworkInstance WithNoise(double noise) const;

  // FNV-1a over every stored value; equal instances hash equal.
  std::uint64_t Digest() const;

 private:
  std::size_t Index(int player, int carrier) const {
    return static_cast<std::size_t>(player) * carriers_ + carrier;
  }

  int carriers_ = 0;
  int players_ = 0;
  std::vector<double> gain_;
  std::vector<double> cross_;
  double noise_ = 1.0;
  std::vector<double> rates_;
};

// (F+1) x K nonnegative transmit powers, one row per player.
class PowerAllocation {
 public:
  PowerAllocation(int players, int carriers);

  int players() const { return players_; }
  int carriers() const { return carriers_; }

  double at(int player, int carrier) const {
    return power_[static_cast<std::size_t>(player) * carriers_ + carrier];
  }
  // Throws std::invalid_argument for a negative or non-finite power.
  void Set(int player, int carrier, double power);
  void SetRow(int player, std::span<const double> powers);
  void ClearRow(int player);

  std::span<const double> row(int player) const {
    return {power_.data() + static_cast<std::size_t>(player) * carriers_,
            static_cast<std::size_t>(carriers_)};
  }
  double RowTotal(int player) const;
  int NonzeroCount(int player) const;
  // Lowest carrier with positive power, kNoCarrier for a silent player.
  int ActiveCarrier(int player) const;

  friend bool operator==(const PowerAllocation&,
                         const PowerAllocation&) = default;

 private:
  int players_;
  int carriers_;
  std::vector<double> power_;
};

// g0 p0 / sigma^2.
double SparseLeaderSinr(const NetworkInstance& instance,
                        const PowerAllocation& allocation, int carrier);
// g0 p0 / (sigma^2 + sum_f hf pf).
double DenseLeaderSinr(const NetworkInstance& instance,
                       const PowerAllocation& allocation, int carrier);
// gf pf / (sigma^2 + h0 p0) for follower player index 1..F.
double FollowerSinr(const NetworkInstance& instance,
                    const PowerAllocation& allocation, int follower,
                    int carrier);
double Sinr(const NetworkInstance& instance, const PowerAllocation& allocation,
            int player, int carrier, Regime regime);

// Energy efficiency R_n sum_k f(gamma_n^k) / sum_k p_n^k in bits per joule.
// A silent player scores 0, the limit of the ratio as its power vanishes.
double Utility(const NetworkInstance& instance, const EfficiencyModel& model,
               int player, const PowerAllocation& allocation, Regime regime);

struct CarrierRank {
  int best = kNoCarrier;
  int second = kNoCarrier;
};

// Largest and second largest own-signal gain; ties go to the lower carrier
// index. Throws std::invalid_argument when K < 2.
CarrierRank BestAndSecondCarriers(const NetworkInstance& instance, int player);

// Rayleigh block-fading draw: every gain is exponential with the given mean,
// and sigma^2 = mean_signal / 10^(snr_db / 10).
struct InstanceDistribution {
  int carriers = 5;
  int followers = 4;
  double mean_signal = 1.0;
  double mean_cross = 0.5;
  double snr_db = 10.0;
  std::vector<double> rates;
};

// Deterministic in (distribution, seed). Throws std::invalid_argument for
// nonpositive mean_signal, negative mean_cross or an invalid shape.
NetworkInstance SampleInstance(const InstanceDistribution& distribution,
                               std::uint64_t seed);

struct Diagnostics {
  int iterations = 0;
  bool converged = true;
  std::vector<std::string> notes;
};

struct EquilibriumResult {
  PowerAllocation allocation;
  std::vector<double> utility;
  std::vector<int> active_carrier;
  Diagnostics diagnostics;
};

// Fills utilities and active carriers from the allocation.
EquilibriumResult MakeEquilibriumResult(const NetworkInstance& instance,
                                        const EfficiencyModel& model,
                                        PowerAllocation allocation,
                                        Regime regime);

}  // namespace hetgame

#endif  // HETGAME_MODEL_H_
