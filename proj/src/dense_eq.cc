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

#include "hetgame/dense_eq.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

namespace hetgame {
namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();
constexpr double kInf = std::numeric_limits<double>::infinity();

// A leader sitting exactly on an eviction power leaves the follower
// indifferent; step just past it so the follower strictly prefers leaving.
constexpr double kEvictionMargin = 1e-10;

// Leader SINR when the top `sharing` followers on the carrier respond with
// gamma* targets: g0 p / (sigma^2 (1 + gamma* eta) + gamma* eta h0 p).
double SharedLeaderSinr(double g0, double h0, double noise, double gamma,
                        double eta, double power) {
  return g0 * power /
         (noise * (1.0 + gamma * eta) + gamma * eta * h0 * power);
}

double EvictingPower(double cap) { return cap * (1.0 + kEvictionMargin); }

int FollowersOn(const PowerAllocation& allocation, int carrier) {
  int count = 0;
  for (int f = 1; f < allocation.players(); ++f) {
    count += allocation.at(f, carrier) > 0.0;
  }
  return count;
}

void Evaluate(const NetworkInstance& instance, const EfficiencyModel& model,
              LeaderCandidate& candidate) {
  std::vector<double> row(instance.carriers(), 0.0);
  row[candidate.carrier] = candidate.power;
  const PowerAllocation allocation = RespondToLeader(instance, model, row);
  candidate.value =
      Utility(instance, model, kLeader, allocation, Regime::kDense);
  candidate.sharing = FollowersOn(allocation, candidate.carrier);
}

}  // namespace

std::string_view CandidateKindName(CandidateKind kind) {
  switch (kind) {
    case CandidateKind::kInterior:
      return "interior";
    case CandidateKind::kRaisedToCap:
      return "raised_to_cap";
    case CandidateKind::kLoweredToCap:
      return "lowered_to_cap";
    case CandidateKind::kAlone:
      return "alone";
  }
  return "unknown";
}

int FollowerPreferredCarrier(const NetworkInstance& instance, int follower,
                             std::span<const double> leader_powers) {
  int best = 0;
  double best_score = -1.0;
  for (int k = 0; k < instance.carriers(); ++k) {
    const double score =
        instance.gain(follower, k) /
        (instance.noise() + instance.cross(kLeader, k) * leader_powers[k]);
    if (score > best_score) {
      best = k;
      best_score = score;
    }
  }
  return best;
}

std::vector<double> FollowerBestResponse(
    const NetworkInstance& instance, const EfficiencyModel& model,
    int follower, std::span<const double> leader_powers) {
  if (static_cast<int>(leader_powers.size()) != instance.carriers()) {
    throw std::invalid_argument("leader power vector must have K entries");
  }
  std::vector<double> response(instance.carriers(), 0.0);
  const int k = FollowerPreferredCarrier(instance, follower, leader_powers);
  response[k] = model.gamma_star() *
                (instance.noise() + instance.cross(kLeader, k) * leader_powers[k]) /
                instance.gain(follower, k);
  return response;
}

PowerAllocation RespondToLeader(const NetworkInstance& instance,
                                const EfficiencyModel& model,
                                std::span<const double> leader_powers) {
  PowerAllocation allocation(instance.players(), instance.carriers());
  allocation.SetRow(kLeader, leader_powers);
  for (int f = 1; f < instance.players(); ++f) {
    allocation.SetRow(f,
                      FollowerBestResponse(instance, model, f, leader_powers));
  }
  return allocation;
}

CandidateTable BuildCandidateTable(const NetworkInstance& instance,
                                   const EfficiencyModel& model) {
  const double gamma = model.gamma_star();
  const double noise = instance.noise();
  const double leader_rate = instance.rate(kLeader);

  std::vector<CarrierRank> ranks(instance.players());
  for (int f = 1; f < instance.players(); ++f) {
    ranks[f] = BestAndSecondCarriers(instance, f);
  }
  auto theta_of = [&](int f) {
    return instance.gain(f, ranks[f].best) / instance.gain(f, ranks[f].second);
  };

  CandidateTable table;
  for (int k = 0; k < instance.carriers(); ++k) {
    CarrierCandidates c;
    c.carrier = k;
    for (int f = 1; f < instance.players(); ++f) {
      if (ranks[f].best == k) c.followers.push_back(f);
    }
    std::stable_sort(c.followers.begin(), c.followers.end(),
                     [&](int a, int b) { return theta_of(a) > theta_of(b); });

    const int nominees = c.nominees();
    const std::size_t levels = nominees + 1;
    c.theta.assign(levels, kNaN);
    c.eta.assign(levels, 0.0);
    c.gamma_double_star.assign(levels, gamma);
    c.admissible.assign(levels, true);
    c.interior_value.assign(levels, kNaN);
    c.interior_power.assign(levels, kNaN);
    c.capped_power.assign(levels, kNaN);
    c.capped_value.assign(levels, kNaN);
    c.follower_stays.assign(levels, false);
    c.value.assign(levels, kNaN);
    c.leader_power.assign(levels, kNaN);
    c.adjustment.assign(levels, 0);

    const double g0 = instance.gain(kLeader, k);
    const double h0 = instance.cross(kLeader, k);
    for (int level = 1; level <= nominees; ++level) {
      const int f = c.followers[level - 1];
      const double g_best = instance.gain(f, k);
      const double g_second = instance.gain(f, ranks[f].second);
      c.theta[level] = g_best / g_second;
      c.eta[level] = c.eta[level - 1] + instance.cross(f, k) / g_best;

      const double eta = c.eta[level];
      const double a = h0 * gamma * eta / g0;
      const GammaDoubleStar root =
          a == 0.0 ? GammaDoubleStar{gamma, true}
                   : SolveGammaDoubleStar(model, a);
      const double gds = root.value;
      c.gamma_double_star[level] = gds;
      const double margin = g0 - gds * gamma * eta * h0;
      c.admissible[level] = root.admissible && margin > 0.0;
      if (c.admissible[level]) {
        c.interior_power[level] = gds * (1.0 + gamma * eta) * noise / margin;
        c.interior_value[level] = model.Value(gds) * margin * leader_rate /
                                  (gds * (1.0 + gamma * eta) * noise);
        c.follower_stays[level] =
            g_best * margin > g_second * (g0 + h0 * gds);
      }

      double cap;
      if (h0 > 0.0) {
        cap = noise * (g_best - g_second) / (h0 * g_second);
      } else {
        cap = g_best > g_second ? kInf : 0.0;
      }
      c.capped_power[level] = cap;
      if (cap > 0.0 && std::isfinite(cap)) {
        const double prior_eta = c.eta[level - 1];
        c.capped_value[level] =
            leader_rate *
            model.Value(SharedLeaderSinr(g0, h0, noise, gamma, prior_eta, cap)) /
            cap;
      }
    }

    for (int level = nominees; level >= 1; --level) {
      if (c.follower_stays[level]) {
        c.max_sharing = level;
        break;
      }
    }
    for (int l = 1; l <= c.max_sharing; ++l) {
      c.value[l] = c.interior_value[l];
      c.leader_power[l] = c.interior_power[l];
      if (l == c.max_sharing) continue;
      if (!c.follower_stays[l]) ++c.stay_violations;
      if (c.leader_power[l] < c.capped_power[l + 1]) {
        c.value[l] = c.capped_value[l + 1];
        c.leader_power[l] = c.capped_power[l + 1];
        c.adjustment[l] = 1;
      }
      if (c.leader_power[l] > c.capped_power[l]) {
        c.value[l] = c.capped_value[l];
        c.leader_power[l] = c.capped_power[l];
        c.adjustment[l] = 2;
      }
    }
    table.carriers.push_back(std::move(c));
  }
  return table;
}

DenseEquilibrium SolveDense(const NetworkInstance& instance,
                            const EfficiencyModel& model) {
  if (instance.carriers() < 2) {
    throw std::invalid_argument("dense equilibrium needs K >= 2");
  }
  const double gamma = model.gamma_star();
  const double noise = instance.noise();
  const double leader_rate = instance.rate(kLeader);

  CandidateTable table = BuildCandidateTable(instance, model);
  LeaderCandidate chosen;
  LeaderCandidate table_choice;

  // Candidates the table itself nominates.
  std::vector<LeaderCandidate> listed;
  for (const CarrierCandidates& c : table.carriers) {
    const double g0 = instance.gain(kLeader, c.carrier);
    if (c.nominees() == 0) {
      listed.push_back({c.carrier, 0, gamma * noise / g0,
                        model.Value(gamma) * g0 * leader_rate / (gamma * noise),
                        0.0, CandidateKind::kAlone});
      continue;
    }
    if (c.max_sharing == 0) {
      const double cap = c.capped_power[1];
      if (cap > 0.0 && std::isfinite(cap)) {
        listed.push_back({c.carrier, 0, EvictingPower(cap), c.capped_value[1],
                          0.0, CandidateKind::kLoweredToCap});
      }
      continue;
    }
    for (int l = 1; l <= c.max_sharing; ++l) {
      if (!std::isfinite(c.leader_power[l]) || !(c.leader_power[l] > 0.0)) {
        continue;
      }
      LeaderCandidate candidate{c.carrier, l, c.leader_power[l], c.value[l],
                                0.0, CandidateKind::kInterior};
      if (c.adjustment[l] == 1) {
        candidate.kind = CandidateKind::kRaisedToCap;
        candidate.power = EvictingPower(candidate.power);
      } else if (c.adjustment[l] == 2) {
        candidate.kind = CandidateKind::kLoweredToCap;
        candidate.sharing = l - 1;
        candidate.power = EvictingPower(candidate.power);
      }
      listed.push_back(candidate);
    }
  }

  // Every sharing interval [cap(L+1), cap(L)) of every carrier, with the
  // leader's quasi-concave utility maximized by clamping its interior optimum
  // into the interval. The upper end of interval L is covered by interval
  // L-1, since there the L-th follower has already left.
  std::vector<LeaderCandidate> enumerated;
  for (const CarrierCandidates& c : table.carriers) {
    const int nominees = c.nominees();
    if (nominees == 0) continue;
    const double g0 = instance.gain(kLeader, c.carrier);
    for (int level = 0; level <= nominees; ++level) {
      const double upper = level == 0 ? kInf : c.capped_power[level];
      const double lower = level == nominees ? 0.0 : c.capped_power[level + 1];
      if (!(lower < upper)) continue;
      double target;
      if (level == 0) {
        target = gamma * noise / g0;
      } else if (c.admissible[level]) {
        target = c.interior_power[level];
      } else {
        continue;
      }
      LeaderCandidate candidate{c.carrier, level, target, kNaN, 0.0,
                                level == 0 ? CandidateKind::kAlone
                                           : CandidateKind::kInterior};
      if (target < lower) {
        candidate.power = EvictingPower(lower);
        candidate.kind = CandidateKind::kRaisedToCap;
      } else if (!(target < upper)) {
        continue;
      }
      if (!std::isfinite(candidate.power) || !(candidate.power > 0.0)) continue;
      enumerated.push_back(candidate);
    }
  }

  for (LeaderCandidate& candidate : listed) Evaluate(instance, model, candidate);
  for (LeaderCandidate& candidate : enumerated) {
    Evaluate(instance, model, candidate);
  }

  bool have_listed = false;
  for (const LeaderCandidate& candidate : listed) {
    if (!have_listed || candidate.predicted_value > table_choice.predicted_value) {
      table_choice = candidate;
      have_listed = true;
    }
  }
  bool have_choice = false;
  auto consider = [&](const LeaderCandidate& candidate) {
    if (!have_choice || candidate.value > chosen.value) {
      chosen = candidate;
      have_choice = true;
    }
  };
  if (have_listed) consider(table_choice);
  for (const LeaderCandidate& candidate : enumerated) consider(candidate);
  for (const LeaderCandidate& candidate : listed) consider(candidate);
  if (!have_choice) {
    throw std::runtime_error("dense equilibrium: no admissible leader candidate");
  }
  const bool enumeration_improved =
      !have_listed || chosen.value > table_choice.value * (1.0 + 1e-12);

  std::vector<double> leader_row(instance.carriers(), 0.0);
  leader_row[chosen.carrier] = chosen.power;
  CarrierCandidates& picked = table.carriers[chosen.carrier];
  const int original_max_sharing = picked.max_sharing;
  picked.max_sharing = chosen.sharing;

  DenseEquilibrium out{
      MakeEquilibriumResult(instance, model,
                            RespondToLeader(instance, model, leader_row),
                            Regime::kDense),
      std::move(table), chosen, table_choice, original_max_sharing,
      enumeration_improved};

  int violations = 0;
  for (const CarrierCandidates& c : out.table.carriers) {
    violations += c.stay_violations;
  }
  auto& notes = out.equilibrium.diagnostics.notes;
  notes.push_back("carrier=" + std::to_string(chosen.carrier));
  notes.push_back("sharing=" + std::to_string(chosen.sharing));
  notes.push_back("kind=" + std::string(CandidateKindName(chosen.kind)));
  notes.push_back("original_max_sharing=" +
                  std::to_string(out.original_max_sharing));
  notes.push_back("enumeration_improved=" +
                  std::to_string(out.enumeration_improved ? 1 : 0));
  notes.push_back("stay_violations=" + std::to_string(violations));
  return out;
}

}  // namespace hetgame
