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

// Stackelberg equilibrium of the dense two-tier network, where followers
// sharing the leader's carrier add to the macro user's interference.

#ifndef HETGAME_DENSE_EQ_H_
#define HETGAME_DENSE_EQ_H_

#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "hetgame/efficiency.h"
#include "hetgame/model.h"

namespace hetgame {

// L_f(p0) = argmax_k gf^k / (sigma^2 + h0^k p0^k), lowest index on ties.
int FollowerPreferredCarrier(const NetworkInstance& instance, int follower,
                             std::span<const double> leader_powers);

// Energy-efficient best response of follower `follower` (player index 1..F)
// to a leader power vector: all power on L_f(p0), sized so the follower's
// SINR there is exactly gamma*.
std::vector<double> FollowerBestResponse(const NetworkInstance& instance,
                                         const EfficiencyModel& model,
                                         int follower,
                                         std::span<const double> leader_powers);

// Leader row plus every follower's best response to it.
PowerAllocation RespondToLeader(const NetworkInstance& instance,
                                const EfficiencyModel& model,
                                std::span<const double> leader_powers);

// Per-carrier bookkeeping of the candidate construction. Every vector is
// indexed by the sharing level L = 0..F(k); slot 0 is the no-follower level
// (eta = 0, gamma** = gamma*) and holds no candidate.
struct CarrierCandidates {
  int carrier = 0;
  // f(k, l): followers whose best carrier is k, by decreasing theta.
  std::vector<int> followers;
  std::vector<double> theta;
  std::vector<double> eta;
  std::vector<double> gamma_double_star;
  std::vector<bool> admissible;
  // Unconstrained leader optimum with the top-L followers sharing k.
  std::vector<double> interior_value;
  std::vector<double> interior_power;
  // Leader power at which f(k, l) becomes indifferent between k and its
  // second-best carrier, and the leader's value there once it has left.
  std::vector<double> capped_power;
  std::vector<double> capped_value;
  // Whether f(k, L) still prefers k at the interior power for level L.
  std::vector<bool> follower_stays;
  // F*(k): largest L whose top follower still prefers k.
  int max_sharing = 0;
  // Levels l <= F*(k) after the cap adjustment.
  std::vector<double> value;
  std::vector<double> leader_power;
  // 0: untouched, 1: raised to capped_power[l + 1], 2: lowered to
  // capped_power[l].
  std::vector<int> adjustment;
  // Levels l < F*(k) at which the stay inequality fails.
  int stay_violations = 0;

  int nominees() const { return static_cast<int>(followers.size()); }
};

struct CandidateTable {
  std::vector<CarrierCandidates> carriers;
};

CandidateTable BuildCandidateTable(const NetworkInstance& instance,
                                   const EfficiencyModel& model);

enum class CandidateKind {
  kInterior,     // unconstrained optimum inside its sharing interval
  kRaisedToCap,  // pushed up to the power that evicts the next follower
  kLoweredToCap,
  kAlone,        // no follower shares the carrier at the leader's optimum
};

std::string_view CandidateKindName(CandidateKind kind);

struct LeaderCandidate {
  int carrier = kNoCarrier;
  // Followers expected to share the carrier.
  int sharing = 0;
  double power = 0.0;
  // Value according to the closed-form bookkeeping.
  double predicted_value = 0.0;
  // Leader utility once every follower best-responds to `power`.
  double value = 0.0;
  CandidateKind kind = CandidateKind::kInterior;
};

struct DenseEquilibrium {
  EquilibriumResult equilibrium;
  CandidateTable table;
  LeaderCandidate chosen;
  // Argmax of the closed-form values over the table's adjusted levels, capped
  // candidates of carriers with F*(k) = 0 and isolated candidates of carriers
  // without nominees.
  LeaderCandidate table_choice;
  // F*(k) of the chosen carrier before it is reset to the chosen level.
  int original_max_sharing = 0;
  // The exhaustive interval enumeration beat the table's own choice.
  bool enumeration_improved = false;
};

// Throws std::invalid_argument when K < 2 and RootNotFound if a gamma**
// equation has no positive root.
DenseEquilibrium SolveDense(const NetworkInstance& instance,
                            const EfficiencyModel& model);

}  // namespace hetgame

#endif  // HETGAME_DENSE_EQ_H_
