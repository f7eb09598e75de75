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

#include "hetgame/sparse_eq.h"

namespace hetgame {

EquilibriumResult SolveSparse(const NetworkInstance& instance,
                              const EfficiencyModel& model) {
  const double gamma = model.gamma_star();
  const double noise = instance.noise();
  PowerAllocation allocation(instance.players(), instance.carriers());

  const int leader_carrier = BestAndSecondCarriers(instance, kLeader).best;
  const double leader_power =
      gamma * noise / instance.gain(kLeader, leader_carrier);
  allocation.Set(kLeader, leader_carrier, leader_power);

  int switched = 0;
  for (int f = 1; f < instance.players(); ++f) {
    const CarrierRank rank = BestAndSecondCarriers(instance, f);
    if (rank.best != leader_carrier) {
      allocation.Set(f, rank.best, gamma * noise / instance.gain(f, rank.best));
      continue;
    }
    const double h0 = instance.cross(kLeader, leader_carrier);
    const double g0 = instance.gain(kLeader, leader_carrier);
    const double ratio = instance.gain(f, rank.best) / instance.gain(f, rank.second);
    if (ratio >= 1.0 + h0 / g0 * gamma) {
      // gamma* (sigma^2 + h0 p0) / gf, written in the best-response form so
      // the value is bit-identical to the dense solver's follower rows.
      allocation.Set(f, rank.best,
                     gamma * (noise + h0 * leader_power) /
                         instance.gain(f, rank.best));
    } else {
      allocation.Set(f, rank.second,
                     gamma * noise / instance.gain(f, rank.second));
      ++switched;
    }
  }

  EquilibriumResult result = MakeEquilibriumResult(
      instance, model, std::move(allocation), Regime::kSparse);
  result.diagnostics.notes.push_back("followers_moved_to_second=" +
                                     std::to_string(switched));
  return result;
}

}  // namespace hetgame
