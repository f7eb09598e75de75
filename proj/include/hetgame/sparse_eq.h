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

#ifndef HETGAME_SPARSE_EQ_H_
#define HETGAME_SPARSE_EQ_H_

#include "hetgame/efficiency.h"
#include "hetgame/model.h"

namespace hetgame {

// Closed-form Stackelberg equilibrium when follower transmissions do not
// reach the macro user. The leader targets gamma* on its best carrier B_0.
// A follower whose best carrier is not B_0 targets gamma* there; a follower
// sharing B_0 stays when g^B / g^S >= 1 + gamma* h0 / g0 (ties stay) and
// otherwise moves to its second-best carrier. Every row has one nonzero
// entry. Utilities are reported under the sparse regime.
//
// Throws std::invalid_argument when K < 2.
EquilibriumResult SolveSparse(const NetworkInstance& instance,
                              const EfficiencyModel& model);

}  // namespace hetgame

#endif  // HETGAME_SPARSE_EQ_H_
