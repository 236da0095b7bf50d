// Copyright 2026 The Synthrisk Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef SYNTHRISK_LINKABILITY_H_
#define SYNTHRISK_LINKABILITY_H_

#include <cstdint>
#include <string>
#include <vector>

#include "synthrisk/distance.h"
#include "synthrisk/tabular.h"

namespace synthrisk::linkability {

// Two disjoint attribute fragments known to the attacker for each target.
struct AuxSplit {
  std::vector<std::string> a;
  std::vector<std::string> b;
};

struct Config {
  AuxSplit aux;
  size_t n_attacks = 2000;
  size_t k = 1;
  uint64_t seed = 0;
};

struct Result {
  OutcomeVector outcomes_main;
  OutcomeVector outcomes_control;
  OutcomeVector outcomes_naive;
  std::vector<size_t> train_targets;
  std::vector<size_t> control_targets;
};

// o_i = 1 iff the two neighbour sets of target i share a synthetic row.
OutcomeVector LinkOutcomes(const std::vector<NeighborSet>& via_a,
                           const std::vector<NeighborSet>& via_b);

// Random-guess baseline: two sets of k distinct indices drawn uniformly from
// [0, n_syn) per trial; success when they intersect.
OutcomeVector NaiveOutcomes(size_t n_syn, size_t k, size_t n_trials, Rng& rng);

// Links N_A random train targets (main) and N_A random control targets
// (control) through their k nearest synthetic rows on each fragment.
// Throws InvalidArgument for overlapping or empty fragments, k > |syn| or
// N_A > min(|train|, |control|).
Result Run(const Dataset& syn, const Dataset& train, const Dataset& control, const Config& cfg,
           size_t workers = 1);

}  // namespace synthrisk::linkability

#endif  // SYNTHRISK_LINKABILITY_H_
