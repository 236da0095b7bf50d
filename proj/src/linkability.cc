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

#include "synthrisk/linkability.h"

#include <algorithm>
#include <set>

namespace synthrisk::linkability {

namespace {

void Validate(const Dataset& syn, const Dataset& train, const Dataset& control,
              const Config& cfg) {
  if (cfg.aux.a.empty() || cfg.aux.b.empty()) {
    throw InvalidArgument("both auxiliary fragments must be non-empty");
  }
  std::set<std::string> a(cfg.aux.a.begin(), cfg.aux.a.end());
  for (const auto& name : cfg.aux.b) {
    if (a.count(name)) throw InvalidArgument("auxiliary fragments overlap on '" + name + "'");
  }
  if (cfg.k == 0) throw InvalidArgument("k must be at least 1");
  if (cfg.k > syn.n_rows()) throw InvalidArgument("k exceeds the synthetic dataset size");
  if (cfg.n_attacks == 0) throw InvalidArgument("n_attacks must be >= 1");
  if (cfg.n_attacks > std::min(train.n_rows(), control.n_rows())) {
    throw InvalidArgument("n_attacks exceeds min(|train|, |control|)");
  }
}

OutcomeVector Attack(const Dataset& syn, const Dataset& targets, const Config& cfg,
                     const RangeTable& ranges, size_t workers) {
  const auto via_a = Knn(targets, syn, cfg.aux.a, cfg.k, ranges, workers);
  const auto via_b = Knn(targets, syn, cfg.aux.b, cfg.k, ranges, workers);
  return LinkOutcomes(via_a, via_b);
}

}  // namespace

OutcomeVector LinkOutcomes(const std::vector<NeighborSet>& via_a,
                           const std::vector<NeighborSet>& via_b) {
  if (via_a.size() != via_b.size()) throw InvalidArgument("neighbour lists differ in length");
  OutcomeVector out;
  for (size_t i = 0; i < via_a.size(); ++i) {
    bool linked = false;
    for (const Neighbor& x : via_a[i]) {
      for (const Neighbor& y : via_b[i]) {
        if (x.index == y.index) {
          linked = true;
          break;
        }
      }
      if (linked) break;
    }
    out.push_back(linked);
  }
  return out;
}

OutcomeVector NaiveOutcomes(size_t n_syn, size_t k, size_t n_trials, Rng& rng) {
  if (k == 0 || k > n_syn) throw InvalidArgument("naive linkability needs 1 <= k <= n_syn");
  OutcomeVector out;
  for (size_t t = 0; t < n_trials; ++t) {
    auto a = SampleWithoutReplacement(n_syn, k, rng);
    const auto b = SampleWithoutReplacement(n_syn, k, rng);
    std::sort(a.begin(), a.end());
    bool linked = false;
    for (size_t j : b) {
      if (std::binary_search(a.begin(), a.end(), j)) {
        linked = true;
        break;
      }
    }
    out.push_back(linked);
  }
  return out;
}

Result Run(const Dataset& syn, const Dataset& train, const Dataset& control, const Config& cfg,
           size_t workers) {
  Align(syn, train);
  Align(syn, control);
  Validate(syn, train, control, cfg);

  std::vector<std::string> cols = cfg.aux.a;
  cols.insert(cols.end(), cfg.aux.b.begin(), cfg.aux.b.end());
  RangeTable ranges = RangeTable::Compute(syn, train, cols);
  ranges.Extend(RangeTable::Compute(syn, control, cols));

  Rng rng(cfg.seed);
  Result result;
  result.train_targets = SampleWithoutReplacement(train.n_rows(), cfg.n_attacks, rng);
  result.control_targets = SampleWithoutReplacement(control.n_rows(), cfg.n_attacks, rng);
  result.outcomes_main = Attack(syn, train.Take(result.train_targets), cfg, ranges, workers);
  result.outcomes_control =
      Attack(syn, control.Take(result.control_targets), cfg, ranges, workers);
  Rng naive_rng(DeriveSeed(cfg.seed, 1));
  result.outcomes_naive = NaiveOutcomes(syn.n_rows(), cfg.k, cfg.n_attacks, naive_rng);
  return result;
}

}  // namespace synthrisk::linkability
