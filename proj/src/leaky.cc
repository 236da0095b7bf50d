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


#include "synthrisk/leaky.h"

#include <algorithm>
#include <cmath>
#include <span>

namespace synthrisk {

Dataset LeakySynthesize(const Dataset& train, const Dataset& release, const LeakyConfig& cfg) {
  if (!(cfg.f_l >= 0.0 && cfg.f_l <= 1.0)) throw InvalidArgument("f_l must lie in [0, 1]");
  if (train.schema() != release.schema()) {
    throw DataError("train and release must share one schema");
  }
  const auto n_train = static_cast<size_t>(std::llround(static_cast<double>(cfg.m) * cfg.f_l));
  const size_t n_release = cfg.m - n_train;
  if (n_train > train.n_rows()) {
    throw InvalidArgument("leaky synthesizer needs " + std::to_string(n_train) +
                          " train rows but only " + std::to_string(train.n_rows()) + " exist");
  }
  if (n_release > release.n_rows()) {
    throw InvalidArgument("leaky synthesizer needs " + std::to_string(n_release) +
                          " release rows but only " + std::to_string(release.n_rows()) +
                          " exist");
  }
  Rng rng(cfg.seed);
  const auto from_train = SampleWithoutReplacement(train.n_rows(), n_train, rng);
  const auto from_release = SampleWithoutReplacement(release.n_rows(), n_release, rng);
  const Dataset parts[] = {train.Take(from_train), release.Take(from_release)};
  const Dataset stacked = Concat(parts, DatasetRole::kSynthetic);
  std::vector<size_t> order(stacked.n_rows());
  for (size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::shuffle(order.begin(), order.end(), rng);
  return stacked.Take(order, DatasetRole::kSynthetic);
}

ThreeWaySplit SplitThreeWay(const Dataset& ds, size_t n_train, size_t n_control,
                            size_t n_release, uint64_t seed) {
  if (n_train == 0 || n_control == 0 || n_release == 0) {
    throw InvalidArgument("every part of the three-way split must be non-empty");
  }
  if (n_train + n_control + n_release > ds.n_rows()) {
    throw InvalidArgument("three-way split needs " +
                          std::to_string(n_train + n_control + n_release) + " rows but only " +
                          std::to_string(ds.n_rows()) + " exist");
  }
  Rng rng(seed);
  auto rows = SampleWithoutReplacement(ds.n_rows(), n_train + n_control + n_release, rng);
  auto part = [&](size_t begin, size_t count) {
    std::vector<size_t> sel(rows.begin() + static_cast<std::ptrdiff_t>(begin),
                            rows.begin() + static_cast<std::ptrdiff_t>(begin + count));
    std::sort(sel.begin(), sel.end());
    return sel;
  };
  return {ds.Take(part(0, n_train), DatasetRole::kTrain),
          ds.Take(part(n_train, n_control), DatasetRole::kControl),
          ds.Take(part(n_train + n_control, n_release), DatasetRole::kRelease)};
}

}  // namespace synthrisk
