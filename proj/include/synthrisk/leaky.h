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


#ifndef SYNTHRISK_LEAKY_H_
#define SYNTHRISK_LEAKY_H_

#include <cstdint>

#include "synthrisk/tabular.h"

namespace synthrisk {

struct LeakyConfig {
  double f_l = 0.0;  // fraction of output rows copied from train, in [0, 1]
  size_t m = 0;      // output size
  uint64_t seed = 0;
};

// round(m f_l) rows drawn without replacement from `train` and the rest from
// `release`, shuffled together. Throws InvalidArgument for f_l outside [0, 1]
// or when either source has too few rows.
Dataset LeakySynthesize(const Dataset& train, const Dataset& release, const LeakyConfig& cfg);

struct ThreeWaySplit {
  Dataset train;
  Dataset control;
  Dataset release;
};

// Pairwise-disjoint random row sets of the given sizes. Throws
// InvalidArgument when the sizes exceed |ds| or any of them is 0.
ThreeWaySplit SplitThreeWay(const Dataset& ds, size_t n_train, size_t n_control,
                            size_t n_release, uint64_t seed);

}  // namespace synthrisk

#endif  // SYNTHRISK_LEAKY_H_
