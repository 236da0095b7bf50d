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

#ifndef SYNTHRISK_DATAGEN_H_
#define SYNTHRISK_DATAGEN_H_

#include <cstdint>

#include "synthrisk/tabular.h"

namespace synthrisk {

// Procedural mixed-type table with 8 correlated columns driven by two latent
// Gaussian factors:
//   sex (2 levels), region (6), occupation (15), district (50): categorical;
//   income, age, score, tenure: continuous.
// About 1% of `region` and `tenure` is missing. Deterministic in `seed`.
Dataset GenerateMixedDataset(size_t rows, uint64_t seed);

}  // namespace synthrisk

#endif  // SYNTHRISK_DATAGEN_H_
