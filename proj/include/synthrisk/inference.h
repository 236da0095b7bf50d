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

#ifndef SYNTHRISK_INFERENCE_H_
#define SYNTHRISK_INFERENCE_H_

#include <cstdint>
#include <string>
#include <vector>

#include "synthrisk/tabular.h"

namespace synthrisk::inference {

inline constexpr double kDefaultTolerance = 0.05;
// Truth values with |s| at or below this are compared on an absolute scale.
inline constexpr double kZeroTruth = 1e-12;

struct Config {
  std::vector<std::string> aux_cols;
  std::string secret;
  size_t n_attacks = 2000;
  double tolerance = kDefaultTolerance;
  uint64_t seed = 0;
};

struct Result {
  OutcomeVector outcomes_main;
  OutcomeVector outcomes_control;
  OutcomeVector outcomes_naive;
  std::vector<Value> guesses;  // for the main targets
  std::vector<size_t> train_targets;
  std::vector<size_t> control_targets;
  // Rows whose secret is missing and so cannot be targets.
  size_t train_missing_secret = 0;
  size_t control_missing_secret = 0;
};

// Whether `guess` counts as a correct inference of `truth`.
//  categorical: exact match (missing matches missing);
//  continuous: |truth - guess| / |truth| <= tolerance, or
//              |guess| <= tolerance * column_range when |truth| is ~0.
bool IsCorrectGuess(const Value& truth, const Value& guess, ColumnKind kind, double tolerance,
                    double column_range);

// Guesses the secret of N_A random train targets (main) and N_A random
// control targets (control) from the nearest synthetic row on `aux_cols`;
// the naive attack guesses uniformly from the secret's support in `syn`.
// Targets are drawn among rows whose secret is present.
Result Run(const Dataset& syn, const Dataset& train, const Dataset& control, const Config& cfg,
           size_t workers = 1);

}  // namespace synthrisk::inference

#endif  // SYNTHRISK_INFERENCE_H_
