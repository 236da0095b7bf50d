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

#ifndef SYNTHRISK_SINGLING_OUT_H_
#define SYNTHRISK_SINGLING_OUT_H_

#include <cstdint>
#include <string_view>
#include <vector>

#include "synthrisk/predicate.h"
#include "synthrisk/stats.h"
#include "synthrisk/tabular.h"

namespace synthrisk::singling_out {

enum class Mode { kUnivariate, kMultivariate };

std::string_view ToString(Mode mode);
Mode ParseMode(std::string_view text);

struct Config {
  size_t n_attacks = 2000;
  Mode mode = Mode::kMultivariate;
  size_t n_attrs = 3;  // multivariate only
  uint64_t seed = 0;
  // Multivariate generation gives up after this many candidates per guess.
  size_t max_generation_factor = 50;
};

struct GuessSet {
  std::vector<Predicate> predicates;
  // Fewer than n_attacks guesses could be produced.
  bool exhausted = false;
  size_t candidates_tried = 0;
};

// Guesses that single out a record of `syn`:
//  univariate: univariate predicates over every attribute, n_attacks of
//    them picked at random;
//  multivariate: predicates built from random records on random attribute
//    subsets, kept when they match exactly one row of `syn` (duplicates
//    dropped).
GuessSet GenerateGuesses(const Dataset& syn, const Config& cfg, Rng& rng);

struct Result {
  OutcomeVector outcomes_main;
  OutcomeVector outcomes_naive;
  OutcomeVector outcomes_control;
  size_t m_train = 0;
  size_t m_naive = 0;
  size_t m_control = 0;
  std::vector<Predicate> predicates;
  std::vector<Predicate> naive_predicates;
  bool exhausted = false;
};

// o_i = 1 iff guess i matches exactly one row of `target`.
OutcomeVector EvaluateGuesses(std::span<const Predicate> guesses, const Dataset& target,
                              size_t workers = 1);

// Main guesses from `syn` evaluated on train and control; naive random
// predicates (n_attrs attributes, 1 in univariate mode) evaluated on train.
// The control count is not rescaled here.
Result Run(const Dataset& syn, const Dataset& train, const Dataset& control, const Config& cfg,
           size_t workers = 1);

// Population sizes for fitting the correction model: `n_sizes` values evenly
// spaced over [1000, n_control], or over [max(1, n_control / 10), n_control]
// when n_control <= 1000. Duplicates after rounding are dropped.
std::vector<size_t> CorrectionSizes(size_t n_control, size_t n_sizes = 10);

// For every size, counts the guesses singling out in `repeats` random
// without-replacement subsamples of `control`.
std::vector<CorrectionSample> MeasureSizeCurve(std::span<const Predicate> guesses,
                                               const Dataset& control,
                                               std::span<const size_t> sizes, size_t repeats,
                                               Rng& rng, size_t workers = 1);

// The control success count rescaled to the training set size, together with
// the fitted model. Identity (and no fit) when the sizes match.
struct CorrectedControl {
  double m_control = 0.0;
  // S(n_train) / S(n_control); 1 when no correction was applied.
  double scale = 1.0;
  bool applied = false;
  CorrectionModel model;
};

CorrectedControl CorrectControlSuccesses(const Result& result, const Dataset& train,
                                         const Dataset& control, Rng& rng,
                                         size_t workers = 1);

}  // namespace synthrisk::singling_out

#endif  // SYNTHRISK_SINGLING_OUT_H_
