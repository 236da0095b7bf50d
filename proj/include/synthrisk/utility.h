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

// A 0-100 similarity score between an original and a synthetic table, built
// from marginal, pairwise-dependency and query-count agreement. All sums run
// in a canonical value order, so every component is exactly invariant under
// row permutations of either input.

#ifndef SYNTHRISK_UTILITY_H_
#define SYNTHRISK_UTILITY_H_

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "synthrisk/tabular.h"

namespace synthrisk::utility {

inline constexpr size_t kDefaultQueries = 500;
inline constexpr size_t kMaxQueryAtoms = 3;

struct ColumnScore {
  std::string name;
  std::string statistic;  // "jsd" or "ks"
  double value = 0.0;     // the divergence or distance
  double score = 0.0;
};

struct PairScore {
  std::string first;
  std::string second;
  std::string statistic;  // "pearson", "correlation_ratio" or "nmi"
  double original = 0.0;
  double synthetic = 0.0;
  double score = 0.0;
};

struct UtilityScore {
  double marginal = 0.0;
  // Absent when no attribute pair has a defined statistic.
  std::optional<double> pairwise;
  double query = 0.0;
  // Mean of the available components.
  double total = 0.0;
  std::vector<ColumnScore> columns;
  std::vector<PairScore> pairs;
  std::vector<std::string> warnings;
};

// Base-2 Jensen-Shannon divergence of two probability vectors, in [0, 1].
double JensenShannon(std::span<const double> p, std::span<const double> q);

// Two-sample Kolmogorov-Smirnov statistic sup |F_a - F_b|. Empty inputs give
// 0 when both are empty and 1 otherwise.
double KolmogorovSmirnov(std::span<const double> a, std::span<const double> b);

// Mean of per-column scores over the shared attributes. Categorical columns
// use 100 (1 - JSD) with missing as its own category; continuous columns use
// 100 (1 - KS) with missing placed below every value.
double MarginalScore(const Dataset& ori, const Dataset& syn,
                     std::vector<ColumnScore>* columns = nullptr);

// Mean over attribute pairs of 100 (1 - |stat_ori - stat_syn|). Pairs whose
// statistic is undefined on either side (constant columns) are skipped and
// reported in `warnings`.
std::optional<double> PairwiseScore(const Dataset& ori, const Dataset& syn,
                                    std::vector<PairScore>* pairs = nullptr,
                                    std::vector<std::string>* warnings = nullptr,
                                    size_t workers = 1);

// 100 max(0, corr) between the match counts of `n_queries` random
// conjunctions with 1 to 3 atoms, drawn from `ori`. Zero-variance counts
// trigger one fresh draw; a second failure yields 0 and a warning.
double QueryScore(const Dataset& ori, const Dataset& syn, size_t n_queries, Rng& rng,
                  std::vector<std::string>* warnings = nullptr, size_t workers = 1);

UtilityScore Score(const Dataset& ori, const Dataset& syn, size_t n_queries = kDefaultQueries,
                   uint64_t seed = 0, size_t workers = 1);

}  // namespace synthrisk::utility

#endif  // SYNTHRISK_UTILITY_H_
