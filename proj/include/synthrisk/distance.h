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

#ifndef SYNTHRISK_DISTANCE_H_
#define SYNTHRISK_DISTANCE_H_

#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "synthrisk/tabular.h"

namespace synthrisk {

struct ValueRange {
  double min = 0.0;
  double max = 0.0;
  bool empty = false;  // no non-missing values were seen
};

// Per continuous attribute (min, max) used to scale absolute differences
// into [0, 1]. A degenerate range (max == min) contributes 0 distance.
class RangeTable {
 public:
  // Ranges over the non-missing values of `cols` in the union of both
  // datasets. Categorical columns are skipped.
  static RangeTable Compute(const Dataset& corpus, const Dataset& queries,
                            std::span<const std::string> cols);

  // Widens every range to also cover `other`; adds attributes it lacks.
  void Extend(const RangeTable& other);

  void Set(const std::string& name, ValueRange range);
  std::optional<ValueRange> Find(const std::string& name) const;

 private:
  std::map<std::string, ValueRange, std::less<>> ranges_;
};

// Mean over `cols` of the per-attribute Gower distance between row `row_a`
// of `a` and row `row_b` of `b`:
//   categorical: 0 when equal or both missing, else 1;
//   continuous: |x - y| / (max - min) clipped to [0, 1]; both missing 0,
//               one side missing 1.
// Throws InvalidArgument for empty/unknown columns or a kind mismatch.
double GowerDistance(const Dataset& a, size_t row_a, const Dataset& b, size_t row_b,
                     std::span<const std::string> cols, const RangeTable& ranges);

struct Neighbor {
  size_t index;
  double distance;
  friend bool operator==(const Neighbor&, const Neighbor&) = default;
};

// The k nearest corpus rows of one query, by increasing (distance, index).
using NeighborSet = std::vector<Neighbor>;

// Exact brute-force k nearest neighbours of every query row among the corpus
// rows, restricted to `cols`. Returns min(k, corpus size) neighbours per
// query; ties go to the lower corpus index. Deterministic for any worker
// count. Ranges are computed over corpus and queries together.
std::vector<NeighborSet> Knn(const Dataset& queries, const Dataset& corpus,
                             std::span<const std::string> cols, size_t k,
                             size_t workers = 1);

std::vector<NeighborSet> Knn(const Dataset& queries, const Dataset& corpus,
                             std::span<const std::string> cols, size_t k,
                             const RangeTable& ranges, size_t workers = 1);

}  // namespace synthrisk

#endif  // SYNTHRISK_DISTANCE_H_
