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


#ifndef SYNTHRISK_TESTS_TEST_UTIL_H_
#define SYNTHRISK_TESTS_TEST_UTIL_H_

#include <algorithm>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "synthrisk/tabular.h"

namespace synthrisk::testing {

inline Column Cat(std::string name, std::vector<std::optional<std::string>> tokens) {
  return Column::Categorical(std::move(name), tokens);
}

inline Column Num(std::string name, std::vector<std::optional<double>> values) {
  return Column::Continuous(std::move(name), std::move(values));
}

// Random table with `n_cat` categorical columns (c0, c1, ...) of cardinality
// `levels` and `n_num` continuous columns (x0, x1, ...) drawn from a few
// distinct values, so exact ties occur. Each cell is missing with
// probability `missing_rate`.
inline Dataset RandomMixed(size_t rows, size_t n_cat, size_t n_num, double missing_rate,
                           uint64_t seed, int levels = 4, int num_levels = 7) {
  std::mt19937_64 rng(seed);
  std::bernoulli_distribution missing(missing_rate);
  std::uniform_int_distribution<int> level(0, levels - 1);
  std::uniform_int_distribution<int> num_level(0, num_levels - 1);
  std::vector<Column> cols;
  for (size_t c = 0; c < n_cat; ++c) {
    std::vector<std::optional<std::string>> v(rows);
    for (auto& x : v) {
      if (!missing(rng)) x = "v" + std::to_string(level(rng));
    }
    cols.push_back(Cat("c" + std::to_string(c), v));
  }
  for (size_t c = 0; c < n_num; ++c) {
    std::vector<std::optional<double>> v(rows);
    for (auto& x : v) {
      if (!missing(rng)) x = 0.5 * num_level(rng) - 1.0;
    }
    cols.push_back(Num("x" + std::to_string(c), std::move(v)));
  }
  return Dataset(std::move(cols));
}

inline std::vector<size_t> Iota(size_t n) {
  std::vector<size_t> v(n);
  for (size_t i = 0; i < n; ++i) v[i] = i;
  return v;
}

// A uniformly random row permutation of `ds`.
inline Dataset Shuffled(const Dataset& ds, uint64_t seed) {
  auto order = Iota(ds.n_rows());
  std::mt19937_64 rng(seed);
  std::shuffle(order.begin(), order.end(), rng);
  return ds.Take(order);
}

}  // namespace synthrisk::testing

#endif  // SYNTHRISK_TESTS_TEST_UTIL_H_
