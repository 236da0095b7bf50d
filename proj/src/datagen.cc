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

#include "synthrisk/datagen.h"

#include <algorithm>
#include <cmath>
#include <random>
#include <string>

namespace synthrisk {

namespace {

constexpr double kMissingRate = 0.01;

// Maps a standard normal draw onto one of `levels` equiprobable bins.
int Bin(double z, int levels) {
  const double u = 0.5 * std::erfc(-z / std::sqrt(2.0));
  return std::clamp(static_cast<int>(u * levels), 0, levels - 1);
}

std::string Label(const char* prefix, int i) { return prefix + std::to_string(i); }

}  // namespace

Dataset GenerateMixedDataset(size_t rows, uint64_t seed) {
  Rng rng(seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  std::uniform_real_distribution<double> unit(0.0, 1.0);

  std::vector<std::optional<std::string>> sex(rows), region(rows), occupation(rows),
      district(rows);
  std::vector<std::optional<double>> income(rows), age(rows), score(rows), tenure(rows);
  for (size_t r = 0; r < rows; ++r) {
    const double z1 = normal(rng);
    const double z2 = normal(rng);
    sex[r] = Label("s", Bin(0.6 * z1 + 0.8 * normal(rng), 2));
    if (unit(rng) >= kMissingRate) region[r] = Label("r", Bin(0.7 * z2 + 0.71 * normal(rng), 6));
    occupation[r] = Label("o", Bin(0.8 * z1 + 0.4 * z2 + 0.45 * normal(rng), 15));
    // Skewed: low indices are frequent.
    const double u = unit(rng);
    district[r] = Label("d", std::min(49, static_cast<int>(50.0 * u * u)));
    income[r] = std::exp(10.0 + 0.5 * z1 + 0.3 * normal(rng));
    age[r] = std::clamp(45.0 + 12.0 * (0.5 * z1 + 0.87 * normal(rng)), 18.0, 90.0);
    score[r] = 0.5 * z1 - 0.5 * z2 + 0.7 * normal(rng);
    const double t = 5.0 * std::exp(0.4 * z2 + 0.5 * normal(rng));
    if (unit(rng) >= kMissingRate) tenure[r] = t;
  }
  std::vector<Column> cols;
  cols.push_back(Column::Categorical("sex", sex));
  cols.push_back(Column::Categorical("region", region));
  cols.push_back(Column::Categorical("occupation", occupation));
  cols.push_back(Column::Categorical("district", district));
  cols.push_back(Column::Continuous("income", std::move(income)));
  cols.push_back(Column::Continuous("age", std::move(age)));
  cols.push_back(Column::Continuous("score", std::move(score)));
  cols.push_back(Column::Continuous("tenure", std::move(tenure)));
  return Dataset(std::move(cols));
}

}  // namespace synthrisk
