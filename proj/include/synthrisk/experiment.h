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


// Leaky-synthesizer validation: risk measured as a function of the fraction
// of training rows disclosed verbatim.

#ifndef SYNTHRISK_EXPERIMENT_H_
#define SYNTHRISK_EXPERIMENT_H_

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "synthrisk/evaluation.h"
#include "synthrisk/tabular.h"

namespace synthrisk {

struct LinearityConfig {
  // Input table: a CSV path, or a generated mixed-type table of `generate_rows`.
  std::optional<std::filesystem::path> dataset;
  std::optional<std::filesystem::path> schema;
  size_t generate_rows = 12000;
  size_t n_train = 5000;
  size_t n_control = 2000;
  size_t n_release = 5000;
  size_t m = 5000;  // leaky output size
  std::vector<double> f_l{0.0, 0.25, 0.5, 0.75, 1.0};
  // Attribute counts for the attacks; 0 means full auxiliary information.
  std::vector<size_t> aux_sizes{0};
  std::vector<uint64_t> seeds{0};
  size_t n_attacks = 2000;
  // Inference secret; empty picks the first categorical attribute.
  std::string secret;
  double alpha = kDefaultConfidence;
  double control_rate_cut = kDefaultControlRateCut;
  size_t workers = 0;
  std::optional<std::filesystem::path> output;
};

LinearityConfig ParseLinearityConfig(const nlohmann::json& doc,
                                     const std::filesystem::path& base_dir = {});
LinearityConfig LoadLinearityConfig(const std::filesystem::path& path);

struct LinearityRow {
  std::string attack;  // "singling_out", "linkability" or "inference"
  double f_l = 0.0;
  size_t aux = 0;
  uint64_t seed = 0;
  bool ok = false;
  std::string error;
  double risk = 0.0;
  double risk_raw = 0.0;
  double delta = 0.0;
  double ci_low = 0.0;
  double ci_high = 0.0;
  double r_train = 0.0;
  double r_control = 0.0;
  double r_naive = 0.0;
  bool excluded = false;
};

// For every seed, f_l and aux size: splits the table three ways, builds the
// leaky release and runs multivariate singling out, linkability and
// inference on it.
std::vector<LinearityRow> RunLinearityExperiment(const LinearityConfig& cfg);

// Header plus one line per row.
void WriteLinearityCsv(const std::vector<LinearityRow>& rows, std::ostream& out);

}  // namespace synthrisk

#endif  // SYNTHRISK_EXPERIMENT_H_
