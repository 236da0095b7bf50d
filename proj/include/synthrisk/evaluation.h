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

// Evaluation runs driven by a JSON configuration: attack-setting sweeps,
// risk assessment per setting, aggregation and the JSON report.

#ifndef SYNTHRISK_EVALUATION_H_
#define SYNTHRISK_EVALUATION_H_

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "synthrisk/linkability.h"
#include "synthrisk/singling_out.h"
#include "synthrisk/stats.h"
#include "synthrisk/tabular.h"
#include "synthrisk/utility.h"

namespace synthrisk {

inline constexpr const char* kReportSchemaVersion = "1.0";
inline constexpr const char* kToolVersion = "0.1.0";
inline constexpr size_t kDefaultBootstrapResamples = 1000;

struct SinglingOutSweep {
  size_t n_attacks = 2000;
  std::vector<singling_out::Mode> modes{singling_out::Mode::kMultivariate};
  // Attribute counts for the multivariate mode; 0 means all attributes.
  std::vector<size_t> n_attrs{3};
  size_t max_generation_factor = 50;
};

struct LinkabilitySweep {
  size_t n_attacks = 2000;
  // Explicit fragments. When empty, `aux_sizes` draws random splits.
  std::vector<linkability::AuxSplit> aux_splits;
  // Total attributes known (split evenly over both fragments); 0 means all.
  std::vector<size_t> aux_sizes{0};
  std::vector<size_t> k{1};
};

struct InferenceSweep {
  size_t n_attacks = 2000;
  // Empty means every attribute in turn.
  std::vector<std::string> secrets;
  // Explicit auxiliary sets. When empty, `aux_sizes` draws random subsets of
  // the non-secret attributes; 0 means all of them.
  std::vector<std::vector<std::string>> aux_cols;
  std::vector<size_t> aux_sizes{0};
  double tolerance = 0.05;
};

struct UtilityOptions {
  bool enabled = true;
  size_t n_queries = utility::kDefaultQueries;
};

struct RunConfig {
  std::filesystem::path train;
  std::filesystem::path control;
  std::filesystem::path synthetic;
  std::optional<std::filesystem::path> schema;
  std::optional<std::filesystem::path> output;
  double alpha = kDefaultConfidence;
  uint64_t seed = 0;
  size_t workers = 0;  // 0: resolve from the environment
  size_t repetitions = 1;
  double control_rate_cut = kDefaultControlRateCut;
  size_t bootstrap_resamples = kDefaultBootstrapResamples;
  bool include_timing = true;
  std::optional<SinglingOutSweep> singling_out;
  std::optional<LinkabilitySweep> linkability;
  std::optional<InferenceSweep> inference;
  UtilityOptions utility;
};

// Relative paths are resolved against `base_dir`. Throws InvalidArgument for
// unknown keys, wrong types, or a config without any attack block.
RunConfig ParseRunConfig(const nlohmann::json& doc, const std::filesystem::path& base_dir = {});
RunConfig LoadRunConfig(const std::filesystem::path& path);

enum class AttackKind { kSinglingOut, kLinkability, kInference };

std::string_view ToString(AttackKind kind);

// One concrete attack configuration of a sweep.
struct AttackSetting {
  size_t index = 0;
  size_t repetition = 0;
  uint64_t seed = 0;
  AttackKind kind = AttackKind::kSinglingOut;
  size_t n_attacks = 0;
  singling_out::Mode mode = singling_out::Mode::kMultivariate;
  size_t n_attrs = 0;
  size_t max_generation_factor = 0;
  linkability::AuxSplit split;
  size_t k = 1;
  std::string secret;
  std::vector<std::string> aux;
  double tolerance = 0.0;
};

// Expands the sweeps into settings. Random attribute subsets come from streams
// derived from the master seed, so the list is a function of (config, schema).
std::vector<AttackSetting> ExpandSettings(const RunConfig& cfg,
                                          const std::vector<std::string>& attributes);

struct CorrectionInfo {
  bool applied = false;
  double m_control_raw = 0.0;
  double scale = 1.0;
  CorrectionModel model;
};

struct SettingResult {
  AttackSetting setting;
  bool ok = false;
  std::string error;
  RiskAssessment assessment;
  std::optional<CorrectionInfo> correction;  // singling out only
  bool exhausted = false;                    // singling out only
  double seconds = 0.0;
};

// Risk assessment from success counts; `m_control` may be fractional.
RiskAssessment AssessCounts(double m_train, size_t n_train_attacks, double m_naive,
                            size_t n_naive_attacks, double m_control, size_t n_control_attacks,
                            double alpha, double control_rate_cut);

SettingResult RunSetting(const AttackSetting& setting, const Dataset& syn, const Dataset& train,
                         const Dataset& control, double alpha, double control_rate_cut,
                         size_t workers = 1);

struct Aggregate {
  size_t n_settings = 0;
  size_t n_valid = 0;
  std::optional<BootstrapMean> mean;
  std::optional<double> max;
};

struct Evaluation {
  std::vector<SettingResult> settings;
  std::vector<std::pair<AttackKind, Aggregate>> aggregates;
  std::optional<utility::UtilityScore> utility;
  size_t train_rows = 0;
  size_t control_rows = 0;
  size_t synthetic_rows = 0;
  std::vector<std::string> attributes;
  std::vector<std::string> warnings;
  double seconds = 0.0;

  bool all_ok() const;
};

// Runs every setting on in-memory data. Settings run in parallel across
// `workers`; each owns the RNG stream derived from (seed, setting index).
Evaluation Evaluate(const RunConfig& cfg, const Dataset& train, const Dataset& control,
                    const Dataset& syn);

nlohmann::ordered_json ReportToJson(const RunConfig& cfg, const Evaluation& evaluation);

// Loads the configured files and evaluates. Throws on I/O or schema errors;
// per-setting failures are recorded in the result instead.
Evaluation RunEvaluation(const RunConfig& cfg);

}  // namespace synthrisk

#endif  // SYNTHRISK_EVALUATION_H_
