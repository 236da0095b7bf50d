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


// Command-line entry point: evaluate, leaky, experiment linearity, generate
// and split.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "synthrisk/datagen.h"
#include "synthrisk/evaluation.h"
#include "synthrisk/experiment.h"
#include "synthrisk/leaky.h"
#include "synthrisk/tabular.h"

namespace {

using synthrisk::DatasetRole;

constexpr int kExitOk = 0;
constexpr int kExitError = 1;
constexpr int kExitSettingFailed = 2;

synthrisk::SchemaOverride MaybeSchema(const std::string& path) {
  return path.empty() ? synthrisk::SchemaOverride{} : synthrisk::LoadSchemaOverride(path);
}

void WriteText(const std::string& text, const std::string& path) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw synthrisk::IoError("cannot write '" + path + "'");
  out << text;
  if (!out) throw synthrisk::IoError("failed writing '" + path + "'");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Privacy risk evaluation for synthetic tabular data"};
  app.require_subcommand(1);

  std::string config_path;
  std::string output_path;
  std::optional<uint64_t> seed;
  size_t workers = 0;
  bool no_timing = false;
  auto* evaluate = app.add_subcommand("evaluate", "Run the configured attacks and write a report");
  evaluate->add_option("--config", config_path, "Run configuration (JSON)")->required();
  evaluate->add_option("--seed", seed, "Override the configured master seed");
  evaluate->add_option("--output", output_path, "Report path ('-' for stdout)");
  evaluate->add_option("--workers", workers, "Worker threads (0: SYNTHRISK_WORKERS or all cores)");
  evaluate->add_flag("--no-timing", no_timing, "Omit timing fields from the report");

  std::string train_path, release_path, out_path, schema_path;
  double f_l = 0.0;
  size_t m = 0;
  uint64_t leaky_seed = 0;
  auto* leaky = app.add_subcommand("leaky", "Mix train and release rows into a leaky release");
  leaky->add_option("--train", train_path, "Training CSV")->required();
  leaky->add_option("--release", release_path, "Release CSV (disjoint from train)")->required();
  leaky->add_option("--f-l", f_l, "Fraction of rows copied from train")
      ->required()
      ->check(CLI::Range(0.0, 1.0));
  leaky->add_option("--m", m, "Output rows")->required();
  leaky->add_option("--seed", leaky_seed, "Random seed");
  leaky->add_option("--out", out_path, "Output CSV")->required();
  leaky->add_option("--schema", schema_path, "Column kind overrides (JSON)");

  auto* experiment = app.add_subcommand("experiment", "Validation experiments");
  experiment->require_subcommand(1);
  std::string exp_config;
  std::optional<uint64_t> exp_seed;
  std::string exp_output;
  size_t exp_workers = 0;
  auto* linearity = experiment->add_subcommand("linearity", "Risk against leaked fraction");
  linearity->add_option("--config", exp_config, "Experiment configuration (JSON)")->required();
  linearity->add_option("--seed", exp_seed, "Run a single seed instead of the configured list");
  linearity->add_option("--output", exp_output, "CSV path ('-' for stdout)");
  linearity->add_option("--workers", exp_workers, "Worker threads");

  size_t gen_rows = 12000;
  uint64_t gen_seed = 0;
  std::string gen_out;
  auto* generate = app.add_subcommand("generate", "Write a procedural mixed-type table");
  generate->add_option("--rows", gen_rows, "Rows")->check(CLI::PositiveNumber);
  generate->add_option("--seed", gen_seed, "Random seed");
  generate->add_option("--out", gen_out, "Output CSV")->required();

  std::string split_in, split_train, split_control, split_schema;
  double control_fraction = 0.2;
  uint64_t split_seed = 0;
  auto* split = app.add_subcommand("split", "Partition a table into train and control");
  split->add_option("--input", split_in, "Input CSV")->required();
  split->add_option("--control-fraction", control_fraction, "Control share")
      ->check(CLI::Range(0.0, 1.0));
  split->add_option("--seed", split_seed, "Random seed");
  split->add_option("--train-out", split_train, "Train CSV")->required();
  split->add_option("--control-out", split_control, "Control CSV")->required();
  split->add_option("--schema", split_schema, "Column kind overrides (JSON)");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*evaluate) {
      synthrisk::RunConfig cfg = synthrisk::LoadRunConfig(config_path);
      if (seed) cfg.seed = *seed;
      if (workers) cfg.workers = workers;
      if (no_timing) cfg.include_timing = false;
      const auto evaluation = synthrisk::RunEvaluation(cfg);
      const auto report = synthrisk::ReportToJson(cfg, evaluation);
      std::string target = output_path;
      if (target.empty() && cfg.output) target = cfg.output->string();
      WriteText(report.dump(2) + "\n", target);
      for (const auto& r : evaluation.settings) {
        if (!r.ok) {
          std::cerr << "setting " << r.setting.index << " (" << synthrisk::ToString(r.setting.kind)
                    << ") failed: " << r.error << "\n";
        }
      }
      return evaluation.all_ok() ? kExitOk : kExitSettingFailed;
    }
    if (*leaky) {
      const auto schema = MaybeSchema(schema_path);
      const auto train = synthrisk::LoadCsv(train_path, schema, DatasetRole::kTrain);
      const auto release = synthrisk::LoadCsv(release_path, schema, DatasetRole::kRelease);
      const auto out = synthrisk::LeakySynthesize(train, release, {f_l, m, leaky_seed});
      synthrisk::WriteCsv(out, std::filesystem::path(out_path));
      return kExitOk;
    }
    if (*linearity) {
      synthrisk::LinearityConfig cfg = synthrisk::LoadLinearityConfig(exp_config);
      if (exp_seed) cfg.seeds = {*exp_seed};
      if (exp_workers) cfg.workers = exp_workers;
      const auto rows = synthrisk::RunLinearityExperiment(cfg);
      std::ostringstream csv;
      synthrisk::WriteLinearityCsv(rows, csv);
      std::string target = exp_output;
      if (target.empty() && cfg.output) target = cfg.output->string();
      WriteText(csv.str(), target);
      bool ok = true;
      for (const auto& r : rows) {
        if (!r.ok) {
          ok = false;
          std::cerr << r.attack << " f_l=" << r.f_l << " aux=" << r.aux << " failed: " << r.error
                    << "\n";
        }
      }
      return ok ? kExitOk : kExitSettingFailed;
    }
    if (*generate) {
      synthrisk::WriteCsv(synthrisk::GenerateMixedDataset(gen_rows, gen_seed),
                          std::filesystem::path(gen_out));
      return kExitOk;
    }
    if (*split) {
      const auto ds = synthrisk::LoadCsv(split_in, MaybeSchema(split_schema));
      const auto parts = synthrisk::Split(ds, {control_fraction, split_seed});
      synthrisk::WriteCsv(parts.train, std::filesystem::path(split_train));
      synthrisk::WriteCsv(parts.control, std::filesystem::path(split_control));
      return kExitOk;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitError;
  }
  return kExitError;
}
