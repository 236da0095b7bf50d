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


#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"
#include "synthrisk/datagen.h"
#include "synthrisk/evaluation.h"
#include "synthrisk/experiment.h"
#include "synthrisk/leaky.h"
#include "synthrisk/stats.h"
#include "synthrisk/tabular.h"
#include "synthrisk/utility.h"

namespace py = pybind11;
using namespace pybind11::literals;

namespace synthrisk {
namespace {

py::dict EstimateDict(const RiskEstimate& e) {
  const auto [lo, hi] = e.Interval();
  return py::dict("rate"_a = e.rate, "delta"_a = e.delta, "ci"_a = py::make_tuple(lo, hi),
                  "n_success"_a = e.n_success, "n_attacks"_a = e.n_attacks);
}

RiskEstimate Estimate(double rate, double delta) {
  RiskEstimate e;
  e.rate = rate;
  e.delta = delta;
  return e;
}

SchemaOverride MaybeSchema(const std::optional<std::string>& path) {
  return path ? LoadSchemaOverride(*path) : SchemaOverride{};
}

// Report JSON text for a run config given as JSON text.
std::string EvaluateJson(const std::string& config, const std::string& base_dir,
                         std::optional<size_t> workers) {
  RunConfig cfg = ParseRunConfig(nlohmann::json::parse(config), base_dir);
  if (workers) cfg.workers = *workers;
  Evaluation ev;
  {
    py::gil_scoped_release release;
    ev = RunEvaluation(cfg);
  }
  return ReportToJson(cfg, ev).dump();
}

std::string LinearityCsv(const std::string& config, const std::string& base_dir) {
  const LinearityConfig cfg = ParseLinearityConfig(nlohmann::json::parse(config), base_dir);
  std::vector<LinearityRow> rows;
  {
    py::gil_scoped_release release;
    rows = RunLinearityExperiment(cfg);
  }
  std::ostringstream out;
  WriteLinearityCsv(rows, out);
  return out.str();
}

}  // namespace
}  // namespace synthrisk

PYBIND11_MODULE(_synthrisk, m) {
  using namespace synthrisk;
  m.doc() = "Privacy-risk evaluation of synthetic tabular data.";
  m.attr("__version__") = kToolVersion;
  m.attr("REPORT_SCHEMA_VERSION") = kReportSchemaVersion;

  py::register_exception<InvalidArgument>(m, "InvalidArgument", PyExc_ValueError);
  py::register_exception<DataError>(m, "DataError", PyExc_ValueError);
  py::register_exception<IoError>(m, "IoError", PyExc_OSError);

  m.def("wilson", [](double n_success, size_t n_attacks, double alpha) {
    return EstimateDict(Wilson(n_success, n_attacks, alpha));
  }, "n_success"_a, "n_attacks"_a, "alpha"_a = kDefaultConfidence);

  m.def("strength", [](double r_main, double d_main, double r_naive, double d_naive) {
    const AttackStrength s = Strength(Estimate(r_main, d_main), Estimate(r_naive, d_naive));
    return py::dict("value"_a = s.value, "delta"_a = s.delta, "failed"_a = s.failed);
  }, "r_main"_a, "d_main"_a, "r_naive"_a, "d_naive"_a);

  m.def("risk", [](double r_train, double d_train, double r_control, double d_control) {
    const PrivacyRisk r = Risk(Estimate(r_train, d_train), Estimate(r_control, d_control));
    return py::dict("raw"_a = r.raw, "value"_a = r.value, "delta"_a = r.delta,
                    "ci"_a = py::make_tuple(r.ci.first, r.ci.second));
  }, "r_train"_a, "d_train"_a, "r_control"_a, "d_control"_a);

  m.def("success_curve", &SinglingOutSuccessCurve, "max_weight"_a, "n"_a);

  m.def("fit_correction_model", [](const std::vector<std::pair<double, double>>& samples) {
    std::vector<CorrectionSample> s;
    for (const auto& [n, m_] : samples) s.push_back({n, m_});
    const CorrectionModel model = FitCorrectionModel(s);
    return py::dict("amplitude"_a = model.amplitude,
                    "effective_weight"_a = model.effective_weight,
                    "fit_residual"_a = model.fit_residual, "degenerate"_a = model.degenerate,
                    "poor_fit"_a = model.poor_fit);
  }, "samples"_a);

  m.def("evaluate_json", &EvaluateJson, "config"_a, "base_dir"_a = "",
        "workers"_a = std::optional<size_t>());
  m.def("linearity_csv", &LinearityCsv, "config"_a, "base_dir"_a = "");

  m.def("generate_dataset", [](size_t rows, uint64_t seed, const std::string& out) {
    WriteCsv(GenerateMixedDataset(rows, seed), std::filesystem::path(out));
  }, "rows"_a, "seed"_a, "out"_a);

  m.def("leaky_synthesize", [](const std::string& train, const std::string& release, double f_l,
                               size_t m_rows, uint64_t seed, const std::string& out,
                               const std::optional<std::string>& schema) {
    const SchemaOverride s = MaybeSchema(schema);
    const Dataset syn = LeakySynthesize(LoadCsv(train, s), LoadCsv(release, s),
                                        LeakyConfig{f_l, m_rows, seed});
    WriteCsv(syn, std::filesystem::path(out));
  }, "train"_a, "release"_a, "f_l"_a, "m"_a, "seed"_a, "out"_a,
        "schema"_a = std::optional<std::string>());

  m.def("utility_score", [](const std::string& original, const std::string& synthetic,
                            size_t n_queries, uint64_t seed,
                            const std::optional<std::string>& schema) {
    const SchemaOverride s = MaybeSchema(schema);
    const utility::UtilityScore u =
        utility::Score(LoadCsv(original, s), LoadCsv(synthetic, s), n_queries, seed);
    return py::dict("marginal"_a = u.marginal, "pairwise"_a = u.pairwise, "query"_a = u.query,
                    "total"_a = u.total, "warnings"_a = u.warnings);
  }, "original"_a, "synthetic"_a, "n_queries"_a = utility::kDefaultQueries, "seed"_a = 0,
        "schema"_a = std::optional<std::string>());
}
