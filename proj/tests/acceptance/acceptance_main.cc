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


// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit when any
// criterion fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "oracles.h"
#include "synthrisk/datagen.h"
#include "synthrisk/distance.h"
#include "synthrisk/experiment.h"
#include "synthrisk/inference.h"
#include "synthrisk/leaky.h"
#include "synthrisk/linkability.h"
#include "synthrisk/stats.h"
#include "synthrisk/utility.h"
#include "test_util.h"

namespace synthrisk {
namespace {

struct Outcome {
  bool pass = true;
  std::string detail;
};

struct Criterion {
  int id;
  const char* title;
  std::function<Outcome()> run;
};

std::string Fmt(const char* format, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof(buf), format, args...);
  return buf;
}

RiskEstimate Rate(double rate) {
  RiskEstimate e;
  e.rate = rate;
  e.n_attacks = 1;
  return e;
}

Outcome RiskWorkedExample() {
  const double r = Risk(Rate(0.9), Rate(0.8)).value;
  return {std::abs(r - 0.5) <= 1e-12, Fmt("R(0.9, 0.8) = %.15g", r)};
}

// Shared by the linearity and zero-point criteria.
const std::vector<LinearityRow>& LinearityRows(double* seconds) {
  static double elapsed = 0.0;
  static const std::vector<LinearityRow> rows = [] {
    LinearityConfig cfg;
    cfg.generate_rows = 12000;
    cfg.n_train = 5000;
    cfg.n_control = 2000;
    cfg.n_release = 5000;
    cfg.m = 5000;
    cfg.f_l = {0.0, 0.5, 1.0};
    cfg.aux_sizes = {0};
    cfg.seeds = {1};
    cfg.n_attacks = 2000;
    cfg.secret = "occupation";
    const auto start = std::chrono::steady_clock::now();
    auto out = RunLinearityExperiment(cfg);
    elapsed = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return out;
  }();
  *seconds = elapsed;
  return rows;
}

Outcome Linearity() {
  double seconds = 0.0;
  const auto& rows = LinearityRows(&seconds);
  Outcome out;
  std::ostringstream detail;
  for (const auto& r : rows) {
    if (r.attack == "linkability") continue;
    if (!r.ok) {
      out.pass = false;
      detail << r.attack << "@" << r.f_l << " error: " << r.error << "; ";
      continue;
    }
    bool ok = std::abs(r.risk - r.f_l) <= 0.10;
    if (r.f_l == 0.0 || r.f_l == 1.0) ok = ok && r.ci_low <= r.f_l && r.f_l <= r.ci_high;
    out.pass = out.pass && ok;
    detail << Fmt("%s@%.1f R=%.3f [%.3f, %.3f]%s; ", r.attack.c_str(), r.f_l, r.risk, r.ci_low,
                  r.ci_high, ok ? "" : " MISS");
  }
  const bool fast = seconds <= 600.0;
  out.pass = out.pass && fast;
  detail << Fmt("run %.1f s", seconds);
  out.detail = detail.str();
  return out;
}

Outcome ZeroPoint() {
  double seconds = 0.0;
  const auto& rows = LinearityRows(&seconds);
  Outcome out;
  std::ostringstream detail;
  for (const auto& r : rows) {
    if (r.f_l != 0.0) continue;
    const bool ok = r.ok && std::abs(r.risk_raw) <= r.delta;
    out.pass = out.pass && ok;
    detail << Fmt("%s |R|=%.4f delta=%.4f%s; ", r.attack.c_str(), std::abs(r.risk_raw), r.delta,
                  ok ? "" : " MISS");
  }
  out.detail = detail.str();
  return out;
}

Outcome WilsonCoverage() {
  Rng rng(20260101);
  Outcome out;
  for (double p : {0.05, 0.5, 0.95}) {
    std::binomial_distribution<int> draw(500, p);
    int covered = 0;
    for (int t = 0; t < 1000; ++t) {
      const auto [lo, hi] = Wilson(draw(rng), 500).Interval();
      covered += lo <= p && p <= hi;
    }
    out.pass = out.pass && covered >= 930;
    out.detail += Fmt("p=%.2f %.1f%%; ", p, covered / 10.0);
  }
  return out;
}

Outcome KnnOracle() {
  size_t mismatches = 0;
  for (uint64_t seed = 0; seed < 50; ++seed) {
    const Dataset corpus = testing::RandomMixed(200, 3, 3, 0.1, 5000 + seed);
    const Dataset queries = testing::RandomMixed(200, 3, 3, 0.1, 6000 + seed);
    const auto cols = corpus.column_names();
    const size_t k = 1 + seed % 5;
    const auto got = Knn(queries, corpus, cols, k);
    const auto want = testing::OracleKnn(queries, corpus, cols, k);
    for (size_t q = 0; q < got.size(); ++q) {
      for (size_t i = 0; i < got[q].size(); ++i) mismatches += got[q][i].index != want[q][i].index;
    }
  }
  return {mismatches == 0, Fmt("50 instances, %zu index mismatches", mismatches)};
}

Outcome NaiveLinkability() {
  Rng rng(77);
  const auto out = linkability::NaiveOutcomes(10, 2, 2000, rng);
  const double p = testing::IntersectProbability(10, 2);
  const double sd = std::sqrt(2000 * p * (1 - p));
  const double diff = std::abs(static_cast<double>(out.successes()) - 2000 * p);
  return {diff <= 3 * sd, Fmt("%zu/2000 vs expected %.1f (%.2f sigma)", out.successes(),
                              2000 * p, diff / sd)};
}

Outcome CorrectionModelChecks() {
  // (a) closed form against quadrature.
  double worst = 0.0;
  for (double n : {10.0, 1e3, 1e5}) {
    for (double w : {1e-8, 1e-6, 1e-5, 1e-4, 1e-3, 1e-2, 0.1, 0.3, 0.7, 1.0}) {
      worst = std::max(worst, std::abs(SinglingOutSuccessCurve(w, n) - testing::QuadratureCurve(w, n)));
    }
  }
  const bool a = worst <= 1e-9;
  // (b) generate and recover: 10 sizes over [1000, 10000], 5 Poisson draws each.
  double worst_rel = 0.0;
  for (uint64_t seed = 0; seed < 10; ++seed) {
    Rng rng(seed);
    for (auto [A, w] : {std::pair{1e7, 5e-4}, std::pair{2e7, 2e-4}, std::pair{5e6, 1e-3}}) {
      std::vector<CorrectionSample> samples;
      for (size_t n : std::vector<size_t>{1000, 2000, 3000, 4000, 5000, 6000, 7000, 8000, 9000, 10000}) {
        const double mean = A * SinglingOutSuccessCurve(w, static_cast<double>(n));
        for (int rep = 0; rep < 5; ++rep) {
          samples.push_back({static_cast<double>(n),
                             static_cast<double>(std::poisson_distribution<long>(mean)(rng))});
        }
      }
      const CorrectionModel m = FitCorrectionModel(samples);
      worst_rel = std::max({worst_rel, std::abs(m.amplitude - A) / A,
                            std::abs(m.effective_weight - w) / w});
    }
  }
  const bool b = worst_rel <= 0.20;
  // (c) identity at equal sizes.
  Rng rng(3);
  std::uniform_real_distribution<double> u(0, 1);
  bool c = true;
  for (int i = 0; i < 1000; ++i) {
    CorrectionModel model;
    model.amplitude = 1 + 1e6 * u(rng);
    model.effective_weight = std::pow(10.0, -8 * u(rng));
    const double m = std::floor(2000 * u(rng));
    const size_t n = 1 + static_cast<size_t>(1e5 * u(rng));
    c = c && ScaleControlSuccesses(m, model, n, n) == m;
  }
  return {a && b && c, Fmt("(a) max |err| %.2e%s; (b) max rel err %.3f%s; (c) identity %s", worst,
                           a ? "" : " MISS", worst_rel, b ? "" : " MISS", c ? "exact" : "MISS")};
}

Outcome UtilitySelfScore() {
  // Each case pairs a table with an independent draw of the same shape.
  const std::vector<std::function<Dataset(uint64_t)>> makers{
      [](uint64_t seed) { return GenerateMixedDataset(3000, seed); },
      [](uint64_t seed) { return testing::RandomMixed(500, 2, 3, 0.1, seed); },
      [](uint64_t seed) { return testing::RandomMixed(200, 0, 2, 0.0, seed); },
      [](uint64_t seed) { return testing::RandomMixed(200, 3, 0, 0.2, seed); }};
  bool self = true;
  bool shuffle = true;
  for (size_t i = 0; i < makers.size(); ++i) {
    const Dataset ds = makers[i](i + 1);
    const Dataset syn = makers[i](i + 100);
    self = self && utility::Score(ds, ds, 500, i).total == 100.0;
    const auto a = utility::Score(ds, syn, 300, 9);
    const auto b = utility::Score(testing::Shuffled(ds, 5), testing::Shuffled(syn, 6), 300, 9);
    shuffle = shuffle && a.total == b.total && a.marginal == b.marginal &&
              a.pairwise == b.pairwise && a.query == b.query;
  }
  return {self && shuffle, Fmt("%zu tables; self-score 100: %s; row-shuffle invariance: %s",
                               makers.size(), self ? "yes" : "NO", shuffle ? "exact" : "NO")};
}

Outcome Monotonicity() {
  // Linkability: nested neighbour sets.
  size_t k_violations = 0;
  for (uint64_t seed = 0; seed < 100; ++seed) {
    const Dataset syn = testing::RandomMixed(50, 2, 3, 0.1, 100 + seed);
    const Dataset train = testing::RandomMixed(40, 2, 3, 0.1, 200 + seed);
    const Dataset control = testing::RandomMixed(40, 2, 3, 0.1, 300 + seed);
    linkability::Config cfg;
    cfg.aux = {{"c0", "x0"}, {"c1", "x1", "x2"}};
    cfg.n_attacks = 40;
    cfg.seed = seed;
    OutcomeVector prev;
    for (size_t k = 1; k <= 10; ++k) {
      cfg.k = k;
      const auto r = linkability::Run(syn, train, control, cfg);
      for (size_t i = 0; k > 1 && i < r.outcomes_main.size(); ++i) {
        k_violations += prev[i] && !r.outcomes_main[i];
      }
      prev = r.outcomes_main;
    }
  }
  // Inference: tolerance.
  size_t tol_violations = 0;
  const ThreeWaySplit s = SplitThreeWay(GenerateMixedDataset(3000, 9), 1000, 1000, 1000, 1);
  for (const char* secret : {"income", "score", "age", "tenure"}) {
    inference::Config cfg;
    cfg.aux_cols = {"sex", "region", "occupation"};
    cfg.secret = secret;
    cfg.n_attacks = 800;
    OutcomeVector prev;
    for (double tol : {0.0, 0.005, 0.01, 0.02, 0.05, 0.1, 0.2, 0.5, 1.0, 2.0}) {
      cfg.tolerance = tol;
      const auto r = inference::Run(s.release, s.train, s.control, cfg);
      for (size_t i = 0; !prev.empty() && i < r.outcomes_main.size(); ++i) {
        tol_violations += prev[i] && !r.outcomes_main[i];
      }
      prev = r.outcomes_main;
    }
  }
  // Risk: grid over (r_train, r_control) in (0, 1).
  size_t grid_violations = 0;
  for (int i = 1; i < 100; ++i) {
    for (int j = 1; j < 100; ++j) {
      const double rt = i / 100.0, rc = j / 100.0;
      const double here = Risk(Rate(rt), Rate(rc)).raw;
      if (i + 1 < 100) grid_violations += !(Risk(Rate(rt + 0.01), Rate(rc)).raw > here);
      if (j + 1 < 100) grid_violations += !(Risk(Rate(rt), Rate(rc + 0.01)).raw < here);
    }
  }
  return {k_violations + tol_violations + grid_violations == 0,
          Fmt("violations: k %zu, tolerance %zu, risk grid %zu", k_violations, tol_violations,
              grid_violations)};
}

}  // namespace
}  // namespace synthrisk

int main() {
  using synthrisk::Criterion;
  const std::vector<Criterion> criteria{
      {1, "risk worked example", synthrisk::RiskWorkedExample},
      {2, "linearity in the leak fraction", synthrisk::Linearity},
      {3, "zero point without leakage", synthrisk::ZeroPoint},
      {4, "Wilson interval coverage", synthrisk::WilsonCoverage},
      {5, "kNN oracle equivalence", synthrisk::KnnOracle},
      {6, "naive linkability baseline", synthrisk::NaiveLinkability},
      {7, "correction model", synthrisk::CorrectionModelChecks},
      {8, "utility self-score", synthrisk::UtilitySelfScore},
      {9, "monotonicity properties", synthrisk::Monotonicity},
  };
  int failed = 0;
  for (const auto& c : criteria) {
    synthrisk::Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    failed += !o.pass;
    while (!o.detail.empty() && (o.detail.back() == ' ' || o.detail.back() == ';')) {
      o.detail.pop_back();
    }
    std::printf("[%s] %d %s: %s\n", o.pass ? "PASS" : "FAIL", c.id, c.title, o.detail.c_str());
    std::fflush(stdout);
  }
  std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failed,
              criteria.size());
  return failed == 0 ? 0 : 1;
}
