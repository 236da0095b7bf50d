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

#include "synthrisk/inference.h"

#include <algorithm>
#include <cmath>
#include <limits>

#include "synthrisk/distance.h"

namespace synthrisk::inference {

namespace {

std::vector<size_t> RowsWithSecret(const Column& secret) {
  std::vector<size_t> rows;
  for (size_t r = 0; r < secret.size(); ++r) {
    if (!secret.is_missing(r)) rows.push_back(r);
  }
  return rows;
}

std::vector<size_t> DrawTargets(const Column& secret, size_t n_attacks, Rng& rng,
                                std::string_view which) {
  const auto eligible = RowsWithSecret(secret);
  if (eligible.size() < n_attacks) {
    throw InvalidArgument("only " + std::to_string(eligible.size()) + " " + std::string(which) +
                          " rows have a non-missing secret; n_attacks is " +
                          std::to_string(n_attacks));
  }
  std::vector<size_t> targets;
  targets.reserve(n_attacks);
  for (size_t i : SampleWithoutReplacement(eligible.size(), n_attacks, rng)) {
    targets.push_back(eligible[i]);
  }
  return targets;
}

struct Span {
  double lo = std::numeric_limits<double>::infinity();
  double hi = -std::numeric_limits<double>::infinity();
  void Add(const Column& col) {
    for (size_t r = 0; r < col.size(); ++r) {
      if (col.is_missing(r)) continue;
      lo = std::min(lo, col.number(r));
      hi = std::max(hi, col.number(r));
    }
  }
  bool empty() const { return lo > hi; }
  double width() const { return empty() ? 0.0 : hi - lo; }
};

OutcomeVector Attack(const Dataset& syn, const Dataset& source, std::span<const size_t> targets,
                     const Config& cfg, const RangeTable& ranges, double secret_range,
                     size_t workers, std::vector<Value>* guesses) {
  const Dataset queries = source.Take(targets);
  const auto neighbours = Knn(queries, syn, cfg.aux_cols, 1, ranges, workers);
  const Column& syn_secret = syn.column(cfg.secret);
  const Column& truth = queries.column(cfg.secret);
  OutcomeVector out;
  for (size_t i = 0; i < targets.size(); ++i) {
    const Value guess = syn_secret.value(neighbours[i].front().index);
    out.push_back(
        IsCorrectGuess(truth.value(i), guess, truth.kind(), cfg.tolerance, secret_range));
    if (guesses) guesses->push_back(guess);
  }
  return out;
}

}  // namespace

bool IsCorrectGuess(const Value& truth, const Value& guess, ColumnKind kind, double tolerance,
                    double column_range) {
  if (kind == ColumnKind::kCategorical) return Identical(truth, guess);
  if (truth.is_missing() || guess.is_missing()) return truth.is_missing() && guess.is_missing();
  const double s = truth.number();
  const double g = guess.number();
  if (std::abs(s) <= kZeroTruth) return std::abs(g) <= tolerance * column_range;
  return std::abs(s - g) / std::abs(s) <= tolerance;
}

Result Run(const Dataset& syn, const Dataset& train, const Dataset& control, const Config& cfg,
           size_t workers) {
  Align(syn, train);
  Align(syn, control);
  if (cfg.aux_cols.empty()) throw InvalidArgument("auxiliary attribute set must not be empty");
  if (std::find(cfg.aux_cols.begin(), cfg.aux_cols.end(), cfg.secret) != cfg.aux_cols.end()) {
    throw InvalidArgument("secret '" + cfg.secret + "' is also an auxiliary attribute");
  }
  if (cfg.n_attacks == 0) throw InvalidArgument("n_attacks must be >= 1");
  if (!(cfg.tolerance >= 0.0)) throw InvalidArgument("tolerance must be non-negative");
  if (syn.n_rows() == 0) throw InvalidArgument("synthetic dataset is empty");
  const Column& syn_secret = syn.column(cfg.secret);
  const Column& train_secret = train.column(cfg.secret);
  const Column& control_secret = control.column(cfg.secret);
  if (train_secret.kind() != syn_secret.kind() || control_secret.kind() != syn_secret.kind()) {
    throw InvalidArgument("secret '" + cfg.secret + "' has inconsistent kinds");
  }

  RangeTable ranges = RangeTable::Compute(syn, train, cfg.aux_cols);
  ranges.Extend(RangeTable::Compute(syn, control, cfg.aux_cols));
  double secret_range = 0.0;
  if (syn_secret.kind() == ColumnKind::kContinuous) {
    Span span;
    span.Add(syn_secret);
    span.Add(train_secret);
    span.Add(control_secret);
    secret_range = span.width();
  }

  Rng rng(cfg.seed);
  Result result;
  result.train_missing_secret = train_secret.missing_count();
  result.control_missing_secret = control_secret.missing_count();
  result.train_targets = DrawTargets(train_secret, cfg.n_attacks, rng, "train");
  result.control_targets = DrawTargets(control_secret, cfg.n_attacks, rng, "control");

  result.outcomes_main = Attack(syn, train, result.train_targets, cfg, ranges, secret_range,
                                workers, &result.guesses);
  result.outcomes_control = Attack(syn, control, result.control_targets, cfg, ranges,
                                   secret_range, workers, nullptr);

  // Naive guesses for the main targets, drawn from the secret's support.
  Rng naive_rng(DeriveSeed(cfg.seed, 1));
  const ColumnKind kind = syn_secret.kind();
  Span support;
  if (kind == ColumnKind::kContinuous) support.Add(syn_secret);
  for (size_t t : result.train_targets) {
    Value guess;
    if (kind == ColumnKind::kCategorical) {
      if (!syn_secret.categories().empty()) {
        std::uniform_int_distribution<size_t> pick(0, syn_secret.categories().size() - 1);
        const int32_t code = syn_secret.sorted_codes()[pick(naive_rng)];
        guess = Value::Category(syn_secret.categories()[code]);
      }
    } else if (!support.empty()) {
      std::uniform_real_distribution<double> pick(support.lo, support.hi);
      guess = Value::Number(support.lo == support.hi
                                ? support.lo
                                : std::clamp(pick(naive_rng), support.lo, support.hi));
    }
    result.outcomes_naive.push_back(
        IsCorrectGuess(train_secret.value(t), guess, kind, cfg.tolerance, secret_range));
  }
  return result;
}

}  // namespace synthrisk::inference
