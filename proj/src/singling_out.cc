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

#include "synthrisk/singling_out.h"

#include <algorithm>
#include <cmath>
#include <unordered_set>

#include "synthrisk/parallel.h"

namespace synthrisk::singling_out {

namespace {

constexpr size_t kCandidateBatch = 256;

GuessSet UnivariateGuesses(const Dataset& syn, const Config& cfg, Rng& rng) {
  std::vector<Predicate> pool;
  for (const auto& name : syn.column_names()) {
    auto preds = UnivariatePredicates(syn, name);
    std::move(preds.begin(), preds.end(), std::back_inserter(pool));
  }
  GuessSet out;
  out.candidates_tried = pool.size();
  const size_t take = std::min(cfg.n_attacks, pool.size());
  out.exhausted = take < cfg.n_attacks;
  for (size_t i : SampleWithoutReplacement(pool.size(), take, rng)) {
    out.predicates.push_back(pool[i]);
  }
  return out;
}

GuessSet MultivariateGuesses(const Dataset& syn, const Config& cfg, Rng& rng, size_t workers) {
  const auto medians = LowerMedians(syn);
  const auto names = syn.column_names();
  const size_t cap = cfg.max_generation_factor * cfg.n_attacks;
  std::uniform_int_distribution<size_t> pick_row(0, syn.n_rows() - 1);

  GuessSet out;
  std::unordered_set<std::string> seen;
  std::vector<Predicate> batch;
  std::vector<uint8_t> unique(kCandidateBatch);
  while (out.predicates.size() < cfg.n_attacks && out.candidates_tried < cap) {
    const size_t n_batch = std::min(kCandidateBatch, cap - out.candidates_tried);
    batch.clear();
    for (size_t i = 0; i < n_batch; ++i) {
      const size_t row = pick_row(rng);
      std::vector<std::string> attrs;
      for (size_t c : SampleWithoutReplacement(names.size(), cfg.n_attrs, rng)) {
        attrs.push_back(names[c]);
      }
      batch.push_back(MultivariatePredicate(syn, attrs, row, medians));
    }
    ParallelFor(n_batch, workers, [&](size_t i) {
      unique[i] = BoundPredicate(batch[i], syn).Count(2) == 1 ? 1 : 0;
    });
    for (size_t i = 0; i < n_batch && out.predicates.size() < cfg.n_attacks; ++i) {
      ++out.candidates_tried;
      if (!unique[i]) continue;
      if (!seen.insert(batch[i].ToString()).second) continue;
      out.predicates.push_back(std::move(batch[i]));
    }
  }
  out.exhausted = out.predicates.size() < cfg.n_attacks;
  return out;
}

void ValidateConfig(const Dataset& syn, const Config& cfg) {
  if (cfg.n_attacks == 0) throw InvalidArgument("n_attacks must be >= 1");
  if (syn.n_rows() == 0) throw InvalidArgument("synthetic dataset is empty");
  if (cfg.mode == Mode::kMultivariate) {
    if (cfg.n_attrs == 0 || cfg.n_attrs > syn.n_cols()) {
      throw InvalidArgument("n_attrs must lie in [1, d]");
    }
    if (cfg.max_generation_factor == 0) {
      throw InvalidArgument("max_generation_factor must be >= 1");
    }
  }
}

}  // namespace

std::string_view ToString(Mode mode) {
  return mode == Mode::kUnivariate ? "univariate" : "multivariate";
}

Mode ParseMode(std::string_view text) {
  if (text == "univariate") return Mode::kUnivariate;
  if (text == "multivariate") return Mode::kMultivariate;
  throw InvalidArgument("unknown singling-out mode '" + std::string(text) + "'");
}

GuessSet GenerateGuesses(const Dataset& syn, const Config& cfg, Rng& rng) {
  ValidateConfig(syn, cfg);
  if (cfg.mode == Mode::kUnivariate) return UnivariateGuesses(syn, cfg, rng);
  return MultivariateGuesses(syn, cfg, rng, 1);
}

OutcomeVector EvaluateGuesses(std::span<const Predicate> guesses, const Dataset& target,
                              size_t workers) {
  std::vector<uint8_t> bits(guesses.size());
  ParallelFor(guesses.size(), workers, [&](size_t i) {
    bits[i] = BoundPredicate(guesses[i], target).Count(2) == 1 ? 1 : 0;
  });
  return OutcomeVector(std::move(bits));
}

Result Run(const Dataset& syn, const Dataset& train, const Dataset& control, const Config& cfg,
           size_t workers) {
  Align(syn, train);
  Align(syn, control);
  ValidateConfig(syn, cfg);
  Rng rng(cfg.seed);
  GuessSet guesses = cfg.mode == Mode::kUnivariate ? UnivariateGuesses(syn, cfg, rng)
                                                   : MultivariateGuesses(syn, cfg, rng, workers);
  Result result;
  result.exhausted = guesses.exhausted;
  result.predicates = std::move(guesses.predicates);

  Rng naive_rng(DeriveSeed(cfg.seed, 1));
  const size_t naive_attrs = cfg.mode == Mode::kUnivariate ? 1 : cfg.n_attrs;
  const size_t n_naive = result.predicates.size();
  result.naive_predicates.reserve(n_naive);
  for (size_t i = 0; i < n_naive; ++i) {
    result.naive_predicates.push_back(RandomPredicate(syn, naive_attrs, naive_rng));
  }

  result.outcomes_main = EvaluateGuesses(result.predicates, train, workers);
  result.outcomes_control = EvaluateGuesses(result.predicates, control, workers);
  result.outcomes_naive = EvaluateGuesses(result.naive_predicates, train, workers);
  result.m_train = result.outcomes_main.successes();
  result.m_control = result.outcomes_control.successes();
  result.m_naive = result.outcomes_naive.successes();
  return result;
}

std::vector<size_t> CorrectionSizes(size_t n_control, size_t n_sizes) {
  if (n_control < 2) throw InvalidArgument("control set too small for the correction model");
  if (n_sizes < 2) throw InvalidArgument("need at least two correction sizes");
  const double hi = static_cast<double>(n_control);
  const double lo = n_control > 1000 ? 1000.0 : std::max(1.0, std::floor(hi / 10.0));
  std::vector<size_t> sizes;
  for (size_t i = 0; i < n_sizes; ++i) {
    const double t = static_cast<double>(i) / static_cast<double>(n_sizes - 1);
    const auto n = static_cast<size_t>(std::llround(lo + t * (hi - lo)));
    if (sizes.empty() || sizes.back() != n) sizes.push_back(n);
  }
  return sizes;
}

std::vector<CorrectionSample> MeasureSizeCurve(std::span<const Predicate> guesses,
                                               const Dataset& control,
                                               std::span<const size_t> sizes, size_t repeats,
                                               Rng& rng, size_t workers) {
  if (repeats == 0) throw InvalidArgument("repeats must be >= 1");
  std::vector<std::vector<uint32_t>> subsets;
  std::vector<size_t> subset_size;
  for (size_t n : sizes) {
    if (n == 0 || n > control.n_rows()) {
      throw InvalidArgument("correction size outside [1, |control|]");
    }
    for (size_t r = 0; r < repeats; ++r) {
      auto rows = SampleWithoutReplacement(control.n_rows(), n, rng);
      std::sort(rows.begin(), rows.end());
      subsets.emplace_back(rows.begin(), rows.end());
      subset_size.push_back(n);
    }
  }
  // hits[g * n_subsets + s]: guess g singles out in subset s.
  const size_t n_subsets = subsets.size();
  std::vector<uint8_t> hits(guesses.size() * n_subsets);
  ParallelFor(guesses.size(), workers, [&](size_t g) {
    const BoundPredicate bound(guesses[g], control);
    for (size_t s = 0; s < n_subsets; ++s) {
      hits[g * n_subsets + s] = bound.Count(subsets[s], 2) == 1 ? 1 : 0;
    }
  });
  std::vector<CorrectionSample> samples(n_subsets);
  for (size_t s = 0; s < n_subsets; ++s) {
    size_t m = 0;
    for (size_t g = 0; g < guesses.size(); ++g) m += hits[g * n_subsets + s];
    samples[s] = {static_cast<double>(subset_size[s]), static_cast<double>(m)};
  }
  return samples;
}

CorrectedControl CorrectControlSuccesses(const Result& result, const Dataset& train,
                                         const Dataset& control, Rng& rng, size_t workers) {
  CorrectedControl out;
  out.m_control = static_cast<double>(result.m_control);
  if (train.n_rows() == control.n_rows() || result.m_control == 0) return out;
  const auto sizes = CorrectionSizes(control.n_rows());
  if (sizes.size() < 2) return out;
  const auto samples = MeasureSizeCurve(result.predicates, control, sizes, 5, rng, workers);
  out.model = FitCorrectionModel(samples);
  if (out.model.degenerate) return out;
  out.applied = true;
  out.scale = ScaleControlSuccesses(1.0, out.model, train.n_rows(), control.n_rows());
  out.m_control = std::min(
      static_cast<double>(result.predicates.size()),
      ScaleControlSuccesses(out.m_control, out.model, train.n_rows(), control.n_rows()));
  return out;
}

}  // namespace synthrisk::singling_out
