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

#include "synthrisk/stats.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>

#include <boost/math/distributions/normal.hpp>

#include "synthrisk/common.h"

namespace synthrisk {

namespace {

double Clip01(double x) { return std::clamp(x, 0.0, 1.0); }

// Series expansion of the success curve, accurate when n * w is small and
// the closed form would cancel catastrophically:
//   n * sum_j (-1)^j C(n-1, j) w^(j+2) / (j+2)
double SuccessCurveSeries(double w, double n) {
  double coeff = 1.0;  // (-1)^j C(n-1, j) w^j
  double sum = 0.0;
  for (int j = 0; j < 200; ++j) {
    const double term = coeff / (j + 2);
    sum += term;
    if (std::abs(term) <= 1e-18 * std::abs(sum)) break;
    coeff *= -w * (n - 1.0 - j) / (j + 1.0);
    if (coeff == 0.0) break;
  }
  return n * w * w * sum;
}

struct FitPoint {
  double log_weight;
  double amplitude;
  double rss;
};

FitPoint EvaluateFit(std::span<const CorrectionSample> samples, double log_weight) {
  const double w = std::pow(10.0, log_weight);
  double sff = 0.0;
  double smf = 0.0;
  std::vector<double> f(samples.size());
  for (size_t i = 0; i < samples.size(); ++i) {
    f[i] = SinglingOutSuccessCurve(w, samples[i].n);
    sff += f[i] * f[i];
    smf += samples[i].m * f[i];
  }
  const double amplitude = sff > 0.0 ? std::max(0.0, smf / sff) : 0.0;
  double rss = 0.0;
  for (size_t i = 0; i < samples.size(); ++i) {
    const double r = samples[i].m - amplitude * f[i];
    rss += r * r;
  }
  return {log_weight, amplitude, rss};
}

}  // namespace

double TwoSidedZ(double alpha) {
  if (!(alpha > 0.0 && alpha < 1.0)) throw InvalidArgument("confidence level must lie in (0, 1)");
  return boost::math::quantile(boost::math::normal_distribution<double>(), 0.5 + alpha / 2.0);
}

std::pair<double, double> RiskEstimate::Interval() const {
  return {Clip01(rate - delta), Clip01(rate + delta)};
}

RiskEstimate Wilson(double n_success, size_t n_attacks, double alpha) {
  if (n_attacks == 0) throw InvalidArgument("Wilson interval needs at least one attack");
  const double n = static_cast<double>(n_attacks);
  if (!(n_success >= 0.0 && n_success <= n)) {
    throw InvalidArgument("number of successes must lie in [0, n_attacks]");
  }
  const double z = TwoSidedZ(alpha);
  const double z2 = z * z;
  RiskEstimate est;
  est.alpha = alpha;
  est.n_attacks = n_attacks;
  est.n_success = n_success;
  est.rate = (n_success + z2 / 2.0) / (n + z2);
  est.delta = z / (n + z2) * std::sqrt(n_success * (n - n_success) / n + z2 / 4.0);
  return est;
}

AttackStrength Strength(const RiskEstimate& main, const RiskEstimate& naive) {
  AttackStrength s;
  s.value = main.rate - naive.rate;
  s.delta = std::sqrt(main.delta * main.delta + naive.delta * naive.delta);
  s.failed = naive.rate >= main.rate;
  return s;
}

std::string_view ToString(ExclusionReason reason) {
  switch (reason) {
    case ExclusionReason::kNone: return "none";
    case ExclusionReason::kFailedAttack: return "failed_attack";
    case ExclusionReason::kControlRateCut: return "control_rate_cut";
  }
  return "unknown";
}

PrivacyRisk Risk(const RiskEstimate& main, const RiskEstimate& control) {
  const double rt = main.rate;
  const double rc = control.rate;
  if (rc >= 1.0) throw InvalidArgument("privacy risk is undefined when r_control == 1");
  const double headroom = 1.0 - rc;
  PrivacyRisk out;
  out.raw = (rt - rc) / headroom;
  out.value = Clip01(out.raw);
  const double d_train = main.delta / headroom;
  const double d_control = control.delta * (1.0 - rt) / (headroom * headroom);
  out.delta = std::sqrt(d_train * d_train + d_control * d_control);
  out.ci = {Clip01(out.raw - out.delta), Clip01(out.raw + out.delta)};
  return out;
}

bool QualityCut(const RiskEstimate& control, double threshold) {
  return control.rate > threshold;
}

RiskAssessment Assess(const RiskEstimate& train, const RiskEstimate& naive,
                      const RiskEstimate& control, double control_rate_cut) {
  RiskAssessment a{train, naive, control, Strength(train, naive), Risk(train, control)};
  if (a.strength.failed) {
    a.risk.excluded = ExclusionReason::kFailedAttack;
  } else if (QualityCut(control, control_rate_cut)) {
    a.risk.excluded = ExclusionReason::kControlRateCut;
  }
  return a;
}

double SinglingOutSuccessCurve(double max_weight, double n) {
  if (!(max_weight >= 0.0 && max_weight <= 1.0)) {
    throw InvalidArgument("effective weight must lie in [0, 1]");
  }
  if (!(n >= 1.0)) throw InvalidArgument("population size must be >= 1");
  if (max_weight == 0.0) return 0.0;
  if (n * max_weight < 0.1) return SuccessCurveSeries(max_weight, n);
  // (1 - q - n w q) / (n + 1) with q = (1 - w)^n.
  const double log_q = n * std::log1p(-max_weight);
  const double one_minus_q = -std::expm1(log_q);
  const double q = std::exp(log_q);
  return (one_minus_q - n * max_weight * q) / (n + 1.0);
}

double CorrectionModel::operator()(double n) const {
  if (degenerate) return 0.0;
  return amplitude * SinglingOutSuccessCurve(effective_weight, n);
}

CorrectionModel FitCorrectionModel(std::span<const CorrectionSample> samples) {
  std::set<double> sizes;
  double total = 0.0;
  for (const auto& s : samples) {
    if (!(s.n >= 1.0)) throw InvalidArgument("correction sample size must be >= 1");
    if (!(s.m >= 0.0)) throw InvalidArgument("correction sample count must be >= 0");
    sizes.insert(s.n);
    total += s.m;
  }
  if (sizes.size() < 2) {
    throw InvalidArgument("correction model fit needs samples at >= 2 distinct sizes");
  }
  CorrectionModel model;
  model.samples.assign(samples.begin(), samples.end());
  if (total == 0.0) {
    model.degenerate = true;
    model.poor_fit = true;
    return model;
  }

  // Coarse grid in log10(w) over [-8, 0] with the amplitude solved exactly
  // at each point, then golden-section refinement around the best cell.
  constexpr double kLo = -8.0;
  constexpr double kHi = 0.0;
  constexpr int kSteps = 320;
  constexpr double kStep = (kHi - kLo) / kSteps;
  FitPoint best = EvaluateFit(samples, kLo);
  int best_index = 0;
  for (int i = 1; i <= kSteps; ++i) {
    const FitPoint p = EvaluateFit(samples, kLo + i * kStep);
    if (p.rss < best.rss) {
      best = p;
      best_index = i;
    }
  }
  double a = kLo + std::max(0, best_index - 1) * kStep;
  double b = kLo + std::min(kSteps, best_index + 1) * kStep;
  const double phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double x1 = b - phi * (b - a);
  double x2 = a + phi * (b - a);
  FitPoint f1 = EvaluateFit(samples, x1);
  FitPoint f2 = EvaluateFit(samples, x2);
  for (int it = 0; it < 80 && b - a > 1e-12; ++it) {
    if (f1.rss <= f2.rss) {
      b = x2;
      x2 = x1;
      f2 = f1;
      x1 = b - phi * (b - a);
      f1 = EvaluateFit(samples, x1);
    } else {
      a = x1;
      x1 = x2;
      f1 = f2;
      x2 = a + phi * (b - a);
      f2 = EvaluateFit(samples, x2);
    }
  }
  for (const FitPoint& p : {f1, f2}) {
    if (p.rss < best.rss) best = p;
  }

  model.amplitude = best.amplitude;
  model.effective_weight = std::min(1.0, std::pow(10.0, best.log_weight));
  const double mean_m = total / static_cast<double>(samples.size());
  model.fit_residual =
      std::sqrt(best.rss / static_cast<double>(samples.size())) / mean_m;
  model.poor_fit = model.fit_residual > kPoorFitResidual || model.amplitude <= 0.0;
  return model;
}

double ScaleControlSuccesses(double m_control, const CorrectionModel& model, size_t n_train,
                             size_t n_control) {
  if (n_train == 0 || n_control == 0) throw InvalidArgument("dataset sizes must be >= 1");
  if (m_control == 0.0) return 0.0;
  if (n_train == n_control) return m_control;
  const double s_control = model(static_cast<double>(n_control));
  if (!(s_control > 0.0)) {
    throw InvalidArgument("correction model predicts zero successes at the control size");
  }
  return m_control * model(static_cast<double>(n_train)) / s_control;
}

RiskEstimate ScaledWilson(double m_raw, double scale, size_t n_attacks, double alpha) {
  if (!(scale >= 0.0) || !std::isfinite(scale)) {
    throw InvalidArgument("scale must be finite and >= 0");
  }
  const RiskEstimate raw = Wilson(m_raw, n_attacks, alpha);
  if (scale == 1.0) return raw;
  const double scaled = std::min(static_cast<double>(n_attacks), m_raw * scale);
  RiskEstimate est = Wilson(scaled, n_attacks, alpha);
  est.delta = std::max(est.delta, scale * raw.delta);
  return est;
}

BootstrapMean BootstrapMeanInterval(std::span<const double> values, size_t resamples,
                                    double alpha, unsigned long long seed) {
  if (values.empty()) throw InvalidArgument("bootstrap needs at least one value");
  if (!(alpha > 0.0 && alpha < 1.0)) throw InvalidArgument("confidence level must lie in (0, 1)");
  BootstrapMean out;
  double sum = 0.0;
  for (double v : values) sum += v;
  out.mean = sum / static_cast<double>(values.size());
  if (values.size() == 1 || resamples == 0) {
    out.low = out.high = out.mean;
    return out;
  }
  Rng rng(seed);
  std::uniform_int_distribution<size_t> pick(0, values.size() - 1);
  std::vector<double> means(resamples);
  for (auto& m : means) {
    double s = 0.0;
    for (size_t i = 0; i < values.size(); ++i) s += values[pick(rng)];
    m = s / static_cast<double>(values.size());
  }
  std::sort(means.begin(), means.end());
  const double tail = (1.0 - alpha) / 2.0;
  auto quantile = [&](double q) {
    const double pos = q * static_cast<double>(means.size() - 1);
    const auto lo = static_cast<size_t>(std::floor(pos));
    const size_t hi = std::min(means.size() - 1, lo + 1);
    return means[lo] + (pos - static_cast<double>(lo)) * (means[hi] - means[lo]);
  };
  out.low = quantile(tail);
  out.high = quantile(1.0 - tail);
  return out;
}

}  // namespace synthrisk
