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

// Risk quantification: success rates with Wilson score intervals, attack
// strength against the naive baseline, the normalized privacy risk, and the
// population-size correction for singling-out success counts.

#ifndef SYNTHRISK_STATS_H_
#define SYNTHRISK_STATS_H_

#include <cstddef>
#include <span>
#include <string_view>
#include <utility>
#include <vector>

namespace synthrisk {

inline constexpr double kDefaultConfidence = 0.95;
inline constexpr double kDefaultControlRateCut = 0.9;

// Two-sided standard normal quantile for confidence `alpha`, i.e. the z with
// P(|Z| <= z) = alpha. 1.959964 for alpha = 0.95.
double TwoSidedZ(double alpha);

// Success rate estimate r +- delta at confidence `alpha`.
struct RiskEstimate {
  double rate = 0.0;
  double delta = 0.0;
  double alpha = kDefaultConfidence;
  size_t n_attacks = 0;
  // May be fractional after the singling-out control rescaling.
  double n_success = 0.0;

  // [rate - delta, rate + delta] clipped to [0, 1].
  std::pair<double, double> Interval() const;
};

// Wilson score interval for n_success out of n_attacks Bernoulli trials.
// Requires 0 <= n_success <= n_attacks, n_attacks >= 1, alpha in (0, 1).
RiskEstimate Wilson(double n_success, size_t n_attacks, double alpha = kDefaultConfidence);

struct AttackStrength {
  double value = 0.0;
  double delta = 0.0;
  // The main attack did not beat the naive baseline: r_naive >= r_train.
  bool failed = false;
};

AttackStrength Strength(const RiskEstimate& main, const RiskEstimate& naive);

enum class ExclusionReason { kNone, kFailedAttack, kControlRateCut };

std::string_view ToString(ExclusionReason reason);

struct PrivacyRisk {
  double raw = 0.0;    // (r_train - r_control) / (1 - r_control), unclamped
  double value = 0.0;  // raw clamped to [0, 1]
  double delta = 0.0;  // first-order propagated half-width
  std::pair<double, double> ci{0.0, 0.0};  // value +- delta clipped to [0, 1]
  ExclusionReason excluded = ExclusionReason::kNone;

  bool is_excluded() const { return excluded != ExclusionReason::kNone; }
};

// Throws InvalidArgument when r_control == 1 (undefined).
PrivacyRisk Risk(const RiskEstimate& main, const RiskEstimate& control);

// True when the setting must be excluded: r_control > threshold.
bool QualityCut(const RiskEstimate& control, double threshold = kDefaultControlRateCut);

// Strength, risk and the exclusion flags for one attack setting.
struct RiskAssessment {
  RiskEstimate train;
  RiskEstimate naive;
  RiskEstimate control;
  AttackStrength strength;
  PrivacyRisk risk;
};

RiskAssessment Assess(const RiskEstimate& train, const RiskEstimate& naive,
                      const RiskEstimate& control,
                      double control_rate_cut = kDefaultControlRateCut);

// Integral over w in [0, max_weight] of n w (1 - w)^(n - 1): the expected
// singling-out probability when predicate weights are spread uniformly on
// [0, max_weight] in a population of size n. Requires 0 <= max_weight <= 1
// and n >= 1.
double SinglingOutSuccessCurve(double max_weight, double n);

struct CorrectionSample {
  double n;  // population size
  double m;  // predicates singling out at that size
};

// S(n) = amplitude * SinglingOutSuccessCurve(effective_weight, n).
struct CorrectionModel {
  double amplitude = 0.0;
  double effective_weight = 0.0;
  // Root-mean-square residual divided by the mean observed count.
  double fit_residual = 0.0;
  // All observed counts were zero: amplitude is 0 and the weight is not
  // identifiable.
  bool degenerate = false;
  bool poor_fit = false;
  std::vector<CorrectionSample> samples;

  double operator()(double n) const;
};

inline constexpr double kPoorFitResidual = 0.25;

// Least-squares fit of S(n). Needs samples at >= 2 distinct n and m >= 0.
CorrectionModel FitCorrectionModel(std::span<const CorrectionSample> samples);

// m_control * S(n_train) / S(n_control). Zero successes stay zero. Throws
// InvalidArgument when S(n_control) == 0 and m_control > 0.
double ScaleControlSuccesses(double m_control, const CorrectionModel& model, size_t n_train,
                             size_t n_control);

// Estimate for a rescaled count min(n_attacks, m_raw * scale). The rate is the
// Wilson rate of the rescaled count; the half-width is the larger of its
// Wilson half-width and scale times the raw count's, so the sampling noise of
// m_raw is carried through the rescaling. Equals Wilson(m_raw) at scale 1.
RiskEstimate ScaledWilson(double m_raw, double scale, size_t n_attacks,
                          double alpha = kDefaultConfidence);

// Percentile bootstrap of the mean of `values`; returns (mean, low, high).
struct BootstrapMean {
  double mean = 0.0;
  double low = 0.0;
  double high = 0.0;
};

BootstrapMean BootstrapMeanInterval(std::span<const double> values, size_t resamples,
                                    double alpha, unsigned long long seed);

}  // namespace synthrisk

#endif  // SYNTHRISK_STATS_H_
