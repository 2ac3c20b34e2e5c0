//
// Copyright 2026 The gdpe Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
//

// Noise-calibrated rejection thresholds for a single canonical private e-value
// and the power analysis that goes with them.
//
// With sigma = delta / mu and z* the root of phi(z)/Phi(z) = sigma, the
// sharpest constant threshold controlling type-I error at alpha is
//
//   c* = Phi(z*) / alpha * exp(-sigma^2/2 - sigma z*)        if alpha <= Phi(z*)
//   c* = exp(-sigma^2/2 - sigma Phi^{-1}(alpha))             otherwise.
//
// Thresholds are carried in log space: for large delta / mu, c* underflows a
// double long before log c* loses precision.

#ifndef GDPE_CALIBRATION_H_
#define GDPE_CALIBRATION_H_

#include "absl/status/statusor.h"
#include "gdpe/mechanism.h"

namespace gdpe {

enum class ThresholdBranch {
  kMarkovLike,    // alpha <= Phi(z*): worst case is a two-point e-value
  kQuantileLike,  // alpha > Phi(z*): worst case is E == 1
};

const char* ThresholdBranchName(ThresholdBranch branch);

struct CalibrationResult {
  double alpha = 0.0;
  Sensitivity sensitivity;
  PrivacyBudget budget;
  double sigma = 0.0;  // delta / mu
  double z_star = 0.0;
  double log_c_star = 0.0;
  double c_star = 0.0;  // exp(log_c_star); may underflow
  ThresholdBranch branch = ThresholdBranch::kMarkovLike;
};

struct PowerProfile {
  double log_x_opt = 0.0;
  double x_opt = 0.0;
  // Largest possible P(c* <= E exp(-xi) < 1/alpha) over alternatives.
  double g_max = 0.0;
  // P(zeta < 0): probability that the random boundary shift lowers the bar.
  double shift_neg_prob = 0.0;
};

// Requires alpha in (0, 1), delta > 0 and mu > 0.
absl::StatusOr<CalibrationResult> Calibrate(double alpha,
                                            Sensitivity sensitivity,
                                            PrivacyBudget budget);

// E^DP >= 1/alpha, compared in log space.
bool MarkovReject(const PrivateEValue& e_dp, double alpha);

// E^DP >= c*. Fails if e_dp was produced under a different (delta, mu).
absl::StatusOr<bool> CalibratedReject(const PrivateEValue& e_dp,
                                      const CalibrationResult& cal);

// Log-space rejection rules used by the simulation loops.
inline bool MarkovRejectLog(double log_e_dp, double alpha);
inline bool CalibratedRejectLog(double log_e_dp, const CalibrationResult& cal) {
  return log_e_dp >= cal.log_c_star;
}

// G(x) = P(c* <= x exp(-xi) < 1/alpha) for a fixed non-private value x > 0.
absl::StatusOr<double> PowerImprovement(double x, const CalibrationResult& cal);
// Same, taking log x; defined for every finite log x.
double PowerImprovementLog(double log_x, const CalibrationResult& cal);

PowerProfile ComputePowerProfile(const CalibrationResult& cal);

// Leading-order asymptote of the calibration benefit (and of the
// noise-induced discovery) as delta -> 0:
//   f_E(1/alpha) / (alpha mu) * delta * sqrt(-2 log delta).
absl::StatusOr<double> CalibrationBenefitRate(Sensitivity sensitivity,
                                              PrivacyBudget budget,
                                              double alpha,
                                              double density_at_threshold);

// Leading-order asymptote of the noise-induced cost as delta -> 0:
//   f_E(1/alpha) / (2 e alpha mu^2) * delta^2 / (-log delta).
absl::StatusOr<double> NoiseCostRate(Sensitivity sensitivity,
                                     PrivacyBudget budget, double alpha,
                                     double density_at_threshold);

inline bool MarkovRejectLog(double log_e_dp, double alpha) {
  return log_e_dp >= -std::log(alpha);
}

}  // namespace gdpe

#endif  // GDPE_CALIBRATION_H_
