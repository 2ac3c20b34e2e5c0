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

#include "gdpe/calibration.h"

#include <algorithm>
#include <cmath>

#include "absl/status/status.h"
#include "absl/strings/str_cat.h"
#include "gdpe/normal.h"
#include "gdpe/status_macros.h"

namespace gdpe {
namespace {

absl::Status ValidateRateInputs(Sensitivity sensitivity, PrivacyBudget budget,
                                double alpha, double density) {
  if (!(sensitivity.delta > 0.0 && sensitivity.delta < 1.0)) {
    return absl::InvalidArgumentError(absl::StrCat(
        "asymptotic rates need delta in (0, 1), got ", sensitivity.delta));
  }
  GDPE_RETURN_IF_ERROR(ValidateBudget(budget));
  GDPE_RETURN_IF_ERROR(ValidateAlpha(alpha));
  if (!(density >= 0.0) || std::isinf(density)) {
    return absl::InvalidArgumentError(
        absl::StrCat("density must be finite and >= 0, got ", density));
  }
  return absl::OkStatus();
}

}  // namespace

const char* ThresholdBranchName(ThresholdBranch branch) {
  switch (branch) {
    case ThresholdBranch::kMarkovLike:
      return "markov_like";
    case ThresholdBranch::kQuantileLike:
      return "quantile_like";
  }
  return "unknown";
}

absl::StatusOr<CalibrationResult> Calibrate(double alpha,
                                            Sensitivity sensitivity,
                                            PrivacyBudget budget) {
  GDPE_RETURN_IF_ERROR(ValidateAlpha(alpha));
  GDPE_RETURN_IF_ERROR(ValidateBudget(budget));
  GDPE_RETURN_IF_ERROR(ValidateSensitivity(sensitivity));
  if (sensitivity.delta == 0.0) {
    return absl::InvalidArgumentError(
        "calibration needs delta > 0; with delta = 0 use 1/alpha");
  }
  CalibrationResult cal{.alpha = alpha,
                        .sensitivity = sensitivity,
                        .budget = budget,
                        .sigma = sensitivity.delta / budget.mu};
  const double sigma = cal.sigma;
  GDPE_ASSIGN_OR_RETURN(cal.z_star, SolveZStar(sigma));
  const double tau = 0.5 * sigma * sigma;
  if (alpha <= NormalCdf(cal.z_star)) {
    cal.branch = ThresholdBranch::kMarkovLike;
    cal.log_c_star = NormalLogCdf(cal.z_star) - std::log(alpha) - tau -
                     sigma * cal.z_star;
  } else {
    cal.branch = ThresholdBranch::kQuantileLike;
    GDPE_ASSIGN_OR_RETURN(const double q, NormalQuantile(alpha));
    cal.log_c_star = -tau - sigma * q;
  }
  cal.c_star = std::exp(cal.log_c_star);
  return cal;
}

bool MarkovReject(const PrivateEValue& e_dp, double alpha) {
  return e_dp.value >= 1.0 / alpha;
}

absl::StatusOr<bool> CalibratedReject(const PrivateEValue& e_dp,
                                      const CalibrationResult& cal) {
  if (e_dp.sensitivity.delta != cal.sensitivity.delta ||
      e_dp.budget.mu != cal.budget.mu) {
    return absl::FailedPreconditionError(absl::StrCat(
        "threshold calibrated for (delta=", cal.sensitivity.delta,
        ", mu=", cal.budget.mu, ") applied to an e-value privatized with (delta=",
        e_dp.sensitivity.delta, ", mu=", e_dp.budget.mu, ")"));
  }
  return CalibratedRejectLog(e_dp.log_value, cal);
}

double PowerImprovementLog(double log_x, const CalibrationResult& cal) {
  const double s = cal.sigma;
  const double upper = (log_x - cal.log_c_star - 0.5 * s * s) / s;
  const double lower = (log_x + std::log(cal.alpha) - 0.5 * s * s) / s;
  return std::max(0.0, NormalCdf(upper) - NormalCdf(lower));
}

absl::StatusOr<double> PowerImprovement(double x,
                                        const CalibrationResult& cal) {
  if (!(x > 0.0) || std::isinf(x)) {
    return absl::InvalidArgumentError(
        absl::StrCat("G(x) needs finite x > 0, got ", x));
  }
  return PowerImprovementLog(std::log(x), cal);
}

PowerProfile ComputePowerProfile(const CalibrationResult& cal) {
  const double s = cal.sigma;
  const double log_inv_alpha = -std::log(cal.alpha);
  PowerProfile profile;
  profile.log_x_opt = 0.5 * s * s + 0.5 * (log_inv_alpha + cal.log_c_star);
  profile.x_opt = std::exp(profile.log_x_opt);
  // log(1/alpha) - log c*, formed without subtracting nearly equal logs.
  const double gap =
      cal.branch == ThresholdBranch::kMarkovLike
          ? -NormalLogCdf(cal.z_star) + 0.5 * s * s + s * cal.z_star
          : log_inv_alpha - cal.log_c_star;
  // 2 Phi(u) - 1 = 1 - 2 Phi(-u), which keeps precision when u is large.
  const double u = gap / (2.0 * s);
  profile.g_max = 1.0 - 2.0 * NormalCdf(-u);
  profile.shift_neg_prob = NormalCdf(cal.z_star - NormalLogCdf(cal.z_star) / s);
  return profile;
}

absl::StatusOr<double> CalibrationBenefitRate(Sensitivity sensitivity,
                                              PrivacyBudget budget,
                                              double alpha,
                                              double density_at_threshold) {
  GDPE_RETURN_IF_ERROR(
      ValidateRateInputs(sensitivity, budget, alpha, density_at_threshold));
  const double d = sensitivity.delta;
  return density_at_threshold / (alpha * budget.mu) * d *
         std::sqrt(-2.0 * std::log(d));
}

absl::StatusOr<double> NoiseCostRate(Sensitivity sensitivity,
                                     PrivacyBudget budget, double alpha,
                                     double density_at_threshold) {
  GDPE_RETURN_IF_ERROR(
      ValidateRateInputs(sensitivity, budget, alpha, density_at_threshold));
  const double d = sensitivity.delta;
  return density_at_threshold / (2.0 * M_E * alpha * budget.mu * budget.mu) *
         d * d / (-std::log(d));
}

}  // namespace gdpe
