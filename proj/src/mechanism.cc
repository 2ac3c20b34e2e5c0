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

#include "gdpe/mechanism.h"

#include <cmath>

#include "absl/strings/str_cat.h"
#include "gdpe/kernels.h"
#include "gdpe/normal.h"
#include "gdpe/status_macros.h"

namespace gdpe {

absl::Status ValidateBudget(PrivacyBudget budget) {
  if (!(budget.mu > 0.0) || std::isinf(budget.mu)) {
    return absl::InvalidArgumentError(
        absl::StrCat("privacy budget mu must be finite and > 0, got ", budget.mu));
  }
  return absl::OkStatus();
}

absl::Status ValidateSensitivity(Sensitivity sensitivity) {
  if (!(sensitivity.delta >= 0.0) || std::isinf(sensitivity.delta)) {
    return absl::InvalidArgumentError(absl::StrCat(
        "sensitivity delta must be finite and >= 0, got ", sensitivity.delta));
  }
  return absl::OkStatus();
}

absl::Status ValidateAlpha(double alpha) {
  if (!(alpha > 0.0 && alpha < 1.0)) {
    return absl::InvalidArgumentError(
        absl::StrCat("alpha must lie in (0, 1), got ", alpha));
  }
  return absl::OkStatus();
}

absl::StatusOr<NoiseSpec> CanonicalNoise(Sensitivity sensitivity,
                                         PrivacyBudget budget) {
  GDPE_RETURN_IF_ERROR(ValidateSensitivity(sensitivity));
  GDPE_RETURN_IF_ERROR(ValidateBudget(budget));
  const double ratio = sensitivity.delta / budget.mu;
  return NoiseSpec{.tau = 0.5 * ratio * ratio, .sigma2 = ratio * ratio};
}

absl::StatusOr<PrivateEValue> Privatize(double evalue, Sensitivity sensitivity,
                                        PrivacyBudget budget,
                                        const RngSeed& seed) {
  GDPE_ASSIGN_OR_RETURN(const NoiseSpec noise,
                        CanonicalNoise(sensitivity, budget));
  if (!(evalue >= 0.0)) {
    return absl::InvalidArgumentError(
        absl::StrCat("e-value must be >= 0, got ", evalue));
  }
  PrivateEValue out{.budget = budget,
                    .sensitivity = sensitivity,
                    .mechanism = Mechanism::kCanonical,
                    .seed_root = seed.root(),
                    .seed_path = seed.path()};
  const double log_e = std::log(evalue);
  if (sensitivity.delta == 0.0) {
    out.value = evalue;
    out.log_value = log_e;
    return out;
  }
  Substream stream(seed);
  const double xi = noise.tau + noise.sd() * stream.Normal();
  out.log_value = log_e - xi;
  out.value = evalue * std::exp(-xi);
  return out;
}

absl::StatusOr<std::vector<double>> AllNoisyLogValues(
    std::span<const double> log_evalues, Sensitivity sensitivity,
    PrivacyBudget budget, const RngSeed& seed) {
  GDPE_RETURN_IF_ERROR(ValidateBudget(budget));
  if (log_evalues.empty()) {
    return absl::InvalidArgumentError("all-noisy release needs m >= 1");
  }
  const double m = static_cast<double>(log_evalues.size());
  GDPE_ASSIGN_OR_RETURN(
      const NoiseSpec noise,
      CanonicalNoise(sensitivity, PrivacyBudget{budget.mu / std::sqrt(m)}));
  if (sensitivity.delta == 0.0) {
    return std::vector<double>(log_evalues.begin(), log_evalues.end());
  }
  return kernels::ShiftByLogNormalNoise(log_evalues, noise.tau, noise.sd(),
                                        seed.key());
}

absl::StatusOr<std::vector<PrivateEValue>> AllNoisyPrivatize(
    std::span<const double> evalues, Sensitivity sensitivity,
    PrivacyBudget budget, const RngSeed& seed) {
  GDPE_ASSIGN_OR_RETURN(const std::vector<double> log_e, ToLogEValues(evalues));
  GDPE_ASSIGN_OR_RETURN(const std::vector<double> shifted,
                        AllNoisyLogValues(log_e, sensitivity, budget, seed));
  const PrivacyBudget per_coordinate{
      budget.mu / std::sqrt(static_cast<double>(evalues.size()))};
  std::vector<PrivateEValue> out;
  out.reserve(evalues.size());
  for (size_t i = 0; i < evalues.size(); ++i) {
    const RngSeed child = seed.Child(i);
    PrivateEValue v{.budget = per_coordinate,
                    .sensitivity = sensitivity,
                    .mechanism = Mechanism::kAllNoisy,
                    .seed_root = child.root(),
                    .seed_path = child.path()};
    v.log_value = shifted[i];
    // exp(log E - xi) rather than E * exp(-xi): identical up to rounding, and
    // this form keeps value and log_value consistent.
    v.value = sensitivity.delta == 0.0 ? evalues[i] : std::exp(shifted[i]);
    out.push_back(std::move(v));
  }
  return out;
}

absl::StatusOr<std::vector<double>> ToLogEValues(
    std::span<const double> evalues) {
  std::vector<double> out;
  out.reserve(evalues.size());
  for (size_t i = 0; i < evalues.size(); ++i) {
    if (!(evalues[i] >= 0.0)) {
      return absl::InvalidArgumentError(absl::StrCat(
          "e-value at position ", i, " must be >= 0, got ", evalues[i]));
    }
    out.push_back(std::log(evalues[i]));
  }
  return out;
}

}  // namespace gdpe
