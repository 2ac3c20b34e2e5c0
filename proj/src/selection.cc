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

#include "gdpe/selection.h"

#include <algorithm>
#include <cmath>

#include "absl/status/status.h"
#include "absl/strings/str_cat.h"
#include "gdpe/kernels.h"
#include "gdpe/normal.h"
#include "gdpe/status_macros.h"

namespace gdpe {
namespace {

constexpr double kInv2Sqrt2 = 0.35355339059327376220;

}  // namespace

absl::StatusOr<double> SelectionEpsilon(PrivacyBudget budget) {
  GDPE_RETURN_IF_ERROR(ValidateBudget(budget));
  const double a = budget.mu * kInv2Sqrt2;
  return NormalLogCdf(a) - NormalLogCdf(-a);
}

absl::StatusOr<SelectionBudgetSplit> SplitSelectionBudget(
    Sensitivity sensitivity, PrivacyBudget budget) {
  GDPE_RETURN_IF_ERROR(ValidateSensitivity(sensitivity));
  if (sensitivity.delta == 0.0) {
    return absl::InvalidArgumentError("noisy-max selection needs delta > 0");
  }
  GDPE_ASSIGN_OR_RETURN(const double epsilon, SelectionEpsilon(budget));
  const double ratio = sensitivity.delta / budget.mu;
  return SelectionBudgetSplit{.epsilon = epsilon,
                              .gumbel_scale = 2.0 * sensitivity.delta / epsilon,
                              .release_tau = ratio * ratio,
                              .release_var = 2.0 * ratio * ratio};
}

absl::StatusOr<double> GumbelSample(double scale, const RngSeed& seed) {
  if (!(scale > 0.0) || std::isinf(scale)) {
    return absl::InvalidArgumentError(
        absl::StrCat("Gumbel scale must be finite and > 0, got ", scale));
  }
  Substream stream(seed);
  return stream.Gumbel(scale);
}

FastExtraction ReportNoisyMaxUnchecked(std::span<const size_t> active,
                                       std::span<const double> log_evalues,
                                       const SelectionBudgetSplit& split,
                                       StreamKey key) {
  const kernels::ArgmaxResult winner = kernels::PerturbedArgmax(
      log_evalues, active, split.gumbel_scale, key.Child(0));
  const double u = BitsToOpenUnit(DrawBits(key.Child(1), 0));
  const double xi = split.release_tau +
                    std::sqrt(split.release_var) *
                        internal::NormalQuantileRational(u);
  return {winner.index, log_evalues[winner.index] - xi};
}

absl::StatusOr<Extraction> ReportNoisyMax(std::span<const size_t> active,
                                          std::span<const double> log_evalues,
                                          Sensitivity sensitivity,
                                          PrivacyBudget budget,
                                          const RngSeed& seed) {
  if (active.empty()) {
    return absl::InvalidArgumentError("report noisy max on an empty set");
  }
  for (size_t c : active) {
    if (c >= log_evalues.size()) {
      return absl::OutOfRangeError(absl::StrCat(
          "active index ", c, " outside ", log_evalues.size(), " e-values"));
    }
    if (std::isnan(log_evalues[c]) || log_evalues[c] == INFINITY) {
      return absl::InvalidArgumentError(
          absl::StrCat("log e-value at index ", c, " is not usable: ",
                       log_evalues[c]));
    }
  }
  GDPE_ASSIGN_OR_RETURN(const SelectionBudgetSplit split,
                        SplitSelectionBudget(sensitivity, budget));
  const FastExtraction fast =
      ReportNoisyMaxUnchecked(active, log_evalues, split, seed.key());
  const RngSeed release_seed = seed.Child(1);
  Extraction out;
  out.index = fast.index;
  out.private_value.log_value = fast.log_value;
  out.private_value.value = std::exp(fast.log_value);
  out.private_value.budget = budget;
  out.private_value.sensitivity = sensitivity;
  out.private_value.mechanism = Mechanism::kNoisyMaxRelease;
  out.private_value.seed_root = release_seed.root();
  out.private_value.seed_path = release_seed.path();
  return out;
}

double PureDpTradeoff(double alpha, double epsilon) {
  return std::max({0.0, 1.0 - std::exp(epsilon) * alpha,
                   std::exp(-epsilon) * (1.0 - alpha)});
}

}  // namespace gdpe
