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

#include "gdpe/aggregation.h"

#include <algorithm>
#include <cmath>
#include <limits>

#include "absl/status/status.h"
#include "absl/strings/str_cat.h"
#include "gdpe/status_macros.h"

namespace gdpe {

constexpr double kWeightSumTolerance = 1e-12;

absl::StatusOr<PrivacyBudget> Compose(const BudgetLedger& ledger) {
  if (ledger.components.empty()) {
    return absl::InvalidArgumentError("cannot compose an empty ledger");
  }
  double sum_sq = 0.0;
  for (const PrivacyBudget& b : ledger.components) {
    GDPE_RETURN_IF_ERROR(ValidateBudget(b));
    sum_sq += b.mu * b.mu;
  }
  if (ledger.components.size() == 1) return ledger.components.front();
  return PrivacyBudget{std::sqrt(sum_sq)};
}

absl::StatusOr<PrivateEValue> WeightedAverage(
    std::span<const PrivateEValue> evalues, std::span<const double> weights) {
  if (evalues.empty()) {
    return absl::InvalidArgumentError("weighted average of no e-values");
  }
  if (weights.size() != evalues.size()) {
    return absl::InvalidArgumentError(
        absl::StrCat("got ", weights.size(), " weights for ", evalues.size(),
                     " e-values"));
  }
  double weight_sum = 0.0;
  for (double w : weights) {
    if (!(w >= 0.0)) {
      return absl::InvalidArgumentError(
          absl::StrCat("weights must be >= 0, got ", w));
    }
    weight_sum += w;
  }
  if (std::fabs(weight_sum - 1.0) > kWeightSumTolerance) {
    return absl::InvalidArgumentError(
        absl::StrCat("weights must sum to 1, got ", weight_sum));
  }
  const double mu = evalues.front().budget.mu;
  BudgetLedger ledger;
  double value = 0.0;
  for (size_t k = 0; k < evalues.size(); ++k) {
    if (evalues[k].budget.mu != mu) {
      return absl::InvalidArgumentError(absl::StrCat(
          "weighted average needs a common mu; component ", k, " has ",
          evalues[k].budget.mu, ", component 0 has ", mu));
    }
    ledger.components.push_back(evalues[k].budget);
    value += weights[k] * evalues[k].value;
  }
  GDPE_ASSIGN_OR_RETURN(const PrivacyBudget composed, Compose(ledger));
  PrivateEValue out;
  out.value = value;
  out.log_value = std::log(value);
  out.budget = composed;
  out.sensitivity = evalues.front().sensitivity;
  for (const PrivateEValue& e : evalues) {
    out.sensitivity.delta = std::max(out.sensitivity.delta, e.sensitivity.delta);
  }
  out.mechanism = Mechanism::kWeightedAverage;
  return out;
}

absl::StatusOr<PrivacyBudget> ProductBudget(
    std::span<const Sensitivity> sensitivities, PrivacyBudget budget) {
  GDPE_RETURN_IF_ERROR(ValidateBudget(budget));
  if (sensitivities.empty()) {
    return absl::InvalidArgumentError("product of no e-values");
  }
  double max_delta = 0.0;
  double sum_sq = 0.0;
  for (Sensitivity s : sensitivities) {
    GDPE_RETURN_IF_ERROR(ValidateSensitivity(s));
    max_delta = std::max(max_delta, s.delta);
    sum_sq += s.delta * s.delta;
  }
  if (sum_sq == 0.0) {
    return absl::InvalidArgumentError(
        "product budget undefined when every delta_k is 0");
  }
  if (sensitivities.size() == 1) return budget;
  return PrivacyBudget{budget.mu * max_delta / std::sqrt(sum_sq)};
}

absl::StatusOr<PrivateEValue> IndependentProduct(
    std::span<const PrivateEValue> evalues,
    std::span<const Sensitivity> sensitivities, PrivacyBudget budget,
    DisjointDatasets /*assertion*/) {
  if (evalues.empty()) {
    return absl::InvalidArgumentError("product of no e-values");
  }
  if (sensitivities.size() != evalues.size()) {
    return absl::InvalidArgumentError(
        absl::StrCat("got ", sensitivities.size(), " sensitivities for ",
                     evalues.size(), " e-values"));
  }
  double log_value = 0.0;
  double value = 1.0;
  for (size_t k = 0; k < evalues.size(); ++k) {
    const PrivateEValue& e = evalues[k];
    if (e.mechanism != Mechanism::kCanonical || e.budget.mu != budget.mu ||
        e.sensitivity.delta != sensitivities[k].delta) {
      return absl::FailedPreconditionError(absl::StrCat(
          "component ", k,
          " is not a canonical release at the common mu with its stated "
          "delta"));
    }
    log_value += e.log_value;
    value *= e.value;
  }
  GDPE_ASSIGN_OR_RETURN(const PrivacyBudget prod_budget,
                        ProductBudget(sensitivities, budget));
  PrivateEValue out;
  out.value = value;
  out.log_value = log_value;
  out.budget = prod_budget;
  double max_delta = 0.0;
  for (Sensitivity s : sensitivities) max_delta = std::max(max_delta, s.delta);
  out.sensitivity = Sensitivity{max_delta};
  out.mechanism = Mechanism::kIndependentProduct;
  out.independence_asserted = true;
  return out;
}

}  // namespace gdpe
