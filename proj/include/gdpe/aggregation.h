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

// Privacy accounting for several private e-values: general GDP composition,
// weighted averaging under arbitrary dependence, and the product rule for
// e-values computed on disjoint datasets.

#ifndef GDPE_AGGREGATION_H_
#define GDPE_AGGREGATION_H_

#include <span>
#include <vector>

#include "absl/status/statusor.h"
#include "gdpe/mechanism.h"

namespace gdpe {

struct BudgetLedger {
  std::vector<PrivacyBudget> components;
};

// sqrt(sum_k mu_k^2).
absl::StatusOr<PrivacyBudget> Compose(const BudgetLedger& ledger);

// sum_k weights[k] * value_k, accounted at sqrt(K) mu. All components must
// share the same mu; weights must be nonnegative and sum to 1 within 1e-12.
absl::StatusOr<PrivateEValue> WeightedAverage(
    std::span<const PrivateEValue> evalues, std::span<const double> weights);

// mu * max_k delta_k / sqrt(sum_k delta_k^2).
absl::StatusOr<PrivacyBudget> ProductBudget(
    std::span<const Sensitivity> sensitivities, PrivacyBudget budget);

// Statement by the caller that the inputs were computed on mutually disjoint
// datasets. The library cannot check this; it is recorded in the output.
enum class DisjointDatasets { kAssertedByCaller };

// prod_k value_k at budget ProductBudget(sensitivities, budget). Each
// component must be a canonical release at `budget` with its own delta_k.
absl::StatusOr<PrivateEValue> IndependentProduct(
    std::span<const PrivateEValue> evalues,
    std::span<const Sensitivity> sensitivities, PrivacyBudget budget,
    DisjointDatasets assertion);

}  // namespace gdpe

#endif  // GDPE_AGGREGATION_H_
