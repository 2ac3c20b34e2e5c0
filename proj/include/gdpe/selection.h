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

// Report Noisy Max extraction: pick argmax_i (log E_i + g_i) with
// g_i ~ Gumbel(0, 2 delta / epsilon), then release the winner through the
// canonical Gaussian mechanism at mu / sqrt(2). The selection step is
// epsilon-DP with epsilon = log(Phi(mu / (2 sqrt 2)) / Phi(-mu / (2 sqrt 2))),
// whose trade-off curve dominates G_{mu / sqrt 2}; the whole extraction is
// mu-GDP.

#ifndef GDPE_SELECTION_H_
#define GDPE_SELECTION_H_

#include <cstddef>
#include <span>

#include "absl/status/statusor.h"
#include "gdpe/mechanism.h"
#include "gdpe/rng.h"

namespace gdpe {

struct SelectionBudgetSplit {
  double epsilon = 0.0;
  double gumbel_scale = 0.0;  // 2 delta / epsilon
  double release_tau = 0.0;   // delta^2 / mu^2
  double release_var = 0.0;   // 2 delta^2 / mu^2
};

// epsilon for the selection half of a mu-GDP extraction.
absl::StatusOr<double> SelectionEpsilon(PrivacyBudget budget);

absl::StatusOr<SelectionBudgetSplit> SplitSelectionBudget(
    Sensitivity sensitivity, PrivacyBudget budget);

// One Gumbel(0, scale) draw from the seed's substream.
absl::StatusOr<double> GumbelSample(double scale, const RngSeed& seed);

struct Extraction {
  size_t index = 0;
  PrivateEValue private_value;
};

// Selects among `active` (indices into log_evalues) and releases the winner.
// Zero e-values enter as -inf scores; if every active value is zero the lowest
// active index wins and its released value is 0. Finite ties also go to the
// lowest index. Candidate c draws its Gumbel noise from
// seed.Child(0).Child(c); the release noise comes from seed.Child(1).
absl::StatusOr<Extraction> ReportNoisyMax(std::span<const size_t> active,
                                          std::span<const double> log_evalues,
                                          Sensitivity sensitivity,
                                          PrivacyBudget budget,
                                          const RngSeed& seed);

// The same mechanism without validation or provenance, for inner loops that
// have already checked their inputs. Returns the winner and log of its
// released value.
struct FastExtraction {
  size_t index = 0;
  double log_value = 0.0;
};
FastExtraction ReportNoisyMaxUnchecked(std::span<const size_t> active,
                                       std::span<const double> log_evalues,
                                       const SelectionBudgetSplit& split,
                                       StreamKey key);

// f_{eps,0}(alpha) = max{0, 1 - e^eps alpha, e^-eps (1 - alpha)}.
double PureDpTradeoff(double alpha, double epsilon);

}  // namespace gdpe

#endif  // GDPE_SELECTION_H_
