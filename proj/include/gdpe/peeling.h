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

// Private top-k release by repeated noisy-max extraction.
//
// PeelFixed runs s extractions at budget mu / sqrt(s) each, removing every
// winner from the active set; coordinates never selected are released as 0.
// PeelAdaptive first spends mu0 on a noisy scan of the e-BH margins
// Q_k = L_(k) - log(m / (alpha k)) over a dyadic grid of k, picks the peeling
// size from it, and then peels at sqrt(mu^2 - mu0^2).

#ifndef GDPE_PEELING_H_
#define GDPE_PEELING_H_

#include <cstddef>
#include <span>
#include <vector>

#include "absl/status/statusor.h"
#include "gdpe/mechanism.h"
#include "gdpe/rng.h"

namespace gdpe {

struct PeelingConfig {
  size_t s = 1;
  Sensitivity sensitivity;
  PrivacyBudget budget;
};

struct AdaptiveConfig {
  size_t s_min = 1;
  double mu0 = 0.0;
  double alpha = 0.05;
};

struct MarginVector {
  std::vector<size_t> grid;
  std::vector<double> q;
  std::vector<double> q_noisy;
};

struct PrivateEVector {
  // log of each released value; -inf for coordinates never selected.
  std::vector<double> log_values;
  // Indices in extraction order.
  std::vector<size_t> selected;
  PrivacyBudget budget;

  std::vector<double> Values() const;
};

struct AdaptivePeelResult {
  PrivateEVector released;
  MarginVector margins;
  size_t s_hat = 0;
  double mu_peel = 0.0;
};

// {s_min, 2 s_min, 4 s_min, ...} restricted to [1, m].
std::vector<size_t> DyadicGrid(size_t s_min, size_t m);

// Log e-values sorted descending; ties keep ascending index order.
std::vector<double> DescendingOrderStatistics(std::span<const double> log_values);

// Iteration t draws from seed.Child(t).
absl::StatusOr<PrivateEVector> PeelFixedLog(std::span<const double> log_evalues,
                                            const PeelingConfig& cfg,
                                            const RngSeed& seed);
absl::StatusOr<PrivateEVector> PeelFixed(std::span<const double> evalues,
                                         const PeelingConfig& cfg,
                                         const RngSeed& seed);

// Z_k for grid position j is the first normal of seed.Child(j).
absl::StatusOr<MarginVector> NoisyMarginsLog(std::span<const double> log_evalues,
                                             const AdaptiveConfig& acfg,
                                             Sensitivity sensitivity,
                                             const RngSeed& seed);
absl::StatusOr<MarginVector> NoisyMargins(std::span<const double> evalues,
                                          const AdaptiveConfig& acfg,
                                          Sensitivity sensitivity,
                                          const RngSeed& seed);

size_t ChoosePeelSize(const MarginVector& margins, const AdaptiveConfig& acfg,
                      size_t m);

// Margins use seed.Child(0), the peeling stage seed.Child(1).
absl::StatusOr<AdaptivePeelResult> PeelAdaptiveLog(
    std::span<const double> log_evalues, const AdaptiveConfig& acfg,
    Sensitivity sensitivity, PrivacyBudget budget, const RngSeed& seed);
absl::StatusOr<AdaptivePeelResult> PeelAdaptive(std::span<const double> evalues,
                                                const AdaptiveConfig& acfg,
                                                Sensitivity sensitivity,
                                                PrivacyBudget budget,
                                                const RngSeed& seed);

}  // namespace gdpe

#endif  // GDPE_PEELING_H_
