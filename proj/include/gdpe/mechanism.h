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

// The canonical mu-GDP e-value mechanism E * exp(-xi) with
// xi ~ N(delta^2 / (2 mu^2), delta^2 / mu^2), and the vocabulary shared by the
// other modules: privacy budgets, log-sensitivities and privatized e-values.

#ifndef GDPE_MECHANISM_H_
#define GDPE_MECHANISM_H_

#include <cmath>
#include <cstdint>
#include <span>
#include <vector>

#include "absl/status/status.h"
#include "absl/status/statusor.h"
#include "gdpe/rng.h"

namespace gdpe {

// GDP parameter mu.
struct PrivacyBudget {
  double mu = 0.0;
};

// sup over neighbouring datasets of |log E(D) - log E(D')|.
struct Sensitivity {
  double delta = 0.0;
};

absl::Status ValidateBudget(PrivacyBudget budget);
absl::Status ValidateSensitivity(Sensitivity sensitivity);
absl::Status ValidateAlpha(double alpha);

// Law of the log-scale noise xi ~ N(tau, sigma2).
struct NoiseSpec {
  double tau = 0.0;
  double sigma2 = 0.0;

  double sd() const { return std::sqrt(sigma2); }
};

// How a private e-value came to be; aggregation checks it before combining.
enum class Mechanism {
  kCanonical,         // E * exp(-xi) at the attached budget
  kAllNoisy,          // canonical, one coordinate of an m-fold release
  kNoisyMaxRelease,   // value released by a report-noisy-max extraction
  kWeightedAverage,
  kIndependentProduct,
};

struct PrivateEValue {
  // E * exp(-xi). May underflow to 0 for large noise; log_value does not.
  double value = 0.0;
  // log E - xi; -inf when E = 0.
  double log_value = -INFINITY;
  PrivacyBudget budget;
  Sensitivity sensitivity;
  Mechanism mechanism = Mechanism::kCanonical;
  // Address of the noise draw, for replay.
  uint64_t seed_root = 0;
  std::vector<uint64_t> seed_path;
  // Set by IndependentProduct: the caller vouched that components came from
  // disjoint datasets.
  bool independence_asserted = false;
};

// tau = delta^2 / (2 mu^2), sigma2 = delta^2 / mu^2. exp(-tau + sigma2 / 2) = 1,
// so the multiplicative factor exp(-xi) has unit mean.
absl::StatusOr<NoiseSpec> CanonicalNoise(Sensitivity sensitivity,
                                         PrivacyBudget budget);

// E * exp(-xi), xi drawn from the first normal of `seed`'s substream. With
// delta = 0 the input passes through unchanged.
absl::StatusOr<PrivateEValue> Privatize(double evalue, Sensitivity sensitivity,
                                        PrivacyBudget budget,
                                        const RngSeed& seed);

// The all-noisy baseline: every coordinate privatized at budget mu / sqrt(m),
// i.e. xi_i ~ N(m delta^2 / (2 mu^2), m delta^2 / mu^2), coordinate i drawing
// from seed.Child(i).
absl::StatusOr<std::vector<PrivateEValue>> AllNoisyPrivatize(
    std::span<const double> evalues, Sensitivity sensitivity,
    PrivacyBudget budget, const RngSeed& seed);

// Log-space all-noisy release for callers that only need log E_i - xi_i.
// Same draws as AllNoisyPrivatize.
absl::StatusOr<std::vector<double>> AllNoisyLogValues(
    std::span<const double> log_evalues, Sensitivity sensitivity,
    PrivacyBudget budget, const RngSeed& seed);

// log of each entry, with log 0 = -inf. Rejects negative or NaN entries.
absl::StatusOr<std::vector<double>> ToLogEValues(
    std::span<const double> evalues);

}  // namespace gdpe

#endif  // GDPE_MECHANISM_H_
