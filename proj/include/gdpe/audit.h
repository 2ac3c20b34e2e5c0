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

// Swap-test audit of noisy-max selection between two groups of n candidates
// whose centered scores differ by gamma. The error probability
//   p_error(n) = P(max_{i <= n} Z_i > gamma + max_{n < j <= 2n} Z_j)
// is the Type-I (and, by symmetry, Type-II) error of the test "the winner came
// from the favoured group". Under mu-GDP it must satisfy
// p_error >= G_mu(p_error); Gaussian noise at a fixed scale drives p_error to
// 0 as n grows, while Gumbel noise keeps it at 1 / (1 + exp(gamma / b)).

#ifndef GDPE_AUDIT_H_
#define GDPE_AUDIT_H_

#include <cstddef>
#include <cstdint>
#include <optional>
#include <ostream>
#include <span>
#include <vector>

#include "absl/status/status.h"
#include "absl/status/statusor.h"
#include "gdpe/mechanism.h"
#include "gdpe/rng.h"

namespace gdpe {

enum class AuditNoise { kGaussian, kGumbel };
const char* AuditNoiseName(AuditNoise noise);

struct AuditConfig {
  double gamma = 0.49;
  std::vector<uint64_t> n_grid = {100, 1000, 10000, 100000};
  PrivacyBudget budget{0.70710678118654752440};
  Sensitivity sensitivity{1.0};
  size_t trials = 10000;
  AuditNoise noise = AuditNoise::kGaussian;
  // Budget the audited mechanism claims; defaults to mu / sqrt(2).
  std::optional<double> mu_claimed;
  // Also run the mirrored experiment to estimate the Type-II error.
  bool estimate_type2 = false;

  double ClaimedMu() const;
};

absl::Status ValidateAuditConfig(const AuditConfig& cfg);

// sqrt(8) delta / mu.
double AuditGaussianSd(Sensitivity sensitivity, PrivacyBudget budget);
// 2 delta / selection_epsilon(mu).
absl::StatusOr<double> AuditGumbelScale(Sensitivity sensitivity,
                                        PrivacyBudget budget);

struct SelectionError {
  double p_error = 0.0;
  double se = 0.0;
  std::optional<double> type2;
  std::optional<double> type2_se;
};

// Trial t draws group maxima from seed.Child(t).Child(0) and .Child(1); the
// mirrored test uses .Child(2) and .Child(3).
absl::StatusOr<SelectionError> SelectionErrorMc(const AuditConfig& cfg,
                                                uint64_t n,
                                                const RngSeed& seed);

// 1 / (1 + exp(gap / scale)).
absl::StatusOr<double> GumbelErrorClosedForm(double gap, double scale);

struct AuditRow {
  AuditNoise noise = AuditNoise::kGaussian;
  uint64_t n = 0;
  double p_error = 0.0;
  double se = 0.0;
  double g_mu_at_p = 0.0;
  bool violation = false;
};

// True iff p_error + 3 se < G_{mu_claimed}(p_error).
bool IsViolation(double p_error, double se, double mu_claimed);

// Grid entry g uses seed.Child(g).
absl::StatusOr<std::vector<AuditRow>> ViolationReport(const AuditConfig& cfg,
                                                      const RngSeed& seed);

inline constexpr char kAuditCsvHeader[] = "noise,n,p_error,se,g_mu_at_p,violation";
void WriteAuditCsv(std::span<const AuditRow> rows, std::ostream& out);

}  // namespace gdpe

#endif  // GDPE_AUDIT_H_
