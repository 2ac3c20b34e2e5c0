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

#include "gdpe/audit.h"

#include <cmath>

#include "absl/strings/str_cat.h"
#include "gdpe/io.h"
#include "gdpe/kernels.h"
#include "gdpe/normal.h"
#include "gdpe/selection.h"
#include "gdpe/stats.h"
#include "gdpe/status_macros.h"

namespace gdpe {
namespace {

// The noise transforms are increasing, so the maximum of n noise draws is the
// transform of the maximum of the n underlying uniforms.
struct NoiseTransform {
  AuditNoise noise;
  double scale;

  double operator()(double u) const {
    if (noise == AuditNoise::kGaussian) {
      return scale * internal::NormalQuantileRational(u);
    }
    return -scale * std::log(-std::log(u));
  }
};

size_t CountErrors(const NoiseTransform& transform, double gamma, uint64_t n,
                   size_t trials, const RngSeed& seed, uint64_t favoured,
                   uint64_t other) {
  const std::vector<char> errors =
      kernels::MapTrials<char>(trials, [&](size_t t) {
        const StreamKey key = seed.Child(t).key();
        const double a = transform(kernels::MaxUniform(key.Child(favoured), n));
        const double b = transform(kernels::MaxUniform(key.Child(other), n));
        return static_cast<char>(a > gamma + b);
      });
  size_t count = 0;
  for (char e : errors) count += static_cast<size_t>(e);
  return count;
}

}  // namespace

const char* AuditNoiseName(AuditNoise noise) {
  return noise == AuditNoise::kGaussian ? "gaussian" : "gumbel";
}

double AuditConfig::ClaimedMu() const {
  return mu_claimed.value_or(budget.mu / std::sqrt(2.0));
}

absl::Status ValidateAuditConfig(const AuditConfig& cfg) {
  if (!(cfg.gamma >= 0.0) || std::isinf(cfg.gamma)) {
    return absl::InvalidArgumentError(
        absl::StrCat("gamma must be finite and >= 0, got ", cfg.gamma));
  }
  if (cfg.n_grid.empty()) return absl::InvalidArgumentError("n grid is empty");
  for (uint64_t n : cfg.n_grid) {
    if (n < 1) return absl::InvalidArgumentError("every n must be >= 1");
  }
  GDPE_RETURN_IF_ERROR(ValidateBudget(cfg.budget));
  GDPE_RETURN_IF_ERROR(ValidateSensitivity(cfg.sensitivity));
  if (cfg.sensitivity.delta == 0.0) {
    return absl::InvalidArgumentError("delta must be > 0");
  }
  if (cfg.trials < 1) return absl::InvalidArgumentError("trials must be >= 1");
  const double claimed = cfg.ClaimedMu();
  if (!(claimed >= 0.0) || std::isinf(claimed)) {
    return absl::InvalidArgumentError(
        absl::StrCat("claimed mu must be finite and >= 0, got ", claimed));
  }
  return absl::OkStatus();
}

double AuditGaussianSd(Sensitivity sensitivity, PrivacyBudget budget) {
  return std::sqrt(8.0) * sensitivity.delta / budget.mu;
}

absl::StatusOr<double> AuditGumbelScale(Sensitivity sensitivity,
                                        PrivacyBudget budget) {
  GDPE_ASSIGN_OR_RETURN(const double epsilon, SelectionEpsilon(budget));
  return 2.0 * sensitivity.delta / epsilon;
}

absl::StatusOr<SelectionError> SelectionErrorMc(const AuditConfig& cfg,
                                                uint64_t n,
                                                const RngSeed& seed) {
  GDPE_RETURN_IF_ERROR(ValidateAuditConfig(cfg));
  if (n < 1) return absl::InvalidArgumentError("n must be >= 1");
  NoiseTransform transform{cfg.noise, 0.0};
  if (cfg.noise == AuditNoise::kGaussian) {
    transform.scale = AuditGaussianSd(cfg.sensitivity, cfg.budget);
  } else {
    GDPE_ASSIGN_OR_RETURN(transform.scale,
                          AuditGumbelScale(cfg.sensitivity, cfg.budget));
  }
  SelectionError out;
  const size_t type1 =
      CountErrors(transform, cfg.gamma, n, cfg.trials, seed, 0, 1);
  out.p_error = static_cast<double>(type1) / static_cast<double>(cfg.trials);
  out.se = ProportionSe(out.p_error, cfg.trials);
  if (cfg.estimate_type2) {
    const size_t type2 =
        CountErrors(transform, cfg.gamma, n, cfg.trials, seed, 3, 2);
    out.type2 = static_cast<double>(type2) / static_cast<double>(cfg.trials);
    out.type2_se = ProportionSe(*out.type2, cfg.trials);
  }
  return out;
}

absl::StatusOr<double> GumbelErrorClosedForm(double gap, double scale) {
  if (!(gap > 0.0) || !(scale > 0.0) || std::isnan(gap / scale)) {
    return absl::InvalidArgumentError(absl::StrCat(
        "gap and scale must be > 0, got ", gap, " and ", scale));
  }
  return 1.0 / (1.0 + std::exp(gap / scale));
}

bool IsViolation(double p_error, double se, double mu_claimed) {
  return p_error + 3.0 * se < internal::GdpTradeoffUnchecked(p_error, mu_claimed);
}

absl::StatusOr<std::vector<AuditRow>> ViolationReport(const AuditConfig& cfg,
                                                      const RngSeed& seed) {
  GDPE_RETURN_IF_ERROR(ValidateAuditConfig(cfg));
  const double claimed = cfg.ClaimedMu();
  std::vector<AuditRow> rows;
  for (size_t g = 0; g < cfg.n_grid.size(); ++g) {
    const uint64_t n = cfg.n_grid[g];
    GDPE_ASSIGN_OR_RETURN(const SelectionError err,
                          SelectionErrorMc(cfg, n, seed.Child(g)));
    AuditRow row;
    row.noise = cfg.noise;
    row.n = n;
    row.p_error = err.p_error;
    row.se = err.se;
    row.g_mu_at_p = internal::GdpTradeoffUnchecked(err.p_error, claimed);
    row.violation = IsViolation(err.p_error, err.se, claimed);
    rows.push_back(row);
  }
  return rows;
}

void WriteAuditCsv(std::span<const AuditRow> rows, std::ostream& out) {
  out << kAuditCsvHeader << '\n';
  for (const AuditRow& r : rows) {
    out << AuditNoiseName(r.noise) << ',' << r.n << ','
        << FormatDouble(r.p_error) << ',' << FormatDouble(r.se) << ','
        << FormatDouble(r.g_mu_at_p) << ',' << (r.violation ? "true" : "false")
        << '\n';
  }
}

}  // namespace gdpe
