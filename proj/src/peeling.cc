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

#include "gdpe/peeling.h"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "absl/status/status.h"
#include "absl/strings/str_cat.h"
#include "gdpe/normal.h"
#include "gdpe/selection.h"
#include "gdpe/status_macros.h"

namespace gdpe {
namespace {

absl::Status ValidateLogEValues(std::span<const double> log_evalues) {
  if (log_evalues.empty()) {
    return absl::InvalidArgumentError("no e-values given");
  }
  for (size_t i = 0; i < log_evalues.size(); ++i) {
    if (std::isnan(log_evalues[i]) || log_evalues[i] == INFINITY) {
      return absl::InvalidArgumentError(absl::StrCat(
          "log e-value at index ", i, " is not usable: ", log_evalues[i]));
    }
  }
  return absl::OkStatus();
}

absl::Status ValidateAdaptive(const AdaptiveConfig& acfg, size_t m) {
  GDPE_RETURN_IF_ERROR(ValidateAlpha(acfg.alpha));
  if (acfg.s_min < 1 || acfg.s_min > m) {
    return absl::InvalidArgumentError(
        absl::StrCat("s_min must lie in [1, m = ", m, "], got ", acfg.s_min));
  }
  if (!(acfg.mu0 > 0.0) || std::isinf(acfg.mu0)) {
    return absl::InvalidArgumentError(
        absl::StrCat("mu0 must be finite and > 0, got ", acfg.mu0));
  }
  return absl::OkStatus();
}

}  // namespace

std::vector<double> PrivateEVector::Values() const {
  std::vector<double> out(log_values.size());
  std::transform(log_values.begin(), log_values.end(), out.begin(),
                 [](double l) { return std::exp(l); });
  return out;
}

std::vector<size_t> DyadicGrid(size_t s_min, size_t m) {
  std::vector<size_t> grid;
  if (s_min == 0) return grid;
  for (size_t k = s_min; k <= m; k *= 2) {
    grid.push_back(k);
    if (k > m / 2) break;
  }
  return grid;
}

std::vector<double> DescendingOrderStatistics(
    std::span<const double> log_values) {
  std::vector<double> sorted(log_values.begin(), log_values.end());
  std::stable_sort(sorted.begin(), sorted.end(), std::greater<double>());
  return sorted;
}

absl::StatusOr<PrivateEVector> PeelFixedLog(std::span<const double> log_evalues,
                                            const PeelingConfig& cfg,
                                            const RngSeed& seed) {
  GDPE_RETURN_IF_ERROR(ValidateLogEValues(log_evalues));
  const size_t m = log_evalues.size();
  if (cfg.s < 1 || cfg.s > m) {
    return absl::InvalidArgumentError(
        absl::StrCat("peeling size must lie in [1, m = ", m, "], got ", cfg.s));
  }
  GDPE_RETURN_IF_ERROR(ValidateBudget(cfg.budget));
  const PrivacyBudget per_iteration{cfg.budget.mu /
                                    std::sqrt(static_cast<double>(cfg.s))};
  GDPE_ASSIGN_OR_RETURN(const SelectionBudgetSplit split,
                        SplitSelectionBudget(cfg.sensitivity, per_iteration));

  std::vector<size_t> active(m);
  std::iota(active.begin(), active.end(), size_t{0});
  PrivateEVector out;
  out.log_values.assign(m, -INFINITY);
  out.selected.reserve(cfg.s);
  out.budget = cfg.budget;
  for (size_t t = 0; t < cfg.s; ++t) {
    const FastExtraction e =
        ReportNoisyMaxUnchecked(active, log_evalues, split, seed.Child(t).key());
    out.log_values[e.index] = e.log_value;
    out.selected.push_back(e.index);
    active.erase(std::lower_bound(active.begin(), active.end(), e.index));
  }
  return out;
}

absl::StatusOr<PrivateEVector> PeelFixed(std::span<const double> evalues,
                                         const PeelingConfig& cfg,
                                         const RngSeed& seed) {
  GDPE_ASSIGN_OR_RETURN(const std::vector<double> logs, ToLogEValues(evalues));
  return PeelFixedLog(logs, cfg, seed);
}

absl::StatusOr<MarginVector> NoisyMarginsLog(std::span<const double> log_evalues,
                                             const AdaptiveConfig& acfg,
                                             Sensitivity sensitivity,
                                             const RngSeed& seed) {
  GDPE_RETURN_IF_ERROR(ValidateLogEValues(log_evalues));
  const size_t m = log_evalues.size();
  GDPE_RETURN_IF_ERROR(ValidateAdaptive(acfg, m));
  GDPE_RETURN_IF_ERROR(ValidateSensitivity(sensitivity));

  MarginVector out;
  out.grid = DyadicGrid(acfg.s_min, m);
  const std::vector<double> order = DescendingOrderStatistics(log_evalues);
  const double sd = std::sqrt(static_cast<double>(out.grid.size())) *
                    sensitivity.delta / acfg.mu0;
  const double log_m_over_alpha =
      std::log(static_cast<double>(m)) - std::log(acfg.alpha);
  for (size_t j = 0; j < out.grid.size(); ++j) {
    const size_t k = out.grid[j];
    const double q =
        order[k - 1] - (log_m_over_alpha - std::log(static_cast<double>(k)));
    Substream stream(seed.Child(j));
    out.q.push_back(q);
    out.q_noisy.push_back(q + sd * stream.Normal());
  }
  return out;
}

absl::StatusOr<MarginVector> NoisyMargins(std::span<const double> evalues,
                                          const AdaptiveConfig& acfg,
                                          Sensitivity sensitivity,
                                          const RngSeed& seed) {
  GDPE_ASSIGN_OR_RETURN(const std::vector<double> logs, ToLogEValues(evalues));
  return NoisyMarginsLog(logs, acfg, sensitivity, seed);
}

size_t ChoosePeelSize(const MarginVector& margins, const AdaptiveConfig& acfg,
                      size_t m) {
  const size_t n = margins.grid.size();
  size_t last = n;
  for (size_t j = 0; j < n; ++j) {
    if (margins.q_noisy[j] >= 0.0) last = j;
  }
  size_t s_hat = acfg.s_min;
  if (last != n) {
    s_hat = last + 1 < n ? margins.grid[last + 1] : margins.grid[last];
  }
  return std::clamp(s_hat, acfg.s_min, m);
}

absl::StatusOr<AdaptivePeelResult> PeelAdaptiveLog(
    std::span<const double> log_evalues, const AdaptiveConfig& acfg,
    Sensitivity sensitivity, PrivacyBudget budget, const RngSeed& seed) {
  GDPE_RETURN_IF_ERROR(ValidateBudget(budget));
  if (!(acfg.mu0 < budget.mu)) {
    return absl::InvalidArgumentError(absl::StrCat(
        "mu0 (", acfg.mu0, ") must be below the total budget mu (", budget.mu,
        ")"));
  }
  AdaptivePeelResult out;
  GDPE_ASSIGN_OR_RETURN(
      out.margins,
      NoisyMarginsLog(log_evalues, acfg, sensitivity, seed.Child(0)));
  out.s_hat = ChoosePeelSize(out.margins, acfg, log_evalues.size());
  out.mu_peel = std::sqrt(budget.mu * budget.mu - acfg.mu0 * acfg.mu0);
  GDPE_ASSIGN_OR_RETURN(
      out.released,
      PeelFixedLog(log_evalues,
                   PeelingConfig{out.s_hat, sensitivity, {out.mu_peel}},
                   seed.Child(1)));
  out.released.budget = budget;
  return out;
}

absl::StatusOr<AdaptivePeelResult> PeelAdaptive(std::span<const double> evalues,
                                                const AdaptiveConfig& acfg,
                                                Sensitivity sensitivity,
                                                PrivacyBudget budget,
                                                const RngSeed& seed) {
  GDPE_ASSIGN_OR_RETURN(const std::vector<double> logs, ToLogEValues(evalues));
  return PeelAdaptiveLog(logs, acfg, sensitivity, budget, seed);
}

}  // namespace gdpe
