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

#include "gdpe/ebh.h"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "absl/status/status.h"
#include "absl/strings/str_cat.h"
#include "gdpe/mechanism.h"
#include "gdpe/status_macros.h"

namespace gdpe {
namespace {

absl::Status ValidateInput(std::span<const double> values, double alpha,
                           bool log_scale) {
  GDPE_RETURN_IF_ERROR(ValidateAlpha(alpha));
  if (values.empty()) return absl::InvalidArgumentError("e-BH needs m >= 1");
  for (size_t i = 0; i < values.size(); ++i) {
    const double v = values[i];
    if (std::isnan(v) || (!log_scale && v < 0.0)) {
      return absl::InvalidArgumentError(
          absl::StrCat("e-value at index ", i, " is invalid: ", v));
    }
  }
  return absl::OkStatus();
}

template <typename Meets>
TestingReport Run(std::span<const double> values, Meets meets) {
  TestingReport report;
  std::vector<size_t> order = DescendingOrder(values);
  for (size_t k = order.size(); k >= 1; --k) {
    if (meets(values[order[k - 1]], k)) {
      report.k_star = k;
      break;
    }
  }
  order.resize(report.k_star);
  report.rejected = std::move(order);
  return report;
}

}  // namespace

std::vector<size_t> DescendingOrder(std::span<const double> values) {
  std::vector<size_t> order(values.size());
  std::iota(order.begin(), order.end(), size_t{0});
  std::stable_sort(order.begin(), order.end(), [&](size_t a, size_t b) {
    return values[a] > values[b];
  });
  return order;
}

absl::StatusOr<TestingReport> Ebh(std::span<const double> evalues,
                                  double alpha) {
  GDPE_RETURN_IF_ERROR(ValidateInput(evalues, alpha, false));
  const double m = static_cast<double>(evalues.size());
  return Run(evalues, [&](double e, size_t k) {
    return e >= m / (alpha * static_cast<double>(k));
  });
}

absl::StatusOr<TestingReport> EbhLog(std::span<const double> log_evalues,
                                     double alpha) {
  GDPE_RETURN_IF_ERROR(ValidateInput(log_evalues, alpha, true));
  const double log_m_over_alpha =
      std::log(static_cast<double>(log_evalues.size())) - std::log(alpha);
  return Run(log_evalues, [&](double l, size_t k) {
    return l >= log_m_over_alpha - std::log(static_cast<double>(k));
  });
}

FdpTp FdpAndTp(const TestingReport& report, const GroundTruth& truth) {
  std::vector<size_t> signals = truth.signal_indices;
  std::sort(signals.begin(), signals.end());
  size_t true_positives = 0;
  for (size_t i : report.rejected) {
    if (std::binary_search(signals.begin(), signals.end(), i)) ++true_positives;
  }
  const size_t r = report.rejected.size();
  FdpTp out;
  out.fdp = static_cast<double>(r - true_positives) /
            static_cast<double>(std::max<size_t>(1, r));
  out.tp_fraction = signals.empty() ? 0.0
                                    : static_cast<double>(true_positives) /
                                          static_cast<double>(signals.size());
  return out;
}

void Score(TestingReport& report, const GroundTruth& truth) {
  const FdpTp f = FdpAndTp(report, truth);
  report.fdr = f.fdp;
  report.ap = f.tp_fraction;
}

}  // namespace gdpe
