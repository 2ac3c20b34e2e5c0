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

// e-BH: reject the k* largest e-values, k* = max{k : E_(k) >= m / (alpha k)}.

#ifndef GDPE_EBH_H_
#define GDPE_EBH_H_

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "absl/status/statusor.h"

namespace gdpe {

struct TestingReport {
  size_t k_star = 0;
  // Ordered by descending e-value, ties by ascending index.
  std::vector<size_t> rejected;
  std::optional<double> fdr;
  std::optional<double> ap;
};

struct GroundTruth {
  std::vector<size_t> signal_indices;

  size_t m1() const { return signal_indices.size(); }
};

struct FdpTp {
  double fdp = 0.0;
  double tp_fraction = 0.0;
};

absl::StatusOr<TestingReport> Ebh(std::span<const double> evalues,
                                  double alpha);

// The same procedure on log e-values; E_(k) >= m / (alpha k) is evaluated as
// L_(k) >= log m - log alpha - log k.
absl::StatusOr<TestingReport> EbhLog(std::span<const double> log_evalues,
                                     double alpha);

// Indices sorted by descending value, ties by ascending index.
std::vector<size_t> DescendingOrder(std::span<const double> values);

FdpTp FdpAndTp(const TestingReport& report, const GroundTruth& truth);

// Fills report.fdr and report.ap with the realized values against truth.
void Score(TestingReport& report, const GroundTruth& truth);

}  // namespace gdpe

#endif  // GDPE_EBH_H_
