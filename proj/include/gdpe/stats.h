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

// Small summary statistics shared by the Monte-Carlo harnesses and tests.

#ifndef GDPE_STATS_H_
#define GDPE_STATS_H_

#include <cstddef>
#include <functional>
#include <span>

namespace gdpe {

struct MeanSe {
  double mean = 0.0;
  // Standard error of the mean from the unbiased sample variance.
  double se = 0.0;
};

MeanSe SampleMeanSe(std::span<const double> xs);

// sqrt(p (1 - p) / n).
double ProportionSe(double p, size_t n);

struct KsResult {
  double statistic = 0.0;
  double p_value = 1.0;
};

// One-sample Kolmogorov-Smirnov test against a continuous CDF. The p-value
// uses the asymptotic Kolmogorov law with Stephens' small-sample correction.
KsResult KsTest(std::span<const double> sample,
                const std::function<double(double)>& cdf);

// P(K > x) for the Kolmogorov distribution.
double KolmogorovSurvival(double x);

}  // namespace gdpe

#endif  // GDPE_STATS_H_
