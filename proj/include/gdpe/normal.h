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

// Standard-normal primitives shared by every other module: the CDF, density,
// quantile, the Mills ratio phi(z)/Phi(z) and its root solver, and the GDP
// trade-off curve G_mu(alpha) = Phi(Phi^{-1}(1 - alpha) - mu).
//
// All functions are pure and reentrant.

#ifndef GDPE_NORMAL_H_
#define GDPE_NORMAL_H_

#include "absl/status/statusor.h"

namespace gdpe {

// 1/sqrt(2*pi).
inline constexpr double kInvSqrt2Pi = 0.39894228040143267794;
// sqrt(2/pi), the value of the Mills ratio phi(z)/Phi(z) at z = 0.
inline constexpr double kSqrt2OverPi = 0.79788456080286535588;

// Phi(z). Saturates to 0 or 1 for extreme arguments; NaN propagates.
double NormalCdf(double z);

// log Phi(z), accurate deep into the lower tail where Phi(z) underflows.
double NormalLogCdf(double z);

// phi(z) = exp(-z^2/2) / sqrt(2*pi).
double NormalPdf(double z);

// log phi(z).
double NormalLogPdf(double z);

// Phi^{-1}(p) for p in (0, 1): Wichura's AS241 rational approximation followed
// by one Newton step against NormalCdf.
absl::StatusOr<double> NormalQuantile(double p);

// h(z) = phi(z) / Phi(z). Uses the continued fraction of the Mills ratio for
// z < -8 where the direct quotient degenerates to 0/0.
double MillsRatio(double z);

// G_mu(alpha). Requires alpha in [0, 1] and mu >= 0.
absl::StatusOr<double> GdpTradeoff(double alpha, double mu);

// The unique z with MillsRatio(z) = sigma, for sigma > 0. Found by geometric
// bracket expansion from z = 0 followed by bisection (at most 200 steps).
absl::StatusOr<double> SolveZStar(double sigma);

namespace internal {

// AS241 without refinement; relative accuracy about 1e-16. Used by the
// samplers, which only ever pass p strictly inside (0, 1).
double NormalQuantileRational(double p);

// GdpTradeoff without argument validation.
double GdpTradeoffUnchecked(double alpha, double mu);

}  // namespace internal
}  // namespace gdpe

#endif  // GDPE_NORMAL_H_
