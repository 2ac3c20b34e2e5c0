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

#include "gdpe/normal.h"

#include <cmath>
#include <limits>

#include "absl/status/status.h"
#include "absl/strings/str_cat.h"

namespace gdpe {
namespace {

constexpr double kInvSqrt2 = 0.70710678118654752440;
constexpr double kLogSqrt2Pi = 0.91893853320467274178;
// Below this point MillsRatio switches to the continued fraction.
constexpr double kMillsTailStart = -8.0;
constexpr int kMillsFractionDepth = 120;
constexpr int kMaxBisectionSteps = 200;

// 1/R(x) for x > 0, where R(x) = (1 - Phi(x)) / phi(x):
//   1/R(x) = x + 1/(x + 2/(x + 3/(x + ...))).
double InverseUpperMillsRatio(double x) {
  double t = x;
  for (int k = kMillsFractionDepth; k >= 1; --k) {
    t = x + k / t;
  }
  return t;
}

}  // namespace

double NormalCdf(double z) { return 0.5 * std::erfc(-z * kInvSqrt2); }

double NormalPdf(double z) { return kInvSqrt2Pi * std::exp(-0.5 * z * z); }

double NormalLogPdf(double z) { return -0.5 * z * z - kLogSqrt2Pi; }

double NormalLogCdf(double z) {
  if (std::isnan(z)) return z;
  if (z < kMillsTailStart) {
    // log Phi(z) = log phi(z) - log h(z).
    return NormalLogPdf(z) - std::log(MillsRatio(z));
  }
  if (z < 0.0) return std::log(NormalCdf(z));
  return std::log1p(-0.5 * std::erfc(z * kInvSqrt2));
}

double MillsRatio(double z) {
  if (std::isnan(z)) return z;
  if (z < kMillsTailStart) {
    if (std::isinf(z)) return std::numeric_limits<double>::infinity();
    return InverseUpperMillsRatio(-z);
  }
  return NormalPdf(z) / NormalCdf(z);
}

namespace internal {

double NormalQuantileRational(double p) {
  const double q = p - 0.5;
  if (std::fabs(q) <= 0.425) {
    const double r = 0.180625 - q * q;
    return q *
           (((((((r * 2509.0809287301226727 + 33430.575583588128105) * r +
                 67265.770927008700853) * r +
                45921.953931549871457) * r +
               13731.693765509461125) * r +
              1971.5909503065514427) * r +
             133.14166789178437745) * r +
            3.387132872796366608) /
           (((((((r * 5226.495278852545925 + 28729.085735721942674) * r +
                 39307.89580009271061) * r +
                21213.794301586595867) * r +
               5394.1960214247511077) * r +
              687.1870074920579083) * r +
             42.313330701600911252) * r +
            1.0);
  }
  double r = q < 0.0 ? p : 1.0 - p;
  r = std::sqrt(-std::log(r));
  double value;
  if (r <= 5.0) {
    r -= 1.6;
    value = (((((((r * 7.7454501427834140764e-4 + 0.0227238449892691845833) *
                      r +
                  0.24178072517745061177) * r +
                 1.27045825245236838258) * r +
                3.64784832476320460504) * r +
               5.7694972214606914055) * r +
              4.6303378461565452959) * r +
             1.42343711074968357734) /
            (((((((r * 1.05075007164441684324e-9 + 5.475938084995344946e-4) *
                      r +
                  0.0151986665636164571966) * r +
                 0.14810397642748007459) * r +
                0.68976733498510000455) * r +
               1.6763848301838038494) * r +
              2.05319162663775882187) * r +
             1.0);
  } else {
    r -= 5.0;
    value = (((((((r * 2.01033439929228813265e-7 + 2.71155556874348757815e-5) *
                      r +
                  0.0012426609473880784386) * r +
                 0.026532189526576123093) * r +
                0.29656057182850489123) * r +
               1.7848265399172913358) * r +
              5.4637849111641143699) * r +
             6.6579046435011037772) /
            (((((((r * 2.04426310338993978564e-15 + 1.4215117583164458887e-7) *
                      r +
                  1.8463183175100546818e-5) * r +
                 7.868691311456132591e-4) * r +
                0.0148753612908506148525) * r +
               0.13692988092273580531) * r +
              0.59983220655588793769) * r +
             1.0);
  }
  return q < 0.0 ? -value : value;
}

double GdpTradeoffUnchecked(double alpha, double mu) {
  if (alpha <= 0.0) return 1.0;
  if (alpha >= 1.0) return 0.0;
  // Phi^{-1}(1 - alpha) = -Phi^{-1}(alpha), which avoids rounding 1 - alpha.
  return NormalCdf(-NormalQuantile(alpha).value() - mu);
}

}  // namespace internal

absl::StatusOr<double> NormalQuantile(double p) {
  if (!(p > 0.0 && p < 1.0)) {
    return absl::InvalidArgumentError(
        absl::StrCat("NormalQuantile: p must lie in (0, 1), got ", p));
  }
  // 1 - p is exact for p >= 0.5, so the upper half reflects losslessly.
  if (p > 0.5) return -NormalQuantile(1.0 - p).value();
  double x = internal::NormalQuantileRational(p);
  const double density = NormalPdf(x);
  if (density > 0.0) {
    x -= (NormalCdf(x) - p) / density;
  }
  return x;
}

absl::StatusOr<double> GdpTradeoff(double alpha, double mu) {
  if (!(alpha >= 0.0 && alpha <= 1.0)) {
    return absl::InvalidArgumentError(
        absl::StrCat("GdpTradeoff: alpha must lie in [0, 1], got ", alpha));
  }
  if (!(mu >= 0.0) || std::isinf(mu)) {
    return absl::InvalidArgumentError(
        absl::StrCat("GdpTradeoff: mu must be finite and >= 0, got ", mu));
  }
  return internal::GdpTradeoffUnchecked(alpha, mu);
}

absl::StatusOr<double> SolveZStar(double sigma) {
  if (!(sigma > 0.0) || std::isinf(sigma)) {
    return absl::InvalidArgumentError(
        absl::StrCat("SolveZStar: sigma must be finite and > 0, got ", sigma));
  }
  // h is strictly decreasing, so f(z) = h(z) - sigma has a single sign change.
  auto excess = [sigma](double z) { return MillsRatio(z) - sigma; };
  double lo = 0.0;
  double hi = 0.0;
  if (excess(0.0) > 0.0) {
    hi = 1.0;
    while (excess(hi) > 0.0) {
      lo = hi;
      hi *= 2.0;
    }
  } else {
    lo = -1.0;
    while (excess(lo) < 0.0) {
      hi = lo;
      lo *= 2.0;
    }
  }
  for (int step = 0; step < kMaxBisectionSteps; ++step) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    const double f = excess(mid);
    if (f == 0.0) return mid;
    if (f > 0.0) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return std::fabs(excess(lo)) < std::fabs(excess(hi)) ? lo : hi;
}

}  // namespace gdpe
