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

#include "gdpe/calibration.h"

#include <cmath>
#include <vector>

#include "boost/math/special_functions/erf.hpp"
#include "boost/multiprecision/cpp_bin_float.hpp"
#include "gdpe/normal.h"
#include "gdpe/rng.h"
#include "gdpe/stats.h"
#include "gmock/gmock.h"
#include "gtest/gtest.h"

namespace gdpe {
namespace {

using Big = boost::multiprecision::cpp_bin_float_50;

Big BigCdf(const Big& z) {
  return Big(0.5) * boost::math::erfc(-z / boost::multiprecision::sqrt(Big(2)));
}

Big BigPdf(const Big& z) {
  return boost::multiprecision::exp(-z * z / 2) /
         boost::multiprecision::sqrt(2 * boost::math::constants::pi<Big>());
}

// Threshold from first principles at 50 digits: root of pdf/cdf = sigma by
// bisection, then the two-branch closed form.
double OracleCStar(double alpha, double sigma) {
  Big lo = -60, hi = 40;
  for (int i = 0; i < 220; ++i) {
    const Big mid = (lo + hi) / 2;
    if (BigPdf(mid) / BigCdf(mid) > sigma) lo = mid; else hi = mid;
  }
  const Big z = (lo + hi) / 2;
  const Big s(sigma);
  if (Big(alpha) <= BigCdf(z)) {
    return static_cast<double>(BigCdf(z) / alpha *
                               boost::multiprecision::exp(-s * s / 2 - s * z));
  }
  // Quantile branch: Phi^{-1}(alpha) by bisection.
  Big qlo = -40, qhi = 40;
  for (int i = 0; i < 220; ++i) {
    const Big mid = (qlo + qhi) / 2;
    if (BigCdf(mid) < alpha) qlo = mid; else qhi = mid;
  }
  return static_cast<double>(
      boost::multiprecision::exp(-s * s / 2 - s * (qlo + qhi) / 2));
}

PrivateEValue WithValue(double v, const CalibrationResult& cal) {
  PrivateEValue e;
  e.value = v;
  e.log_value = std::log(v);
  e.budget = cal.budget;
  e.sensitivity = cal.sensitivity;
  return e;
}

TEST(CalibrateTest, QuantileBranchExample) {
  const CalibrationResult cal =
      *Calibrate(0.5, Sensitivity{0.7}, PrivacyBudget{0.7});
  EXPECT_NEAR(cal.z_star, -0.303, 1e-3);
  EXPECT_LT(NormalCdf(cal.z_star), 0.5);
  EXPECT_NEAR(NormalCdf(cal.z_star), 0.381, 1e-3);
  EXPECT_EQ(cal.branch, ThresholdBranch::kQuantileLike);
  EXPECT_NEAR(cal.c_star, std::exp(-0.5), 1e-15);
  EXPECT_NEAR(cal.c_star, 0.60653, 1e-5);
}

TEST(CalibrateTest, MarkovBranchExample) {
  const CalibrationResult cal =
      *Calibrate(0.05, Sensitivity{0.025}, PrivacyBudget{0.25});
  EXPECT_NEAR(cal.z_star, 1.6917, 1e-3);
  EXPECT_NEAR(NormalCdf(cal.z_star), 0.9547, 1e-4);
  EXPECT_EQ(cal.branch, ThresholdBranch::kMarkovLike);
  EXPECT_NEAR(cal.c_star, OracleCStar(0.05, 0.1), 1e-11);
  EXPECT_NEAR(cal.c_star, 16.04, 5e-3);
  EXPECT_LT(cal.c_star, 20.0);
}

TEST(CalibrateTest, MatchesOracleAcrossRegimes) {
  for (double alpha : {0.01, 0.05, 0.3, 0.7}) {
    for (double sigma : {1e-4, 0.02, 0.4, 1.0, 3.0}) {
      const CalibrationResult cal =
          *Calibrate(alpha, Sensitivity{sigma}, PrivacyBudget{1.0});
      const double oracle = OracleCStar(alpha, sigma);
      EXPECT_NEAR(cal.c_star, oracle, 1e-10 * oracle) << alpha << " " << sigma;
      EXPECT_EQ(cal.branch == ThresholdBranch::kMarkovLike,
                alpha <= NormalCdf(cal.z_star));
      EXPECT_GT(cal.c_star, 0.0);
      EXPECT_LT(cal.c_star, 1.0 / alpha);
    }
  }
}

TEST(CalibrateTest, ApproachesMarkovThresholdAsNoiseVanishes) {
  double prev = 0.0;
  for (double sigma : {1e-1, 1e-2, 1e-3, 1e-5, 1e-8}) {
    const double c = Calibrate(0.05, Sensitivity{sigma}, PrivacyBudget{1})->c_star;
    EXPECT_GT(c, prev);
    prev = c;
  }
  EXPECT_NEAR(prev, 20.0, 1e-5);
}

TEST(CalibrateTest, LogSpaceSurvivesHugeNoise) {
  const CalibrationResult cal =
      *Calibrate(0.05, Sensitivity{10.0}, PrivacyBudget{0.25});
  EXPECT_TRUE(std::isfinite(cal.log_c_star));
  EXPECT_LT(cal.log_c_star, -700.0);
}

TEST(CalibrateTest, DomainErrors) {
  EXPECT_FALSE(Calibrate(0.0, Sensitivity{1}, PrivacyBudget{1}).ok());
  EXPECT_FALSE(Calibrate(1.0, Sensitivity{1}, PrivacyBudget{1}).ok());
  EXPECT_FALSE(Calibrate(0.05, Sensitivity{0}, PrivacyBudget{1}).ok());
  EXPECT_FALSE(Calibrate(0.05, Sensitivity{1}, PrivacyBudget{0}).ok());
}

TEST(RejectTest, MarkovExamples) {
  PrivateEValue e;
  e.value = 20.0;
  EXPECT_TRUE(MarkovReject(e, 0.05));
  e.value = 19.999;
  EXPECT_FALSE(MarkovReject(e, 0.05));
  e.value = 0.0;
  EXPECT_FALSE(MarkovReject(e, 0.05));
}

TEST(RejectTest, CalibratedRegionContainsMarkovRegion) {
  const CalibrationResult cal =
      *Calibrate(0.05, Sensitivity{0.025}, PrivacyBudget{0.25});
  const double mid = 0.5 * (cal.c_star + 20.0);
  EXPECT_TRUE(*CalibratedReject(WithValue(mid, cal), cal));
  EXPECT_FALSE(MarkovReject(WithValue(mid, cal), 0.05));
  EXPECT_TRUE(*CalibratedReject(WithValue(cal.c_star, cal), cal));
  EXPECT_TRUE(*CalibratedReject(WithValue(25.0, cal), cal));
  EXPECT_TRUE(MarkovReject(WithValue(25.0, cal), 0.05));
  EXPECT_FALSE(*CalibratedReject(WithValue(0.9 * cal.c_star, cal), cal));
  EXPECT_FALSE(MarkovReject(WithValue(0.9 * cal.c_star, cal), 0.05));
}

TEST(RejectTest, MismatchedBudgetIsAnError) {
  const CalibrationResult cal =
      *Calibrate(0.05, Sensitivity{0.025}, PrivacyBudget{0.25});
  PrivateEValue e = WithValue(30.0, cal);
  e.budget.mu = 0.5;
  EXPECT_FALSE(CalibratedReject(e, cal).ok());
  e = WithValue(30.0, cal);
  e.sensitivity.delta = 0.03;
  EXPECT_FALSE(CalibratedReject(e, cal).ok());
}

struct TypeOneCase {
  double alpha, delta, mu;
};

// Worst-case nulls: two-point E at x* = Phi(z*)/alpha (mass 1/x*) on the
// Markov branch, E == 1 on the quantile branch. Both hit alpha exactly.
TEST(CalibrateTest, WorstCaseNullIsSharp) {
  for (const TypeOneCase& c :
       {TypeOneCase{0.05, 0.0025, 0.25}, TypeOneCase{0.05, 0.25, 0.25},
        TypeOneCase{0.2, 1.0, 1.0}, TypeOneCase{0.5, 1.0, 1.0},
        TypeOneCase{0.7, 2.0, 1.0}}) {
    const CalibrationResult cal =
        *Calibrate(c.alpha, Sensitivity{c.delta}, PrivacyBudget{c.mu});
    const NoiseSpec noise = *CanonicalNoise(cal.sensitivity, cal.budget);
    const bool markov = cal.branch == ThresholdBranch::kMarkovLike;
    const double log_x =
        markov ? NormalLogCdf(cal.z_star) - std::log(c.alpha) : 0.0;
    const double mass = std::exp(-log_x);
    const size_t n = 100000;
    size_t hits = 0;
    for (size_t i = 0; i < n; ++i) {
      Substream s(RngSeed(1234, {i}));
      const bool at_x = s.Uniform() < mass;
      const double xi = noise.tau + noise.sd() * s.Normal();
      hits += at_x && CalibratedRejectLog(log_x - xi, cal);
    }
    const double p = static_cast<double>(hits) / n;
    const double se = ProportionSe(c.alpha, n);
    EXPECT_LE(p, c.alpha + 3 * se) << c.alpha << " " << c.delta;
    EXPECT_GE(p, c.alpha - 3 * se) << c.alpha << " " << c.delta;
  }
}

TEST(PowerTest, ImprovementShape) {
  const CalibrationResult cal =
      *Calibrate(0.05, Sensitivity{0.025}, PrivacyBudget{0.25});
  const PowerProfile p = ComputePowerProfile(cal);
  EXPECT_NEAR(*PowerImprovement(1e-300, cal), 0.0, 1e-15);
  EXPECT_NEAR(*PowerImprovement(1e300, cal), 0.0, 1e-15);
  EXPECT_NEAR(*PowerImprovement(p.x_opt, cal), p.g_max, 1e-12);
  for (double r : {2.0, 10.0}) {
    EXPECT_NEAR(*PowerImprovement(p.x_opt * r, cal),
                *PowerImprovement(p.x_opt / r, cal), 1e-12);
    EXPECT_LT(*PowerImprovement(p.x_opt * r, cal), p.g_max);
  }
  for (double x = 0.5; x < 100; x *= 1.3) {
    const double g = *PowerImprovement(x, cal);
    EXPECT_GE(g, 0.0);
    EXPECT_LT(g, 1.0);
    EXPECT_LE(g, p.g_max + 1e-15);
  }
  EXPECT_FALSE(PowerImprovement(0.0, cal).ok());
  EXPECT_FALSE(PowerImprovement(-1.0, cal).ok());
}

TEST(PowerTest, ProfileExamplesAndLimits) {
  const PowerProfile p = ComputePowerProfile(
      *Calibrate(0.05, Sensitivity{0.025}, PrivacyBudget{0.25}));
  // Chained oracle: G_max = 2 Phi((log 20 - log c*) / (2 sigma)) - 1.
  const double c = OracleCStar(0.05, 0.1);
  EXPECT_NEAR(p.g_max, 2 * NormalCdf((std::log(20.0) - std::log(c)) / 0.2) - 1,
              1e-11);
  EXPECT_NEAR(p.g_max, 0.7294, 1e-3);
  double prev_g = 0.0, prev_s = 0.0;
  for (double sigma : {1e-1, 1e-2, 1e-4, 1e-8, 1e-16, 1e-32}) {
    const CalibrationResult cal =
        *Calibrate(0.05, Sensitivity{sigma}, PrivacyBudget{1});
    const PowerProfile q = ComputePowerProfile(cal);
    EXPECT_GT(q.g_max, prev_g);
    // Both probabilities round to 1 once Phi(z*) does.
    if (NormalCdf(cal.z_star) < 1.0) {
      EXPECT_GT(q.shift_neg_prob, prev_s);
      EXPECT_GT(q.shift_neg_prob, NormalCdf(cal.z_star));
    } else {
      EXPECT_EQ(q.shift_neg_prob, 1.0);
    }
    prev_g = q.g_max;
    prev_s = q.shift_neg_prob;
  }
  EXPECT_GT(prev_g, 0.999);
  EXPECT_GT(prev_s, 0.999);
}

TEST(PowerTest, BenefitBoundedByGMax) {
  const double alpha = 0.05, lambda = std::sqrt(std::log(1 / alpha));
  for (double delta : {0.01, 0.1, 0.5}) {
    const CalibrationResult cal =
        *Calibrate(alpha, Sensitivity{delta}, PrivacyBudget{0.25});
    const NoiseSpec noise = *CanonicalNoise(cal.sensitivity, cal.budget);
    const double g_max = ComputePowerProfile(cal).g_max;
    const size_t n = 100000;
    size_t hits = 0;
    for (size_t i = 0; i < n; ++i) {
      Substream s(RngSeed(55, {i}));
      const double log_e = lambda * (lambda + s.Normal()) - lambda * lambda / 2;
      const double y = log_e - (noise.tau + noise.sd() * s.Normal());
      hits += y >= cal.log_c_star && y < -std::log(alpha);
    }
    const double p = static_cast<double>(hits) / n;
    EXPECT_LE(p, g_max + 3 * ProportionSe(p, n)) << delta;
  }
}

TEST(PowerTest, BoundaryShiftIdentity) {
  for (double sigma : {0.05, 0.5, 2.0}) {
    const CalibrationResult cal =
        *Calibrate(0.05, Sensitivity{sigma}, PrivacyBudget{1});
    const double expected = ComputePowerProfile(cal).shift_neg_prob;
    EXPECT_NEAR(expected,
                NormalCdf(cal.z_star - NormalLogCdf(cal.z_star) / sigma), 1e-15);
    const double mean = NormalLogCdf(cal.z_star) - sigma * cal.z_star;
    const size_t n = 100000;
    size_t neg = 0;
    for (size_t i = 0; i < n; ++i) {
      neg += mean + sigma * Substream(RngSeed(66, {i})).Normal() < 0.0;
    }
    const double p = static_cast<double>(neg) / n;
    EXPECT_LE(std::abs(p - expected), 3 * ProportionSe(expected, n)) << sigma;
  }
}

TEST(RateTest, Examples) {
  const Sensitivity d{1e-3};
  const PrivacyBudget mu{0.25};
  EXPECT_NEAR(*CalibrationBenefitRate(d, mu, 0.05, 1.0),
              1e-3 * std::sqrt(2 * std::log(1000.0)) / (0.05 * 0.25), 1e-15);
  EXPECT_NEAR(*CalibrationBenefitRate(d, mu, 0.05, 1.0), 0.297354, 1e-6);
  EXPECT_NEAR(*NoiseCostRate(d, mu, 0.05, 1.0),
              1e-6 / (2 * M_E * 0.05 * 0.0625 * std::log(1000.0)), 1e-20);
  EXPECT_NEAR(*NoiseCostRate(d, mu, 0.05, 1.0), 8.521e-6, 1e-9);
  EXPECT_DOUBLE_EQ(*CalibrationBenefitRate(d, mu, 0.05, 2.0),
                   2 * *CalibrationBenefitRate(d, mu, 0.05, 1.0));
  EXPECT_DOUBLE_EQ(*NoiseCostRate(d, mu, 0.05, 2.0),
                   2 * *NoiseCostRate(d, mu, 0.05, 1.0));
  EXPECT_FALSE(CalibrationBenefitRate(Sensitivity{1.0}, mu, 0.05, 1).ok());
  EXPECT_FALSE(NoiseCostRate(Sensitivity{1.5}, mu, 0.05, 1).ok());
  EXPECT_FALSE(NoiseCostRate(Sensitivity{0.0}, mu, 0.05, 1).ok());
  double prev_b = INFINITY, prev_ratio = INFINITY;
  for (double delta : {1e-2, 1e-4, 1e-8, 1e-16}) {
    const double b = *CalibrationBenefitRate(Sensitivity{delta}, mu, 0.05, 1);
    const double c = *NoiseCostRate(Sensitivity{delta}, mu, 0.05, 1);
    EXPECT_LT(b, prev_b);
    EXPECT_LT(c / b, prev_ratio);
    prev_b = b;
    prev_ratio = c / b;
  }
  EXPECT_LT(prev_ratio, 1e-15);
}

// Simulated benefit and noise-induced discovery against the leading-order
// rate for E = exp(lambda Z - lambda^2 / 2), Z ~ N(lambda, 1).
TEST(RateTest, EmpiricalBenefitWithinBracketOfRate) {
  const double alpha = 0.05, lambda = std::sqrt(std::log(1 / alpha));
  const Sensitivity d{1e-3};
  const PrivacyBudget mu{0.25};
  const CalibrationResult cal = *Calibrate(alpha, d, mu);
  const NoiseSpec noise = *CanonicalNoise(d, mu);
  const double u = (std::log(1 / alpha) - lambda * lambda / 2) / lambda;
  const double density = NormalPdf(u) * alpha / lambda;
  const double rate = *CalibrationBenefitRate(d, mu, alpha, density);
  const size_t n = 1000000;
  size_t benefit = 0, discovery = 0;
  for (size_t i = 0; i < n; ++i) {
    Substream s(RngSeed(77, {i}));
    const double log_e = lambda * (lambda + s.Normal()) - lambda * lambda / 2;
    const double y = log_e - (noise.tau + noise.sd() * s.Normal());
    benefit += y >= cal.log_c_star && y < -std::log(alpha);
    discovery += y >= cal.log_c_star && log_e < -std::log(alpha);
  }
  const double b = static_cast<double>(benefit) / n;
  const double g = static_cast<double>(discovery) / n;
  EXPECT_GE(b / rate, 0.5);
  EXPECT_LE(b / rate, 2.0);
  EXPECT_GE(g / rate, 0.5);
  EXPECT_LE(g / rate, 2.0);
}

}  // namespace
}  // namespace gdpe
