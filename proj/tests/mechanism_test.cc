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

#include "gdpe/mechanism.h"

#include <cmath>
#include <vector>

#include "gdpe/normal.h"
#include "gdpe/rng.h"
#include "gdpe/stats.h"
#include "gmock/gmock.h"
#include "gtest/gtest.h"

namespace gdpe {
namespace {

std::vector<double> NoiseFactors(Sensitivity d, PrivacyBudget mu, size_t n,
                                 uint64_t root) {
  std::vector<double> out(n);
  for (size_t i = 0; i < n; ++i) {
    out[i] = Privatize(1.0, d, mu, RngSeed(root, {i}))->value;
  }
  return out;
}

TEST(NoiseSpecTest, Examples) {
  NoiseSpec a = *CanonicalNoise(Sensitivity{1}, PrivacyBudget{1});
  EXPECT_EQ(a.tau, 0.5);
  EXPECT_EQ(a.sigma2, 1.0);
  NoiseSpec b = *CanonicalNoise(Sensitivity{0}, PrivacyBudget{0.25});
  EXPECT_EQ(b.tau, 0.0);
  EXPECT_EQ(b.sigma2, 0.0);
  NoiseSpec c = *CanonicalNoise(Sensitivity{5e-3}, PrivacyBudget{0.25});
  EXPECT_NEAR(c.tau, 2e-4, 1e-18);
  EXPECT_NEAR(c.sigma2, 4e-4, 1e-18);
  EXPECT_NEAR(std::exp(-c.tau + c.sigma2 / 2), 1.0, 1e-16);
}

TEST(NoiseSpecTest, DomainErrors) {
  EXPECT_FALSE(CanonicalNoise(Sensitivity{1}, PrivacyBudget{0}).ok());
  EXPECT_FALSE(CanonicalNoise(Sensitivity{1}, PrivacyBudget{-1}).ok());
  EXPECT_FALSE(CanonicalNoise(Sensitivity{-1}, PrivacyBudget{1}).ok());
  EXPECT_FALSE(CanonicalNoise(Sensitivity{std::nan("")}, PrivacyBudget{1}).ok());
}

TEST(PrivatizeTest, ZeroAndDegenerateCases) {
  EXPECT_EQ(Privatize(0.0, Sensitivity{2}, PrivacyBudget{0.3}, RngSeed(1))->value,
            0.0);
  const PrivateEValue v =
      *Privatize(3.25, Sensitivity{0}, PrivacyBudget{0.3}, RngSeed(1));
  EXPECT_EQ(v.value, 3.25);
  EXPECT_FALSE(Privatize(-1.0, Sensitivity{1}, PrivacyBudget{1}, RngSeed(1)).ok());
}

TEST(PrivatizeTest, DeterministicAndRecordsProvenance) {
  const RngSeed seed(77, {3, 1});
  const PrivateEValue a = *Privatize(2.0, Sensitivity{1}, PrivacyBudget{1}, seed);
  const PrivateEValue b = *Privatize(2.0, Sensitivity{1}, PrivacyBudget{1}, seed);
  EXPECT_EQ(a.value, b.value);
  EXPECT_EQ(a.log_value, b.log_value);
  EXPECT_EQ(a.seed_root, 77u);
  EXPECT_THAT(a.seed_path, ::testing::ElementsAre(3, 1));
  EXPECT_EQ(a.mechanism, Mechanism::kCanonical);
  // Replay the draw by hand.
  Substream s(seed);
  const double xi = 0.5 + s.Normal();
  EXPECT_DOUBLE_EQ(a.value, 2.0 * std::exp(-xi));
}

TEST(PrivatizeTest, UnitMultiplicativeMean) {
  for (auto [delta, mu] : {std::pair{1.0, 1.0}, std::pair{0.005, 0.25},
                           std::pair{2.0, 0.5}}) {
    const std::vector<double> f =
        NoiseFactors(Sensitivity{delta}, PrivacyBudget{mu}, 200000, 5);
    const MeanSe ms = SampleMeanSe(f);
    EXPECT_LE(std::abs(ms.mean - 1.0), 3 * ms.se) << delta << " " << mu;
  }
}

TEST(PrivatizeTest, ValidityPreservedForNullEValues) {
  const size_t n = 200000;
  std::vector<double> out(n);
  for (size_t i = 0; i < n; ++i) {
    Substream data(RngSeed(8, {i}));
    const double e = std::exp(data.Normal() - 0.5);
    out[i] = Privatize(e, Sensitivity{0.7}, PrivacyBudget{0.4}, RngSeed(9, {i}))
                 ->value;
  }
  const MeanSe ms = SampleMeanSe(out);
  EXPECT_LE(ms.mean, 1.0 + 3 * ms.se);
}

// For log E(D') = log E(D) + delta, the rejection test "log output >= t"
// traces out G_mu exactly.
TEST(PrivatizeTest, WorstCasePairExhaustsTradeoff) {
  const Sensitivity d{0.8};
  const PrivacyBudget mu{0.6};
  const NoiseSpec noise = *CanonicalNoise(d, mu);
  const size_t n = 100000;
  std::vector<double> y0(n), y1(n);
  for (size_t i = 0; i < n; ++i) {
    y0[i] = Privatize(1.0, d, mu, RngSeed(21, {i}))->log_value;
    y1[i] = Privatize(std::exp(d.delta), d, mu, RngSeed(22, {i}))->log_value;
  }
  for (double alpha : {0.05, 0.1, 0.25, 0.5}) {
    const double t = -noise.tau - noise.sd() * *NormalQuantile(alpha);
    size_t false_pos = 0, misses = 0;
    for (size_t i = 0; i < n; ++i) {
      false_pos += y0[i] >= t;
      misses += y1[i] < t;
    }
    const double a_hat = static_cast<double>(false_pos) / n;
    const double b_hat = static_cast<double>(misses) / n;
    const double g = *GdpTradeoff(alpha, mu.mu);
    EXPECT_LE(std::abs(a_hat - alpha), 3 * ProportionSe(alpha, n)) << alpha;
    EXPECT_LE(std::abs(b_hat - g), 3 * ProportionSe(g, n)) << alpha;
  }
}

TEST(AllNoisyTest, CoordinateMatchesPrivatizeAtScaledBudget) {
  const std::vector<double> es = {1.0, 0.0, 7.5, 2.0};
  const RngSeed seed(31, {2});
  const auto out =
      *AllNoisyPrivatize(es, Sensitivity{0.3}, PrivacyBudget{1.2}, seed);
  ASSERT_EQ(out.size(), es.size());
  for (size_t i = 0; i < es.size(); ++i) {
    const PrivateEValue ref = *Privatize(es[i], Sensitivity{0.3},
                                         PrivacyBudget{0.6}, seed.Child(i));
    EXPECT_DOUBLE_EQ(out[i].log_value, ref.log_value);
    EXPECT_DOUBLE_EQ(out[i].value, ref.value);
    EXPECT_EQ(out[i].seed_path, ref.seed_path);
    EXPECT_DOUBLE_EQ(out[i].budget.mu, 0.6);
    EXPECT_EQ(out[i].mechanism, Mechanism::kAllNoisy);
  }
  EXPECT_EQ(out[1].value, 0.0);
}

TEST(AllNoisyTest, SingleCoordinateReducesToPrivatize) {
  const std::vector<double> es = {4.0};
  const auto out =
      *AllNoisyPrivatize(es, Sensitivity{1}, PrivacyBudget{1}, RngSeed(4));
  EXPECT_DOUBLE_EQ(
      out[0].value,
      Privatize(4.0, Sensitivity{1}, PrivacyBudget{1}, RngSeed(4).Child(0))->value);
}

TEST(AllNoisyTest, ZerosStayZeroAndErrors) {
  const std::vector<double> zeros(10, 0.0);
  const auto released =
      *AllNoisyPrivatize(zeros, Sensitivity{1}, PrivacyBudget{1}, RngSeed(1));
  for (const auto& v : released) {
    EXPECT_EQ(v.value, 0.0);
    EXPECT_EQ(v.log_value, -INFINITY);
  }
  EXPECT_FALSE(
      AllNoisyPrivatize({}, Sensitivity{1}, PrivacyBudget{1}, RngSeed(1)).ok());
  const std::vector<double> bad = {1.0, -2.0};
  EXPECT_FALSE(
      AllNoisyPrivatize(bad, Sensitivity{1}, PrivacyBudget{1}, RngSeed(1)).ok());
}

TEST(AllNoisyTest, InflatedNoiseHasUnitMean) {
  const size_t m = 100, reps = 2000;
  const std::vector<double> ones(m, 1.0);
  std::vector<double> f;
  f.reserve(m * reps);
  for (size_t r = 0; r < reps; ++r) {
    const auto released = *AllNoisyPrivatize(ones, Sensitivity{0.1},
                                             PrivacyBudget{1}, RngSeed(6, {r}));
    for (const auto& v : released) f.push_back(v.value);
  }
  const MeanSe ms = SampleMeanSe(f);
  EXPECT_LE(std::abs(ms.mean - 1.0), 3 * ms.se);
}

}  // namespace
}  // namespace gdpe
