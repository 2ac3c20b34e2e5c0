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

#include "gdpe/stats.h"

#include <cmath>
#include <vector>

#include "gdpe/normal.h"
#include "gdpe/rng.h"
#include "gmock/gmock.h"
#include "gtest/gtest.h"

namespace gdpe {
namespace {

TEST(StatsTest, MeanSe) {
  const std::vector<double> xs = {1, 2, 3, 4};
  const MeanSe ms = SampleMeanSe(xs);
  EXPECT_EQ(ms.mean, 2.5);
  EXPECT_NEAR(ms.se, std::sqrt(5.0 / 3 / 4), 1e-15);
  EXPECT_EQ(SampleMeanSe(std::vector<double>{7}).se, 0.0);
  EXPECT_NEAR(ProportionSe(0.5, 100), 0.05, 1e-15);
  EXPECT_EQ(ProportionSe(0.0, 100), 0.0);
}

TEST(StatsTest, KolmogorovSurvivalKnownPoints) {
  EXPECT_NEAR(KolmogorovSurvival(1.3580986393), 0.05, 1e-6);
  EXPECT_NEAR(KolmogorovSurvival(1.6276), 0.01, 1e-4);
  EXPECT_EQ(KolmogorovSurvival(0.0), 1.0);
}

TEST(StatsTest, KsAcceptsTrueLawRejectsShifted) {
  std::vector<double> z(5000);
  Substream s(RngSeed(1));
  for (double& x : z) x = s.Normal();
  EXPECT_GT(KsTest(z, NormalCdf).p_value, 0.01);
  EXPECT_LT(KsTest(z, [](double x) { return NormalCdf(x - 0.2); }).p_value,
            1e-6);
}

}  // namespace
}  // namespace gdpe
