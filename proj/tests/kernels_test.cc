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

#include "gdpe/kernels.h"

#include <cmath>
#include <numeric>
#include <vector>

#include "gmock/gmock.h"
#include "gtest/gtest.h"

namespace gdpe::kernels {
namespace {

TEST(KernelsTest, ShiftMatchesSerialReference) {
  std::vector<double> logs(1000);
  for (size_t i = 0; i < logs.size(); ++i) logs[i] = std::sin(i) * 3;
  logs[5] = -INFINITY;
  const StreamKey key = RngSeed(1, {2}).key();
  const auto parallel = ShiftByLogNormalNoise(logs, 0.3, 1.7, key);
  const auto reference = serial::ShiftByLogNormalNoise(logs, 0.3, 1.7, key);
  EXPECT_EQ(parallel, reference);
  EXPECT_EQ(parallel[5], -INFINITY);
}

TEST(KernelsTest, ArgmaxMatchesSerialReference) {
  std::vector<double> logs(5000);
  for (size_t i = 0; i < logs.size(); ++i) logs[i] = std::cos(i);
  std::vector<size_t> candidates;
  for (size_t i = 0; i < logs.size(); i += 3) candidates.push_back(i);
  for (uint64_t r = 0; r < 20; ++r) {
    const StreamKey key = RngSeed(r).key();
    const ArgmaxResult a = PerturbedArgmax(logs, candidates, 0.5, key);
    const ArgmaxResult b = serial::PerturbedArgmax(logs, candidates, 0.5, key);
    EXPECT_EQ(a.index, b.index);
    EXPECT_EQ(a.score, b.score);
    EXPECT_EQ(a.index % 3, 0u);
  }
}

TEST(KernelsTest, ArgmaxAllMinusInfinityPicksLowestIndex) {
  const std::vector<double> logs(10, -INFINITY);
  const std::vector<size_t> candidates = {7, 3, 9};
  EXPECT_EQ(PerturbedArgmax(logs, candidates, 1.0, StreamKey(1)).index, 3u);
  EXPECT_EQ(serial::PerturbedArgmax(logs, candidates, 1.0, StreamKey(1)).index,
            3u);
}

TEST(KernelsTest, MaxUniformMatchesSerialReference) {
  for (uint64_t n : {1u, 2u, 3u, 1000u, 100001u}) {
    const StreamKey key = RngSeed(n).key();
    EXPECT_EQ(MaxUniform(key, n), serial::MaxUniform(key, n)) << n;
  }
}

TEST(KernelsTest, MapTrialsIsOrdered) {
  const auto f = [](size_t t) { return static_cast<double>(t * t); };
  const auto a = MapTrials<double>(1000, f);
  const auto b = serial::MapTrials<double>(1000, f);
  EXPECT_EQ(a, b);
  EXPECT_EQ(a[31], 961.0);
}

}  // namespace
}  // namespace gdpe::kernels
