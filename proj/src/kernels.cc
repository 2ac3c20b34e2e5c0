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

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>

#include "gdpe/normal.h"

namespace gdpe::kernels {
namespace {

bool Better(const ArgmaxResult& a, const ArgmaxResult& b) {
  return a.score > b.score || (a.score == b.score && a.index < b.index);
}

double GumbelDraw(StreamKey key, size_t candidate, double scale) {
  const double u = BitsToOpenUnit(DrawBits(key.Child(candidate), 0));
  return -scale * std::log(-std::log(u));
}

double ShiftedValue(double log_value, double tau, double sd, StreamKey key,
                    size_t i) {
  const double u = BitsToOpenUnit(DrawBits(key.Child(i), 0));
  return log_value - (tau + sd * internal::NormalQuantileRational(u));
}

constexpr ArgmaxResult kWorst{std::numeric_limits<size_t>::max(),
                              -std::numeric_limits<double>::infinity()};

}  // namespace

std::vector<double> ShiftByLogNormalNoise(std::span<const double> log_values,
                                          double tau, double sd,
                                          StreamKey key) {
  std::vector<double> out(log_values.size());
  const auto n = static_cast<int64_t>(log_values.size());
#pragma omp parallel for schedule(static)
  for (int64_t i = 0; i < n; ++i) {
    const auto k = static_cast<size_t>(i);
    out[k] = ShiftedValue(log_values[k], tau, sd, key, k);
  }
  return out;
}

ArgmaxResult PerturbedArgmax(std::span<const double> log_scores,
                             std::span<const size_t> candidates, double scale,
                             StreamKey key) {
  ArgmaxResult best = kWorst;
  const auto n = static_cast<int64_t>(candidates.size());
#pragma omp parallel
  {
    ArgmaxResult local = kWorst;
#pragma omp for schedule(static) nowait
    for (int64_t j = 0; j < n; ++j) {
      const size_t c = candidates[static_cast<size_t>(j)];
      const ArgmaxResult here{c, log_scores[c] + GumbelDraw(key, c, scale)};
      if (Better(here, local)) local = here;
    }
#pragma omp critical(gdpe_perturbed_argmax)
    if (Better(local, best)) best = local;
  }
  return best;
}

double MaxUniform(StreamKey key, uint64_t n) {
  // Draws 2b and 2b+1 share one Philox block; the uniform map is monotone in
  // the top 52 bits, so the maximum is taken on those and converted once.
  const uint64_t k = key.value();
  const std::array<uint32_t, 2> philox_key = {static_cast<uint32_t>(k),
                                              static_cast<uint32_t>(k >> 32)};
  const auto blocks = static_cast<int64_t>(n / 2);
  uint64_t best = 0;
#pragma omp parallel for schedule(static) reduction(max : best)
  for (int64_t b = 0; b < blocks; ++b) {
    const auto block = static_cast<uint64_t>(b);
    const auto out = Philox4x32({static_cast<uint32_t>(block),
                                 static_cast<uint32_t>(block >> 32), 0, 0},
                                philox_key);
    const uint64_t lo = ((uint64_t{out[1]} << 32) | out[0]) >> 12;
    const uint64_t hi = ((uint64_t{out[3]} << 32) | out[2]) >> 12;
    best = std::max(best, std::max(lo, hi));
  }
  if (n % 2 == 1) best = std::max(best, DrawBits(key, n - 1) >> 12);
  return BitsToOpenUnit(best << 12);
}

namespace serial {

std::vector<double> ShiftByLogNormalNoise(std::span<const double> log_values,
                                          double tau, double sd,
                                          StreamKey key) {
  std::vector<double> out;
  out.reserve(log_values.size());
  for (size_t i = 0; i < log_values.size(); ++i) {
    out.push_back(ShiftedValue(log_values[i], tau, sd, key, i));
  }
  return out;
}

ArgmaxResult PerturbedArgmax(std::span<const double> log_scores,
                             std::span<const size_t> candidates, double scale,
                             StreamKey key) {
  ArgmaxResult best = kWorst;
  for (size_t c : candidates) {
    const ArgmaxResult here{c, log_scores[c] + GumbelDraw(key, c, scale)};
    if (Better(here, best)) best = here;
  }
  return best;
}

double MaxUniform(StreamKey key, uint64_t n) {
  Substream stream(key);
  double best = 0.0;
  for (uint64_t i = 0; i < n; ++i) best = std::max(best, stream.Uniform());
  return best;
}

}  // namespace serial
}  // namespace gdpe::kernels
