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

// Data-parallel inner loops. Each kernel has an OpenMP version (namespace
// gdpe::kernels) and a plain serial reference (gdpe::kernels::serial) that the
// tests compare against and the benchmarks time. Every draw is addressed by
// its own counter-based substream, so both versions produce identical results
// for any thread count.

#ifndef GDPE_KERNELS_H_
#define GDPE_KERNELS_H_

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "gdpe/rng.h"

namespace gdpe::kernels {

// out[i] = log_values[i] - (tau + sd * N_i), N_i the first normal draw of
// key.Child(i).
std::vector<double> ShiftByLogNormalNoise(std::span<const double> log_values,
                                          double tau, double sd, StreamKey key);

struct ArgmaxResult {
  size_t index = 0;
  double score = 0.0;
};

// argmax over c in candidates of log_scores[c] + g_c, with g_c the first
// Gumbel(0, scale) draw of key.Child(c). Ties, including all scores at -inf,
// resolve to the lowest index. candidates must be nonempty.
ArgmaxResult PerturbedArgmax(std::span<const double> log_scores,
                             std::span<const size_t> candidates, double scale,
                             StreamKey key);

// Largest of the uniforms drawn at indices [0, n) of the stream `key`; n >= 1.
double MaxUniform(StreamKey key, uint64_t n);

// results[t] = fn(t) for t in [0, n), evaluated concurrently. The output is
// ordered by t whatever the schedule.
template <typename T, typename Fn>
std::vector<T> MapTrials(size_t n, Fn&& fn) {
  std::vector<T> results(n);
  const auto count = static_cast<int64_t>(n);
#pragma omp parallel for schedule(dynamic, 1)
  for (int64_t t = 0; t < count; ++t) {
    results[static_cast<size_t>(t)] = fn(static_cast<size_t>(t));
  }
  return results;
}

namespace serial {

std::vector<double> ShiftByLogNormalNoise(std::span<const double> log_values,
                                          double tau, double sd, StreamKey key);

ArgmaxResult PerturbedArgmax(std::span<const double> log_scores,
                             std::span<const size_t> candidates, double scale,
                             StreamKey key);

double MaxUniform(StreamKey key, uint64_t n);

template <typename T, typename Fn>
std::vector<T> MapTrials(size_t n, Fn&& fn) {
  std::vector<T> results;
  results.reserve(n);
  for (size_t t = 0; t < n; ++t) results.push_back(fn(t));
  return results;
}

}  // namespace serial
}  // namespace gdpe::kernels

#endif  // GDPE_KERNELS_H_
