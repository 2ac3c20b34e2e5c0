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

// Counter-based random substreams.
//
// A stream is addressed by a 64-bit root seed plus a path of nonnegative
// integers, e.g. {trial, iteration, candidate}. The (root, path) pair is hashed
// into a Philox4x32-10 key, and draw j of the stream is a pure function of
// (key, j). Any worker can therefore regenerate any draw without coordination,
// which keeps parallel Monte Carlo independent of scheduling.

#ifndef GDPE_RNG_H_
#define GDPE_RNG_H_

#include <array>
#include <cstdint>
#include <initializer_list>
#include <string>
#include <vector>

namespace gdpe {

// Philox4x32 with 10 rounds (Salmon et al., Random123).
std::array<uint32_t, 4> Philox4x32(std::array<uint32_t, 4> counter,
                                   std::array<uint32_t, 2> key);

// Hashed (root, path) address of a substream. Cheap to copy and to extend.
class StreamKey {
 public:
  explicit StreamKey(uint64_t root);

  StreamKey Child(uint64_t index) const;
  uint64_t value() const { return value_; }

  friend bool operator==(StreamKey a, StreamKey b) {
    return a.value_ == b.value_;
  }

 private:
  StreamKey() = default;
  uint64_t value_ = 0;
};

// A root seed with an explicit path, kept for provenance and replay.
class RngSeed {
 public:
  explicit RngSeed(uint64_t root) : root_(root), key_(root) {}
  RngSeed(uint64_t root, std::initializer_list<uint64_t> path);

  RngSeed Child(uint64_t index) const;

  uint64_t root() const { return root_; }
  const std::vector<uint64_t>& path() const { return path_; }
  StreamKey key() const { return key_; }

  // "root:p0/p1/..." for logs and manifests.
  std::string ToString() const;

 private:
  uint64_t root_;
  std::vector<uint64_t> path_;
  StreamKey key_;
};

// Raw 64-bit draw number `index` of the stream `key`.
uint64_t DrawBits(StreamKey key, uint64_t index);

// Maps 64 random bits to a double strictly inside (0, 1): the top 52 bits
// index a grid offset by half a step, so 0 and 1 are never produced.
inline double BitsToOpenUnit(uint64_t bits) {
  return (static_cast<double>(bits >> 12) + 0.5) * 0x1.0p-52;
}

// Sequential reader over one substream.
class Substream {
 public:
  explicit Substream(StreamKey key) : key_(key) {}
  explicit Substream(const RngSeed& seed) : key_(seed.key()) {}

  uint64_t NextBits();
  // Uniform on (0, 1), never exactly 0 or 1.
  double Uniform() { return BitsToOpenUnit(NextBits()); }
  // Standard normal by inverse CDF of one uniform.
  double Normal();
  // Gumbel(0, scale) by inverse CDF: -scale * log(-log U).
  double Gumbel(double scale);

  uint64_t draws_consumed() const { return next_; }

 private:
  StreamKey key_;
  uint64_t next_ = 0;
  uint64_t block_ = ~uint64_t{0};
  std::array<uint32_t, 4> buffer_{};
};

}  // namespace gdpe

#endif  // GDPE_RNG_H_
