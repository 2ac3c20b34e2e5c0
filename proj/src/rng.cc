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

#include "gdpe/rng.h"

#include <cmath>

#include "absl/strings/str_cat.h"
#include "absl/strings/str_join.h"
#include "gdpe/normal.h"

namespace gdpe {
namespace {

constexpr uint32_t kPhiloxM0 = 0xD2511F53;
constexpr uint32_t kPhiloxM1 = 0xCD9E8D57;
constexpr uint32_t kPhiloxW0 = 0x9E3779B9;
constexpr uint32_t kPhiloxW1 = 0xBB67AE85;

uint64_t SplitMix64(uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

}  // namespace

std::array<uint32_t, 4> Philox4x32(std::array<uint32_t, 4> ctr,
                                   std::array<uint32_t, 2> key) {
  for (int round = 0; round < 10; ++round) {
    if (round > 0) {
      key[0] += kPhiloxW0;
      key[1] += kPhiloxW1;
    }
    const uint64_t p0 = uint64_t{kPhiloxM0} * ctr[0];
    const uint64_t p1 = uint64_t{kPhiloxM1} * ctr[2];
    ctr = {static_cast<uint32_t>(p1 >> 32) ^ ctr[1] ^ key[0],
           static_cast<uint32_t>(p1),
           static_cast<uint32_t>(p0 >> 32) ^ ctr[3] ^ key[1],
           static_cast<uint32_t>(p0)};
  }
  return ctr;
}

StreamKey::StreamKey(uint64_t root) : value_(SplitMix64(root ^ 0x6A09E667F3BCC909ULL)) {}

StreamKey StreamKey::Child(uint64_t index) const {
  StreamKey child;
  child.value_ = SplitMix64(value_ ^ SplitMix64(index + 0x3C6EF372FE94F82BULL));
  return child;
}

RngSeed::RngSeed(uint64_t root, std::initializer_list<uint64_t> path)
    : RngSeed(root) {
  for (uint64_t index : path) {
    path_.push_back(index);
    key_ = key_.Child(index);
  }
}

RngSeed RngSeed::Child(uint64_t index) const {
  RngSeed child = *this;
  child.path_.push_back(index);
  child.key_ = key_.Child(index);
  return child;
}

std::string RngSeed::ToString() const {
  return absl::StrCat(root_, ":", absl::StrJoin(path_, "/"));
}

uint64_t DrawBits(StreamKey key, uint64_t index) {
  const uint64_t block = index >> 1;
  const uint64_t k = key.value();
  const auto out = Philox4x32(
      {static_cast<uint32_t>(block), static_cast<uint32_t>(block >> 32), 0, 0},
      {static_cast<uint32_t>(k), static_cast<uint32_t>(k >> 32)});
  const int half = static_cast<int>(index & 1) * 2;
  return (uint64_t{out[half + 1]} << 32) | out[half];
}

uint64_t Substream::NextBits() {
  const uint64_t block = next_ >> 1;
  if (block != block_) {
    const uint64_t k = key_.value();
    buffer_ = Philox4x32(
        {static_cast<uint32_t>(block), static_cast<uint32_t>(block >> 32), 0,
         0},
        {static_cast<uint32_t>(k), static_cast<uint32_t>(k >> 32)});
    block_ = block;
  }
  const int half = static_cast<int>(next_ & 1) * 2;
  ++next_;
  return (uint64_t{buffer_[half + 1]} << 32) | buffer_[half];
}

double Substream::Normal() {
  return internal::NormalQuantileRational(Uniform());
}

double Substream::Gumbel(double scale) {
  return -scale * std::log(-std::log(Uniform()));
}

}  // namespace gdpe
