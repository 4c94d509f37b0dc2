// Copyright 2026 The bitpact Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//   http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cstddef>
#include <cstdint>
#include <random>
#include <string_view>
#include <vector>

#include "bitpact/bitstring.h"

namespace bitpact {

// SplitMix64 finalizer.
constexpr std::uint64_t mix64(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

inline constexpr std::uint64_t kGolden = 0x9e3779b97f4a7c15ULL;

// Combines a parent seed with a label into an independent child seed.
constexpr std::uint64_t derive_seed(std::uint64_t parent, std::uint64_t label) {
  return mix64(mix64(parent + kGolden) ^ (label * kGolden + 0x632be59bd9b4e019ULL));
}

// Uniform draw from [0, bound) by rejection on the full 64-bit word. `next`
// yields raw words. bound must be nonzero.
template <typename NextWord>
std::uint64_t uniform_below(std::uint64_t bound, NextWord&& next) {
  const std::uint64_t limit = bound * (UINT64_MAX / bound);
  for (;;) {
    const std::uint64_t w = next();
    if (bound == 1 || w < limit) return w % bound;
  }
}

struct SharedSeed {
  std::uint64_t value = 0;
  friend bool operator==(const SharedSeed&, const SharedSeed&) = default;
};

// Parses a decimal or 0x-prefixed hexadecimal 64-bit seed.
SharedSeed parse_seed(std::string_view text);

// Counter-based stream keyed by (seed, stream id). Word i of the stream is
// mix64(key + (i + 1) * kGolden) with key = mix64(seed ^ mix64(stream + kGolden)),
// so any word can be recomputed without replaying the stream.
class SharedStream {
 public:
  SharedStream(SharedSeed seed, std::uint64_t stream);

  std::uint64_t next();
  std::uint64_t counter() const { return counter_; }

 private:
  std::uint64_t key_;
  std::uint64_t counter_ = 0;
};

// A party's private randomness.
class LocalRng {
 public:
  explicit LocalRng(std::uint64_t seed) : engine_(seed) {}

  static LocalRng from_entropy();

  std::uint64_t next() { return engine_(); }
  std::uint64_t below(std::uint64_t bound) {
    return uniform_below(bound, [this] { return engine_(); });
  }
  bool bit() { return below(2) == 1; }

 private:
  std::mt19937_64 engine_;
};

// Uniform k-subset of [0, n) derived from (seed, step) alone. Partial
// Fisher-Yates over the identity permutation, consuming one stream word per
// draw, then sorted ascending.
PositionSet joint_rand(SharedSeed seed, std::uint64_t step, std::size_t k,
                       std::size_t n);

// Uniform l-subset of `s` drawn from private randomness.
PositionSet rand_subset(LocalRng& rng, std::size_t l, const PositionSet& s);

// `count` uniform bits, one per byte.
std::vector<std::uint8_t> random_bits(LocalRng& rng, std::size_t count);

}  // namespace bitpact
