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

#include "bitpact/bitstring.h"

#include <algorithm>
#include <bit>
#include <numeric>

#include "bitpact/error.h"
#include "bitpact/randomness.h"

namespace bitpact {

namespace {

std::size_t word_count(std::size_t bits) { return (bits + 63) / 64; }

void check_same_length(const BitString& a, const BitString& b) {
  require(a.size() == b.size(), "bit strings differ in length (" +
                                    std::to_string(a.size()) + " vs " +
                                    std::to_string(b.size()) + ")");
}

void check_universe(const BitString& a, const PositionSet& s) {
  require(s.universe() == a.size(),
          "position set universe " + std::to_string(s.universe()) +
              " does not match string length " + std::to_string(a.size()));
}

}  // namespace

PositionSet::PositionSet(std::vector<std::size_t> indices, std::size_t universe)
    : indices_(std::move(indices)), universe_(universe) {
  std::sort(indices_.begin(), indices_.end());
  for (std::size_t i = 0; i < indices_.size(); ++i) {
    require(indices_[i] < universe_, "position " + std::to_string(indices_[i]) +
                                         " out of range [0, " +
                                         std::to_string(universe_) + ")");
    require(i == 0 || indices_[i - 1] != indices_[i],
            "duplicate position " + std::to_string(indices_[i]));
  }
}

PositionSet PositionSet::full(std::size_t universe) {
  std::vector<std::size_t> all(universe);
  std::iota(all.begin(), all.end(), std::size_t{0});
  return PositionSet(std::move(all), universe);
}

bool PositionSet::contains(std::size_t index) const {
  return std::binary_search(indices_.begin(), indices_.end(), index);
}

BitString::BitString(std::size_t length)
    : words_(word_count(length), 0), length_(length) {
  require(length >= 1, "bit string length must be at least 1");
}

BitString BitString::from_string(std::string_view text) {
  BitString out(text.size());
  for (std::size_t i = 0; i < text.size(); ++i) {
    const char c = text[i];
    require(c == '0' || c == '1',
            "bit string may contain only '0' and '1', got '" +
                std::string(1, c) + "'");
    if (c == '1') out.set(i, true);
  }
  return out;
}

BitString BitString::from_bits(std::span<const std::uint8_t> bits) {
  BitString out(bits.size());
  for (std::size_t i = 0; i < bits.size(); ++i) {
    require(bits[i] <= 1, "bit value out of range");
    if (bits[i]) out.set(i, true);
  }
  return out;
}

bool BitString::at(std::size_t i) const {
  require(i < length_, "bit index out of range");
  return (*this)[i];
}

void BitString::set(std::size_t i, bool value) {
  require(i < length_, "bit index out of range");
  const std::uint64_t mask = std::uint64_t{1} << (i & 63);
  if (value) {
    words_[i >> 6] |= mask;
  } else {
    words_[i >> 6] &= ~mask;
  }
}

std::size_t BitString::popcount() const {
  std::size_t total = 0;
  for (auto w : words_) total += static_cast<std::size_t>(std::popcount(w));
  return total;
}

std::string BitString::to_string() const {
  std::string out(length_, '0');
  for (std::size_t i = 0; i < length_; ++i) {
    if ((*this)[i]) out[i] = '1';
  }
  return out;
}

std::vector<std::uint8_t> BitString::to_bits() const {
  std::vector<std::uint8_t> out(length_);
  for (std::size_t i = 0; i < length_; ++i) out[i] = (*this)[i];
  return out;
}

std::size_t hamming_distance(const BitString& a, const BitString& b) {
  check_same_length(a, b);
  // Padding bits past length are always zero in both operands.
  std::size_t total = 0;
  const auto wa = a.words();
  const auto wb = b.words();
  for (std::size_t i = 0; i < wa.size(); ++i) {
    total += static_cast<std::size_t>(std::popcount(wa[i] ^ wb[i]));
  }
  return total;
}

std::size_t agreement_count(const BitString& a, const BitString& b) {
  return a.size() - hamming_distance(a, b);
}

BitString restrict(const BitString& a, const PositionSet& s) {
  check_universe(a, s);
  require(!s.empty(), "cannot restrict to an empty position set");
  BitString out(s.size());
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (a[s[i]]) out.set(i, true);
  }
  return out;
}

BitString flip_positions(const BitString& a, const PositionSet& s) {
  check_universe(a, s);
  BitString out = a;
  for (auto idx : s) out.set(idx, !a[idx]);
  return out;
}

std::pair<BitString, BitString> make_pair_with_agreement(std::size_t n,
                                                         std::size_t x0_count,
                                                         LocalRng& rng) {
  require(n >= 1, "string length must be at least 1");
  require(x0_count <= n, "agreement count " + std::to_string(x0_count) +
                             " exceeds string length " + std::to_string(n));
  BitString a(n);
  for (std::size_t i = 0; i < n; ++i) a.set(i, rng.bit());

  // Choose the disagreement positions as a uniform (n - x0_count)-subset.
  const PositionSet differ =
      n == x0_count ? PositionSet({}, n)
                    : rand_subset(rng, n - x0_count, PositionSet::full(n));
  BitString b = flip_positions(a, differ);
  return {std::move(a), std::move(b)};
}

}  // namespace bitpact
