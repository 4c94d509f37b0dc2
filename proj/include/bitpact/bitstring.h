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
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace bitpact {

class LocalRng;

// Sorted set of distinct positions inside [0, universe).
class PositionSet {
 public:
  PositionSet() = default;

  // Sorts and validates `indices`; throws PreconditionError on duplicates or
  // out-of-range entries.
  PositionSet(std::vector<std::size_t> indices, std::size_t universe);

  static PositionSet full(std::size_t universe);

  std::size_t universe() const { return universe_; }
  std::size_t size() const { return indices_.size(); }
  bool empty() const { return indices_.empty(); }
  bool contains(std::size_t index) const;

  std::span<const std::size_t> indices() const { return indices_; }
  auto begin() const { return indices_.begin(); }
  auto end() const { return indices_.end(); }
  std::size_t operator[](std::size_t i) const { return indices_[i]; }

  friend bool operator==(const PositionSet&, const PositionSet&) = default;

 private:
  std::vector<std::size_t> indices_;
  std::size_t universe_ = 0;
};

// Packed N-bit string. Index 0 is rendered leftmost.
class BitString {
 public:
  // All-zero string of `length` bits. length must be at least 1.
  explicit BitString(std::size_t length);

  // Parses '0'/'1' characters.
  static BitString from_string(std::string_view text);
  static BitString from_bits(std::span<const std::uint8_t> bits);

  std::size_t size() const { return length_; }
  bool operator[](std::size_t i) const {
    return (words_[i >> 6] >> (i & 63)) & 1u;
  }
  bool at(std::size_t i) const;

  // Mutating setter, used by builders. Most callers should use the free
  // functions below, which return new values.
  void set(std::size_t i, bool value);

  std::size_t popcount() const;
  std::string to_string() const;
  std::vector<std::uint8_t> to_bits() const;

  std::span<const std::uint64_t> words() const { return words_; }

  friend bool operator==(const BitString&, const BitString&) = default;

 private:
  std::vector<std::uint64_t> words_;
  std::size_t length_ = 0;
};

std::size_t agreement_count(const BitString& a, const BitString& b);
std::size_t hamming_distance(const BitString& a, const BitString& b);

// Bits of `a` at the positions of `s`, in increasing index order.
BitString restrict(const BitString& a, const PositionSet& s);

BitString flip_positions(const BitString& a, const PositionSet& s);

// Two random n-bit strings that agree at exactly `x0_count` uniformly chosen
// positions.
std::pair<BitString, BitString> make_pair_with_agreement(std::size_t n,
                                                         std::size_t x0_count,
                                                         LocalRng& rng);

}  // namespace bitpact
