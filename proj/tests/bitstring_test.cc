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

#include "bitpact/error.h"
#include "bitpact/randomness.h"
#include "doctest.h"

using namespace bitpact;

namespace {

BitString bs(const char* text) { return BitString::from_string(text); }

PositionSet ps(std::vector<std::size_t> idx, std::size_t universe) {
  return PositionSet(std::move(idx), universe);
}

BitString random_string(LocalRng& rng, std::size_t n) {
  BitString out(n);
  for (std::size_t i = 0; i < n; ++i) out.set(i, rng.bit());
  return out;
}

PositionSet random_set(LocalRng& rng, std::size_t n) {
  std::vector<std::size_t> idx;
  for (std::size_t i = 0; i < n; ++i) {
    if (rng.bit()) idx.push_back(i);
  }
  return PositionSet(std::move(idx), n);
}

}  // namespace

TEST_CASE("agreement_count examples") {
  CHECK(agreement_count(bs("1010"), bs("1010")) == 4);
  CHECK(agreement_count(bs("0000"), bs("1111")) == 0);
  CHECK(agreement_count(bs("10110"), bs("10011")) == 3);
  CHECK_THROWS_AS(agreement_count(bs("101"), bs("1010")), PreconditionError);
}

TEST_CASE("restrict examples") {
  CHECK(restrict(bs("10110"), ps({0, 2}, 5)) == bs("11"));
  CHECK(restrict(bs("10110"), PositionSet::full(5)) == bs("10110"));
  CHECK(restrict(bs("10110"), ps({4}, 5)) == bs("0"));
  CHECK_THROWS_AS(restrict(bs("10110"), ps({1}, 6)), PreconditionError);
  CHECK_THROWS_AS(ps({5}, 5), PreconditionError);
}

TEST_CASE("flip_positions examples") {
  CHECK(flip_positions(bs("10110"), ps({2, 4}, 5)) == bs("10011"));
  CHECK(flip_positions(bs("10110"), ps({}, 5)) == bs("10110"));
  CHECK_THROWS_AS(flip_positions(bs("10110"), ps({0}, 4)), PreconditionError);
}

TEST_CASE("position sets reject duplicates and sort their input") {
  CHECK_THROWS_AS(ps({1, 1}, 4), PreconditionError);
  const auto s = ps({3, 0, 2}, 4);
  CHECK(std::vector<std::size_t>(s.begin(), s.end()) == std::vector<std::size_t>{0, 2, 3});
  CHECK(s.contains(2));
  CHECK_FALSE(s.contains(1));
}

TEST_CASE("text rendering puts index 0 leftmost") {
  BitString b(70);
  b.set(0, true);
  b.set(69, true);
  const std::string text = b.to_string();
  CHECK(text.front() == '1');
  CHECK(text.back() == '1');
  CHECK(BitString::from_string(text) == b);
  CHECK_THROWS_AS(BitString::from_string("10x1"), PreconditionError);
  CHECK_THROWS_AS(BitString::from_string(""), PreconditionError);
}

TEST_CASE("make_pair_with_agreement") {
  LocalRng rng(7);
  {
    auto [a, b] = make_pair_with_agreement(10, 10, rng);
    CHECK(a == b);
  }
  {
    auto [a, b] = make_pair_with_agreement(10, 0, rng);
    CHECK(agreement_count(a, b) == 0);
    CHECK(flip_positions(a, PositionSet::full(10)) == b);
  }
  for (std::size_t x0 : {0u, 1u, 30u, 99u, 100u}) {
    auto [a, b] = make_pair_with_agreement(100, x0, rng);
    CHECK(agreement_count(a, b) == x0);
  }
  CHECK_THROWS_AS(make_pair_with_agreement(10, 11, rng), PreconditionError);
}

TEST_CASE("agreement positions are uniformly placed") {
  // Each position should agree with probability x0/n = 0.3.
  LocalRng rng(11);
  constexpr int kTrials = 20000;
  std::vector<int> hits(10, 0);
  for (int t = 0; t < kTrials; ++t) {
    auto [a, b] = make_pair_with_agreement(10, 3, rng);
    for (std::size_t i = 0; i < 10; ++i) hits[i] += a[i] == b[i];
  }
  for (int h : hits) CHECK(static_cast<double>(h) / kTrials == doctest::Approx(0.3).epsilon(0.05));
}

TEST_CASE("bit string properties over random inputs") {
  LocalRng rng(2024);
  for (int iter = 0; iter < 500; ++iter) {
    const std::size_t n = 1 + rng.below(150);
    const BitString a = random_string(rng, n);
    const BitString b = random_string(rng, n);
    const PositionSet s1 = random_set(rng, n);

    CHECK(agreement_count(a, b) + hamming_distance(a, b) == n);
    CHECK(agreement_count(a, b) == agreement_count(b, a));
    CHECK(agreement_count(a, flip_positions(a, s1)) == n - s1.size());
    CHECK(flip_positions(flip_positions(a, s1), s1) == a);

    // Disjoint complement of s1 inside a random subset.
    std::vector<std::size_t> rest;
    for (std::size_t i = 0; i < n; ++i) {
      if (!s1.contains(i) && rng.bit()) rest.push_back(i);
    }
    if (!rest.empty()) {
      const PositionSet s2(rest, n);
      CHECK(restrict(flip_positions(a, s1), s2) == restrict(a, s2));
    }
  }
}
