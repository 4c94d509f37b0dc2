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

#include "bitpact/randomness.h"

#include <charconv>
#include <string>
#include <unordered_map>

#include "bitpact/error.h"

namespace bitpact {

SharedSeed parse_seed(std::string_view text) {
  std::uint64_t value = 0;
  int base = 10;
  if (text.size() > 2 && text[0] == '0' && (text[1] == 'x' || text[1] == 'X')) {
    text.remove_prefix(2);
    base = 16;
  }
  const char* first = text.data();
  const char* last = text.data() + text.size();
  auto [ptr, ec] = std::from_chars(first, last, value, base);
  require(!text.empty() && ec == std::errc() && ptr == last,
          "invalid 64-bit seed '" + std::string(text) + "'");
  return SharedSeed{value};
}

SharedStream::SharedStream(SharedSeed seed, std::uint64_t stream)
    : key_(mix64(seed.value ^ mix64(stream + kGolden))) {}

std::uint64_t SharedStream::next() {
  ++counter_;
  return mix64(key_ + counter_ * kGolden);
}

LocalRng LocalRng::from_entropy() {
  std::random_device rd;
  const std::uint64_t hi = rd();
  const std::uint64_t lo = rd();
  return LocalRng((hi << 32) ^ lo);
}

PositionSet joint_rand(SharedSeed seed, std::uint64_t step, std::size_t k,
                       std::size_t n) {
  require(n >= 1, "universe must be nonempty");
  require(k <= n, "sample size k=" + std::to_string(k) +
                      " exceeds universe n=" + std::to_string(n));
  SharedStream stream(seed, step);
  // Sparse view of the permutation array: absent keys map to themselves.
  std::unordered_map<std::size_t, std::size_t> swapped;
  swapped.reserve(2 * k);
  auto value_at = [&](std::size_t i) {
    auto it = swapped.find(i);
    return it == swapped.end() ? i : it->second;
  };
  std::vector<std::size_t> chosen;
  chosen.reserve(k);
  for (std::size_t i = 0; i < k; ++i) {
    const std::size_t j =
        i + static_cast<std::size_t>(uniform_below(n - i, [&] { return stream.next(); }));
    const std::size_t vi = value_at(i);
    const std::size_t vj = value_at(j);
    swapped[j] = vi;
    swapped[i] = vj;
    chosen.push_back(vj);
  }
  return PositionSet(std::move(chosen), n);
}

PositionSet rand_subset(LocalRng& rng, std::size_t l, const PositionSet& s) {
  require(l <= s.size(), "subset size l=" + std::to_string(l) +
                             " exceeds set size " + std::to_string(s.size()));
  std::vector<std::size_t> pool(s.begin(), s.end());
  for (std::size_t i = 0; i < l; ++i) {
    const std::size_t j = i + static_cast<std::size_t>(rng.below(pool.size() - i));
    std::swap(pool[i], pool[j]);
  }
  pool.resize(l);
  return PositionSet(std::move(pool), s.universe());
}

std::vector<std::uint8_t> random_bits(LocalRng& rng, std::size_t count) {
  std::vector<std::uint8_t> out(count);
  std::uint64_t word = 0;
  for (std::size_t i = 0; i < count; ++i) {
    if ((i & 63) == 0) word = rng.next();
    out[i] = static_cast<std::uint8_t>((word >> (i & 63)) & 1u);
  }
  return out;
}

}  // namespace bitpact
