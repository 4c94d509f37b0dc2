# Copyright 2026 The bitpact Authors.
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#   http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.
"""Reference implementation of the shared stream and k-subset sampler.

Written from the documented algorithm only. Its output is frozen into
randomness_test.cc. Run: python3 joint_rand_reference.py
"""

MASK = (1 << 64) - 1
GOLDEN = 0x9E3779B97F4A7C15


def mix64(z):
    z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & MASK
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & MASK
    return z ^ (z >> 31)


def stream(seed, stream_id):
    key = mix64(seed ^ mix64((stream_id + GOLDEN) & MASK))
    counter = 0
    while True:
        counter += 1
        yield mix64((key + counter * GOLDEN) & MASK)


def uniform_below(bound, words):
    limit = bound * (MASK // bound)
    while True:
        w = next(words)
        if bound == 1 or w < limit:
            return w % bound


def joint_rand(seed, step, k, n):
    # Partial Fisher-Yates over [0, n) with a sparse swap table.
    words = stream(seed, step)
    swapped = {}
    picked = []
    for i in range(k):
        j = i + uniform_below(n - i, words)
        vi, vj = swapped.get(i, i), swapped.get(j, j)
        swapped[j], swapped[i] = vi, vj
        picked.append(vj)
    return sorted(picked)


if __name__ == "__main__":
    s = stream(42, 0)
    print([hex(next(s)) for _ in range(3)])
    print(joint_rand(42, 1, 5, 100))
    print(joint_rand(42, 2, 5, 100))
    print(joint_rand(0xDEADBEEF, 7, 3, 10))
    print(joint_rand(1, 1, 10, 1000000))
