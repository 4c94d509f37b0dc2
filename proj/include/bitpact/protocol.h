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
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "bitpact/bitstring.h"
#include "bitpact/randomness.h"

namespace bitpact {

enum class Mode : std::uint8_t {
  // Parties reveal their sampled bits to each other and compare in the clear.
  // Records the disagreement counts; meant for fast simulation.
  kOracle,
  // The flip test is a GMW evaluation of the disagreement threshold circuit.
  kSecure,
};

enum class Scheduling : std::uint8_t {
  kLockstep,  // both parties interleaved in the calling thread
  kThreaded,  // one thread per party over the blocking channel
};

std::string_view mode_name(Mode mode);
Mode parse_mode(std::string_view text);

struct ProtocolParams {
  std::size_t n = 0;      // string length
  std::size_t k = 1;      // sample size per step
  std::size_t l = 1;      // flip size
  std::uint64_t t_max = 0;  // number of steps
  // Minimum number of disagreements in the sample that triggers a flip.
  // Defaults to ceil(k/2).
  std::optional<std::size_t> r;
  SharedSeed seed;
  Mode mode = Mode::kOracle;

  std::size_t threshold() const { return r.value_or((k + 1) / 2); }

  // Throws PreconditionError unless 1 <= l <= k <= n and r <= k.
  void validate() const;
};

// Party c flips at step i when i + c is odd: party 0 on odd steps.
constexpr int turn_at(std::uint64_t step) { return step % 2 == 1 ? 0 : 1; }

struct TraceRecord {
  std::uint64_t step = 0;
  std::size_t x = 0;  // agreement count after the step
  int turn = 0;
  bool flipped = false;
  std::size_t messages = 0;  // frames sent by both parties during the step
  // Oracle mode only: disagreements in the sample, and among flipped bits.
  std::optional<std::size_t> j;
  std::optional<std::size_t> s;

  friend bool operator==(const TraceRecord&, const TraceRecord&) = default;
};

struct SessionOptions {
  Scheduling scheduling = Scheduling::kLockstep;
  // Seeds the triple dealer and both parties' masking randomness. Kept apart
  // from the flip generators so oracle and secure runs make identical flips.
  std::uint64_t mpc_seed = 0x5eed5eed5eed5eedULL;
  // Stop once X/n reaches this density. Harness convenience, off by default;
  // only honored by the lockstep scheduler.
  std::optional<double> stop_at_density;
  // Test hook: close the channel when this step begins.
  std::optional<std::uint64_t> fault_at_step;
};

struct SessionResult {
  BitString a;
  BitString b;
  std::vector<TraceRecord> trace;
};

SessionResult run_session(const ProtocolParams& params, const BitString& a,
                          const BitString& b, LocalRng& rng_a, LocalRng& rng_b,
                          const SessionOptions& options = {});

// Trace CSV: `step,X,density,turn,flipped,msgs` plus `,j,s` for oracle traces.
void write_trace_csv(std::ostream& os, const std::vector<TraceRecord>& trace,
                     std::size_t n, bool with_oracle_fields);
std::vector<TraceRecord> read_trace_csv(std::istream& is);

// Per-trial seeds derived from a base seed.
struct TrialSeeds {
  std::uint64_t setup;
  SharedSeed shared;
  std::uint64_t rng_a;
  std::uint64_t rng_b;
};
TrialSeeds trial_seeds(std::uint64_t base_seed, std::uint64_t trial);

// X(i) for i = 0..t_max of each trial, in trial order. Every trial starts
// from a fresh random pair with agreement count x0_count. `workers` > 1
// spreads trials over threads without changing the result.
std::vector<std::vector<std::uint32_t>> run_trials(const ProtocolParams& params,
                                                   std::size_t x0_count,
                                                   std::size_t trials,
                                                   std::uint64_t base_seed,
                                                   unsigned workers = 1);

struct MonteCarloStats {
  std::size_t trials = 0;
  std::vector<double> mean;      // index i = step i, i = 0..t_max
  std::vector<double> variance;  // unbiased; 0 when trials == 1
};

MonteCarloStats run_monte_carlo(const ProtocolParams& params, std::size_t x0_count,
                                std::size_t trials, std::uint64_t base_seed,
                                unsigned workers = 1);

}  // namespace bitpact
