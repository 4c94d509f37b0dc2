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
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "bitpact/channel.h"
#include "bitpact/circuit.h"
#include "bitpact/randomness.h"

namespace bitpact {

// Semi-honest two-party evaluation of Boolean circuits over XOR shares.
// XOR, NOT and constants are local; each AND gate consumes one dealer triple
// and one opened pair of masked bits. AND gates at equal AND depth share a
// single frame per direction.

// One party's share of a multiplication triple: (a_A^a_B)&(b_A^b_B) == c_A^c_B.
struct TripleShare {
  std::uint8_t a = 0;
  std::uint8_t b = 0;
  std::uint8_t c = 0;
  friend bool operator==(const TripleShare&, const TripleShare&) = default;
};

class TripleSet {
 public:
  TripleSet() = default;
  explicit TripleSet(std::vector<TripleShare> triples)
      : triples_(std::move(triples)) {}

  std::size_t size() const { return triples_.size(); }
  std::size_t consumed() const { return cursor_; }
  std::size_t remaining() const { return triples_.size() - cursor_; }

  // Throws ProtocolError once every triple has been used.
  const TripleShare& take();

  std::span<const TripleShare> all() const { return triples_; }

 private:
  std::vector<TripleShare> triples_;
  std::size_t cursor_ = 0;
};

// Trusted-dealer stand-in for OT-based triple generation.
std::pair<TripleSet, TripleSet> deal_triples(std::size_t count, LocalRng& rng);

enum class Direction : std::uint8_t { kSent, kReceived };

struct TranscriptEntry {
  Direction direction;
  FrameKind kind;
  std::size_t bytes;
  friend bool operator==(const TranscriptEntry&, const TranscriptEntry&) = default;
};

struct Transcript {
  std::vector<TranscriptEntry> entries;
  std::size_t messages_sent = 0;
  std::size_t messages_received = 0;
  std::size_t rounds = 0;

  std::size_t bytes_sent() const;
  friend bool operator==(const Transcript&, const Transcript&) = default;
};

// This party's XOR shares of both parties' input wires.
struct InputShares {
  std::vector<std::uint8_t> a;
  std::vector<std::uint8_t> b;
};

// Masks `my_bits` with fresh randomness, keeps `bits ^ mask` and sends the
// mask to the peer; receives the peer's mask as this party's share of the
// peer's input. Sends nothing for an empty input.
InputShares input_share(std::span<const std::uint8_t> my_bits,
                        std::size_t peer_bit_count, Role role, LocalRng& rng,
                        MessageChannel::Endpoint& ep,
                        Transcript* transcript = nullptr);

// Round machine for one party's side of the evaluation (see RoundMachine in
// channel.h). Rounds: input sharing, one per AND level, output opening.
class GmwParty {
 public:
  // Fails with ProtocolError when `triples` cannot cover the AND gates.
  GmwParty(const Circuit& circuit, Role role, std::span<const std::uint8_t> my_bits,
           TripleSet& triples, LocalRng& rng);

  bool done() const { return phase_ == Phase::kDone; }
  std::optional<Frame> send_phase();
  bool needs_peer_frame() const;
  void receive_phase(const Frame* peer);

  // Valid once done().
  const std::vector<std::uint8_t>& outputs() const { return outputs_; }
  const Transcript& transcript() const { return transcript_; }

  // Shares of every wire, for tests that reconstruct intermediate values.
  const std::vector<std::uint8_t>& wire_shares() const { return shares_; }

 private:
  enum class Phase { kInput, kAnd, kOutput, kDone };

  std::size_t my_input_count() const;
  std::size_t peer_input_count() const;
  void evaluate_local_up_to(std::size_t depth);
  void advance_past_empty_input();

  const Circuit* circuit_;
  Role role_;
  std::vector<std::uint8_t> my_bits_;
  TripleSet* triples_;
  LocalRng* rng_;

  Phase phase_ = Phase::kInput;
  std::size_t level_ = 0;
  std::vector<std::uint8_t> shares_;
  std::vector<std::uint8_t> my_mask_;
  std::vector<const TripleShare*> level_triples_;
  std::vector<std::uint8_t> my_openings_;  // d,e pairs for the current level
  std::vector<std::vector<std::size_t>> local_by_depth_;
  std::size_t local_done_depth_ = 0;
  bool sent_this_round_ = false;
  std::vector<std::uint8_t> outputs_;
  Transcript transcript_;
};

struct SecureResult {
  std::vector<std::uint8_t> outputs;
  Transcript transcript;
};

// Blocking evaluation for one party; the peer runs the same call with the
// other role on the other endpoint, usually on another thread.
SecureResult secure_evaluate(const Circuit& c, std::span<const std::uint8_t> my_bits,
                             Role role, MessageChannel::Endpoint& ep,
                             TripleSet& triples, LocalRng& rng);

// Runs both parties in the calling thread with a fresh channel and dealer.
// Test and demo convenience.
struct JointResult {
  SecureResult a;
  SecureResult b;
  std::size_t triples_consumed = 0;
};
JointResult secure_evaluate_lockstep(const Circuit& c,
                                     std::span<const std::uint8_t> a_bits,
                                     std::span<const std::uint8_t> b_bits,
                                     LocalRng& dealer_rng, LocalRng& rng_a,
                                     LocalRng& rng_b);

}  // namespace bitpact
