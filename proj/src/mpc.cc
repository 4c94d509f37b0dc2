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

#include "bitpact/mpc.h"

#include <string>

#include "bitpact/error.h"

namespace bitpact {

const TripleShare& TripleSet::take() {
  if (cursor_ >= triples_.size()) {
    throw ProtocolError("triple supply exhausted after " +
                        std::to_string(triples_.size()) + " triples");
  }
  return triples_[cursor_++];
}

std::pair<TripleSet, TripleSet> deal_triples(std::size_t count, LocalRng& rng) {
  std::vector<TripleShare> a(count);
  std::vector<TripleShare> b(count);
  for (std::size_t i = 0; i < count; ++i) {
    // Five random share bits; B's c is fixed by the product relation.
    const std::uint64_t w = rng.next();
    a[i] = {static_cast<std::uint8_t>(w & 1u), static_cast<std::uint8_t>((w >> 1) & 1u),
            static_cast<std::uint8_t>((w >> 2) & 1u)};
    b[i].a = (w >> 3) & 1u;
    b[i].b = (w >> 4) & 1u;
    const std::uint8_t product = (a[i].a ^ b[i].a) & (a[i].b ^ b[i].b);
    b[i].c = product ^ a[i].c;
  }
  return {TripleSet(std::move(a)), TripleSet(std::move(b))};
}

std::size_t Transcript::bytes_sent() const {
  std::size_t total = 0;
  for (const auto& e : entries) {
    if (e.direction == Direction::kSent) total += e.bytes;
  }
  return total;
}

namespace {

void record(Transcript* t, Direction dir, const Frame& frame) {
  if (t == nullptr) return;
  t->entries.push_back({dir, frame_kind(frame), frame.size()});
  if (dir == Direction::kSent) {
    ++t->messages_sent;
  } else {
    ++t->messages_received;
  }
}

}  // namespace

InputShares input_share(std::span<const std::uint8_t> my_bits,
                        std::size_t peer_bit_count, Role role, LocalRng& rng,
                        MessageChannel::Endpoint& ep, Transcript* transcript) {
  std::vector<std::uint8_t> mine(my_bits.size());
  std::vector<std::uint8_t> theirs;
  if (!my_bits.empty()) {
    const auto mask = random_bits(rng, my_bits.size());
    for (std::size_t i = 0; i < my_bits.size(); ++i) mine[i] = (my_bits[i] ^ mask[i]) & 1u;
    Frame frame = encode_frame(FrameKind::kInputShare, mask);
    record(transcript, Direction::kSent, frame);
    ep.send(std::move(frame));
  }
  if (peer_bit_count > 0) {
    const Frame in = ep.recv();
    record(transcript, Direction::kReceived, in);
    theirs = decode_frame(in, FrameKind::kInputShare, peer_bit_count);
  }
  if (transcript != nullptr && (!my_bits.empty() || peer_bit_count > 0)) {
    ++transcript->rounds;
  }
  InputShares out;
  if (role == Role::kA) {
    out.a = std::move(mine);
    out.b = std::move(theirs);
  } else {
    out.a = std::move(theirs);
    out.b = std::move(mine);
  }
  return out;
}

GmwParty::GmwParty(const Circuit& circuit, Role role,
                   std::span<const std::uint8_t> my_bits, TripleSet& triples,
                   LocalRng& rng)
    : circuit_(&circuit),
      role_(role),
      my_bits_(my_bits.begin(), my_bits.end()),
      triples_(&triples),
      rng_(&rng),
      shares_(circuit.wire_count(), 0) {
  require(my_bits_.size() == my_input_count(),
          "party supplied " + std::to_string(my_bits_.size()) +
              " input bits, circuit expects " + std::to_string(my_input_count()));
  if (triples.remaining() < circuit.and_count()) {
    throw ProtocolError("triple supply exhausted: circuit needs " +
                        std::to_string(circuit.and_count()) + ", " +
                        std::to_string(triples.remaining()) + " remain");
  }
  local_by_depth_.resize(circuit.and_depth() + 1);
  const auto gates = circuit.gates();
  for (std::size_t i = 0; i < gates.size(); ++i) {
    if (gates[i].kind != GateKind::kAnd) {
      local_by_depth_[circuit.wire_depths()[gates[i].out]].push_back(i);
    }
  }
}

std::size_t GmwParty::my_input_count() const {
  return role_ == Role::kA ? circuit_->num_inputs_a() : circuit_->num_inputs_b();
}

std::size_t GmwParty::peer_input_count() const {
  return role_ == Role::kA ? circuit_->num_inputs_b() : circuit_->num_inputs_a();
}

void GmwParty::evaluate_local_up_to(std::size_t depth) {
  const bool is_a = role_ == Role::kA;
  for (; local_done_depth_ <= depth && local_done_depth_ < local_by_depth_.size();
       ++local_done_depth_) {
    for (std::size_t gi : local_by_depth_[local_done_depth_]) {
      const Gate& g = circuit_->gates()[gi];
      switch (g.kind) {
        case GateKind::kXor:
          shares_[g.out] = shares_[g.in0] ^ shares_[g.in1];
          break;
        case GateKind::kNot:
          shares_[g.out] = shares_[g.in0] ^ (is_a ? 1u : 0u);
          break;
        case GateKind::kConst0:
          shares_[g.out] = 0;
          break;
        case GateKind::kConst1:
          shares_[g.out] = is_a ? 1u : 0u;
          break;
        case GateKind::kAnd:
          break;
      }
    }
  }
}

std::optional<Frame> GmwParty::send_phase() {
  sent_this_round_ = false;
  std::optional<Frame> out;
  switch (phase_) {
    case Phase::kInput: {
      if (my_bits_.empty()) break;
      my_mask_ = random_bits(*rng_, my_bits_.size());
      const std::size_t offset = role_ == Role::kA ? 0 : circuit_->num_inputs_a();
      for (std::size_t i = 0; i < my_bits_.size(); ++i) {
        shares_[offset + i] = (my_bits_[i] ^ my_mask_[i]) & 1u;
      }
      out = encode_frame(FrameKind::kInputShare, my_mask_);
      break;
    }
    case Phase::kAnd: {
      const auto& level = circuit_->and_levels()[level_];
      level_triples_.clear();
      my_openings_.clear();
      for (std::size_t gi : level) {
        const Gate& g = circuit_->gates()[gi];
        const TripleShare& t = triples_->take();
        level_triples_.push_back(&t);
        my_openings_.push_back(shares_[g.in0] ^ t.a);
        my_openings_.push_back(shares_[g.in1] ^ t.b);
      }
      out = encode_frame(FrameKind::kAndMask, my_openings_);
      break;
    }
    case Phase::kOutput: {
      std::vector<std::uint8_t> mine;
      for (auto w : circuit_->output_wires()) mine.push_back(shares_[w]);
      out = encode_frame(FrameKind::kOutputOpen, mine);
      break;
    }
    case Phase::kDone:
      throw ProtocolError("send_phase called after evaluation finished");
  }
  if (out) {
    record(&transcript_, Direction::kSent, *out);
    sent_this_round_ = true;
  }
  return out;
}

bool GmwParty::needs_peer_frame() const {
  switch (phase_) {
    case Phase::kInput:
      return peer_input_count() > 0;
    case Phase::kAnd:
    case Phase::kOutput:
      return true;
    case Phase::kDone:
      return false;
  }
  return false;
}

void GmwParty::receive_phase(const Frame* peer) {
  if (needs_peer_frame() != (peer != nullptr)) {
    throw ProtocolError("peer frame presence does not match the round schedule");
  }
  if (peer != nullptr) record(&transcript_, Direction::kReceived, *peer);
  if (sent_this_round_ || peer != nullptr) ++transcript_.rounds;

  switch (phase_) {
    case Phase::kInput: {
      if (peer != nullptr) {
        const auto mask =
            decode_frame(*peer, FrameKind::kInputShare, peer_input_count());
        const std::size_t offset = role_ == Role::kA ? circuit_->num_inputs_a() : 0;
        for (std::size_t i = 0; i < mask.size(); ++i) shares_[offset + i] = mask[i];
      }
      evaluate_local_up_to(0);
      phase_ = circuit_->and_depth() > 0 ? Phase::kAnd : Phase::kOutput;
      break;
    }
    case Phase::kAnd: {
      const auto& level = circuit_->and_levels()[level_];
      const auto theirs = decode_frame(*peer, FrameKind::kAndMask, 2 * level.size());
      const bool is_a = role_ == Role::kA;
      for (std::size_t i = 0; i < level.size(); ++i) {
        const Gate& g = circuit_->gates()[level[i]];
        const TripleShare& t = *level_triples_[i];
        const std::uint8_t d = my_openings_[2 * i] ^ theirs[2 * i];
        const std::uint8_t e = my_openings_[2 * i + 1] ^ theirs[2 * i + 1];
        std::uint8_t z = t.c ^ (d & t.b) ^ (e & t.a);
        if (is_a) z ^= d & e;
        shares_[g.out] = z & 1u;
      }
      ++level_;
      evaluate_local_up_to(level_);
      if (level_ == circuit_->and_depth()) phase_ = Phase::kOutput;
      break;
    }
    case Phase::kOutput: {
      const auto outs = circuit_->output_wires();
      const auto theirs = decode_frame(*peer, FrameKind::kOutputOpen, outs.size());
      outputs_.resize(outs.size());
      for (std::size_t i = 0; i < outs.size(); ++i) {
        outputs_[i] = shares_[outs[i]] ^ theirs[i];
      }
      phase_ = Phase::kDone;
      break;
    }
    case Phase::kDone:
      throw ProtocolError("receive_phase called after evaluation finished");
  }
}

SecureResult secure_evaluate(const Circuit& c, std::span<const std::uint8_t> my_bits,
                             Role role, MessageChannel::Endpoint& ep,
                             TripleSet& triples, LocalRng& rng) {
  GmwParty party(c, role, my_bits, triples, rng);
  run_blocking(party, ep);
  return {party.outputs(), party.transcript()};
}

JointResult secure_evaluate_lockstep(const Circuit& c,
                                     std::span<const std::uint8_t> a_bits,
                                     std::span<const std::uint8_t> b_bits,
                                     LocalRng& dealer_rng, LocalRng& rng_a,
                                     LocalRng& rng_b) {
  auto [ta, tb] = deal_triples(c.and_count(), dealer_rng);
  MessageChannel channel;
  GmwParty pa(c, Role::kA, a_bits, ta, rng_a);
  GmwParty pb(c, Role::kB, b_bits, tb, rng_b);
  run_lockstep(pa, pb, channel);
  return {{pa.outputs(), pa.transcript()}, {pb.outputs(), pb.transcript()},
          ta.consumed()};
}

}  // namespace bitpact
