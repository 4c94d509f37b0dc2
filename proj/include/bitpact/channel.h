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

#include <array>
#include <condition_variable>
#include <cstddef>
#include <cstdint>
#include <deque>
#include <mutex>
#include <optional>
#include <span>
#include <vector>

#include "bitpact/error.h"

namespace bitpact {

enum class Role : std::uint8_t { kA = 0, kB = 1 };

constexpr Role peer_of(Role r) { return r == Role::kA ? Role::kB : Role::kA; }
constexpr std::size_t index_of(Role r) { return static_cast<std::size_t>(r); }

// Wire framing: 4-byte big-endian payload length, 1 kind byte, then the
// payload bits packed 8 per byte, least significant bit first, zero padded.
enum class FrameKind : std::uint8_t {
  kInputShare = 0x01,
  kAndMask = 0x02,
  kOutputOpen = 0x03,
  // Session-level kinds used by the agreement protocol driver.
  kReveal = 0x10,
  kStepDone = 0x11,
};

inline constexpr std::size_t kFrameHeaderBytes = 5;

using Frame = std::vector<std::uint8_t>;

Frame encode_frame(FrameKind kind, std::span<const std::uint8_t> bits);

FrameKind frame_kind(const Frame& frame);

// Validates header, kind, payload size and zero padding, and unpacks exactly
// `expected_bits` bits. Any mismatch raises ProtocolError.
std::vector<std::uint8_t> decode_frame(const Frame& frame, FrameKind expected,
                                       std::size_t expected_bits);

// In-memory duplex link between parties A and B: one FIFO per direction,
// reliable and in order. recv() blocks until a frame arrives or the channel is
// closed.
class MessageChannel {
 public:
  class Endpoint {
   public:
    Endpoint(MessageChannel& channel, Role role)
        : channel_(&channel), role_(role) {}

    Role role() const { return role_; }
    void send(Frame frame) { channel_->send(role_, std::move(frame)); }
    Frame recv() { return channel_->recv(role_); }
    std::optional<Frame> try_recv() { return channel_->try_recv(role_); }

   private:
    MessageChannel* channel_;
    Role role_;
  };

  MessageChannel() = default;
  MessageChannel(const MessageChannel&) = delete;
  MessageChannel& operator=(const MessageChannel&) = delete;

  Endpoint endpoint(Role role) { return Endpoint(*this, role); }

  void send(Role from, Frame frame);
  Frame recv(Role to);
  std::optional<Frame> try_recv(Role to);

  // Wakes blocked receivers; subsequent sends throw ChannelClosedError.
  // Frames already queued are still delivered, after which receives throw.
  void close();
  bool closed() const;

  std::uint64_t sent_by(Role r) const;
  std::uint64_t delivered_to(Role r) const;
  std::size_t pending_for(Role r) const;

 private:
  mutable std::mutex mu_;
  std::condition_variable cv_;
  std::array<std::deque<Frame>, 2> inbox_;  // indexed by receiver
  std::array<std::uint64_t, 2> sent_{0, 0};
  std::array<std::uint64_t, 2> delivered_{0, 0};
  bool closed_ = false;
};

// A party-side state machine that advances in synchronous rounds: in every
// round it may emit one frame, then may consume the peer's frame for that
// round. Both peers agree on the number of rounds.
template <typename M>
concept RoundMachine = requires(M m, const Frame* f) {
  { m.done() } -> std::convertible_to<bool>;
  { m.send_phase() } -> std::same_as<std::optional<Frame>>;
  { m.needs_peer_frame() } -> std::convertible_to<bool>;
  m.receive_phase(f);
};

// Drives one machine over a blocking endpoint until done (threaded use).
template <RoundMachine M>
void run_blocking(M& machine, MessageChannel::Endpoint& ep) {
  while (!machine.done()) {
    if (auto out = machine.send_phase()) ep.send(std::move(*out));
    if (machine.needs_peer_frame()) {
      const Frame in = ep.recv();
      machine.receive_phase(&in);
    } else {
      machine.receive_phase(nullptr);
    }
  }
}

// Interleaves both parties in the calling thread: each round, both send, then
// both receive. Produces the same frames as two threads running run_blocking.
template <RoundMachine MA, RoundMachine MB>
void run_lockstep(MA& a, MB& b, MessageChannel& channel) {
  auto receive = [&channel](auto& machine, Role role) {
    if (!machine.needs_peer_frame()) {
      machine.receive_phase(nullptr);
      return;
    }
    auto in = channel.try_recv(role);
    if (!in) throw ProtocolError("lockstep: peer sent no frame this round");
    machine.receive_phase(&*in);
  };
  while (!a.done() || !b.done()) {
    if (a.done() != b.done()) {
      throw ProtocolError("lockstep: parties disagree on round count");
    }
    if (auto out = a.send_phase()) channel.send(Role::kA, std::move(*out));
    if (auto out = b.send_phase()) channel.send(Role::kB, std::move(*out));
    receive(a, Role::kA);
    receive(b, Role::kB);
  }
}

}  // namespace bitpact
