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

#include "bitpact/channel.h"

#include <string>

namespace bitpact {

Frame encode_frame(FrameKind kind, std::span<const std::uint8_t> bits) {
  const std::size_t payload = (bits.size() + 7) / 8;
  Frame frame(kFrameHeaderBytes + payload, 0);
  frame[0] = static_cast<std::uint8_t>(payload >> 24);
  frame[1] = static_cast<std::uint8_t>(payload >> 16);
  frame[2] = static_cast<std::uint8_t>(payload >> 8);
  frame[3] = static_cast<std::uint8_t>(payload);
  frame[4] = static_cast<std::uint8_t>(kind);
  for (std::size_t i = 0; i < bits.size(); ++i) {
    if (bits[i] & 1u) {
      frame[kFrameHeaderBytes + i / 8] |= static_cast<std::uint8_t>(1u << (i % 8));
    }
  }
  return frame;
}

FrameKind frame_kind(const Frame& frame) {
  if (frame.size() < kFrameHeaderBytes) {
    throw ProtocolError("frame shorter than header");
  }
  return static_cast<FrameKind>(frame[4]);
}

std::vector<std::uint8_t> decode_frame(const Frame& frame, FrameKind expected,
                                       std::size_t expected_bits) {
  if (frame.size() < kFrameHeaderBytes) {
    throw ProtocolError("frame shorter than header");
  }
  const std::size_t declared = (std::size_t{frame[0]} << 24) |
                               (std::size_t{frame[1]} << 16) |
                               (std::size_t{frame[2]} << 8) | frame[3];
  if (declared != frame.size() - kFrameHeaderBytes) {
    throw ProtocolError("frame length field " + std::to_string(declared) +
                        " disagrees with " +
                        std::to_string(frame.size() - kFrameHeaderBytes) +
                        " payload bytes");
  }
  if (frame[4] != static_cast<std::uint8_t>(expected)) {
    throw ProtocolError("unexpected frame kind " + std::to_string(frame[4]) +
                        ", expected " +
                        std::to_string(static_cast<int>(expected)));
  }
  if (declared != (expected_bits + 7) / 8) {
    throw ProtocolError("payload of " + std::to_string(declared) +
                        " bytes cannot hold exactly " +
                        std::to_string(expected_bits) + " bits");
  }
  std::vector<std::uint8_t> bits(expected_bits);
  for (std::size_t i = 0; i < expected_bits; ++i) {
    bits[i] = (frame[kFrameHeaderBytes + i / 8] >> (i % 8)) & 1u;
  }
  if (expected_bits % 8 != 0) {
    const std::uint8_t last = frame.back();
    if (last >> (expected_bits % 8)) throw ProtocolError("nonzero frame padding");
  }
  return bits;
}

void MessageChannel::send(Role from, Frame frame) {
  {
    std::lock_guard<std::mutex> lock(mu_);
    if (closed_) throw ChannelClosedError();
    inbox_[index_of(peer_of(from))].push_back(std::move(frame));
    ++sent_[index_of(from)];
  }
  cv_.notify_all();
}

Frame MessageChannel::recv(Role to) {
  std::unique_lock<std::mutex> lock(mu_);
  auto& box = inbox_[index_of(to)];
  cv_.wait(lock, [&] { return closed_ || !box.empty(); });
  if (box.empty()) throw ChannelClosedError();
  Frame frame = std::move(box.front());
  box.pop_front();
  ++delivered_[index_of(to)];
  return frame;
}

std::optional<Frame> MessageChannel::try_recv(Role to) {
  std::lock_guard<std::mutex> lock(mu_);
  auto& box = inbox_[index_of(to)];
  if (box.empty()) {
    if (closed_) throw ChannelClosedError();
    return std::nullopt;
  }
  Frame frame = std::move(box.front());
  box.pop_front();
  ++delivered_[index_of(to)];
  return frame;
}

void MessageChannel::close() {
  {
    std::lock_guard<std::mutex> lock(mu_);
    closed_ = true;
  }
  cv_.notify_all();
}

bool MessageChannel::closed() const {
  std::lock_guard<std::mutex> lock(mu_);
  return closed_;
}

std::uint64_t MessageChannel::sent_by(Role r) const {
  std::lock_guard<std::mutex> lock(mu_);
  return sent_[index_of(r)];
}

std::uint64_t MessageChannel::delivered_to(Role r) const {
  std::lock_guard<std::mutex> lock(mu_);
  return delivered_[index_of(r)];
}

std::size_t MessageChannel::pending_for(Role r) const {
  std::lock_guard<std::mutex> lock(mu_);
  return inbox_[index_of(r)].size();
}

}  // namespace bitpact
