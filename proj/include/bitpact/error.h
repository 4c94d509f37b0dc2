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

#include <cstdint>
#include <stdexcept>
#include <string>

namespace bitpact {

// Caller passed arguments that violate an operation's contract.
class PreconditionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// A peer sent something the local state machine did not expect (wrong frame
// kind, wrong payload size, circuit or role mismatch).
class ProtocolError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ChannelClosedError : public std::runtime_error {
 public:
  ChannelClosedError() : std::runtime_error("channel closed") {}
};

// Raised by the session driver. `last_completed_step` is 0 when the failure
// happened before step 1 finished.
class SessionError : public std::runtime_error {
 public:
  SessionError(const std::string& what, std::uint64_t last_completed_step)
      : std::runtime_error(what), last_completed_step_(last_completed_step) {}

  std::uint64_t last_completed_step() const { return last_completed_step_; }

 private:
  std::uint64_t last_completed_step_;
};

inline void require(bool condition, const std::string& message) {
  if (!condition) throw PreconditionError(message);
}

}  // namespace bitpact
