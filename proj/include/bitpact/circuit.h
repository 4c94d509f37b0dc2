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
#include <span>
#include <string>
#include <vector>

namespace bitpact {

using WireId = std::uint32_t;

enum class GateKind : std::uint8_t { kXor, kAnd, kNot, kConst0, kConst1 };

std::string_view gate_kind_name(GateKind kind);

struct Gate {
  GateKind kind;
  WireId out;
  WireId in0 = 0;  // unused for constants
  WireId in1 = 0;  // used by XOR and AND only

  friend bool operator==(const Gate&, const Gate&) = default;
};

inline int gate_arity(GateKind kind) {
  switch (kind) {
    case GateKind::kXor:
    case GateKind::kAnd:
      return 2;
    case GateKind::kNot:
      return 1;
    default:
      return 0;
  }
}

// Boolean circuit over wires 0..wire_count()-1. Party A's inputs occupy the
// first wires, party B's the next ones, and every gate defines one fresh wire
// after that. Gates are stored in topological order.
class Circuit {
 public:
  Circuit(std::size_t inputs_a, std::size_t inputs_b, std::vector<Gate> gates,
          std::vector<WireId> outputs);

  std::size_t num_inputs_a() const { return inputs_a_; }
  std::size_t num_inputs_b() const { return inputs_b_; }
  std::vector<WireId> input_a_wires() const;
  std::vector<WireId> input_b_wires() const;
  std::span<const WireId> output_wires() const { return outputs_; }
  std::span<const Gate> gates() const { return gates_; }
  std::size_t wire_count() const { return inputs_a_ + inputs_b_ + gates_.size(); }

  std::size_t gate_count() const { return gates_.size(); }
  std::size_t and_count() const { return and_count_; }

  // Number of AND gates on the longest input-to-wire path.
  std::size_t and_depth() const { return and_levels_.size(); }

  // Gate indices of the AND gates, grouped by AND depth (level 0 holds gates
  // whose inputs have AND depth 0).
  const std::vector<std::vector<std::size_t>>& and_levels() const {
    return and_levels_;
  }

  // Wire AND depth for every wire.
  const std::vector<std::uint32_t>& wire_depths() const { return wire_depth_; }

  friend bool operator==(const Circuit& a, const Circuit& b) {
    return a.inputs_a_ == b.inputs_a_ && a.inputs_b_ == b.inputs_b_ &&
           a.gates_ == b.gates_ && a.outputs_ == b.outputs_;
  }

 private:
  std::size_t inputs_a_;
  std::size_t inputs_b_;
  std::vector<Gate> gates_;
  std::vector<WireId> outputs_;
  std::size_t and_count_ = 0;
  std::vector<std::uint32_t> wire_depth_;
  std::vector<std::vector<std::size_t>> and_levels_;
};

// Incremental construction helper. Wires are numbered in allocation order.
class CircuitBuilder {
 public:
  CircuitBuilder(std::size_t inputs_a, std::size_t inputs_b);

  WireId input_a(std::size_t i) const;
  WireId input_b(std::size_t i) const;

  WireId add_xor(WireId x, WireId y);
  WireId add_and(WireId x, WireId y);
  WireId add_not(WireId x);
  WireId constant(bool value);

  // OR(x, y) = NOT(AND(NOT x, NOT y)), with NOT realized as XOR with 1.
  WireId add_or(WireId x, WireId y);

  Circuit finish(std::vector<WireId> outputs) &&;

 private:
  WireId push(Gate gate);

  std::size_t inputs_a_;
  std::size_t inputs_b_;
  std::vector<Gate> gates_;
  WireId const0_ = UINT32_MAX;
  WireId const1_ = UINT32_MAX;
};

// Number of output bits of the count circuit: ceil(log2(k + 1)).
std::size_t count_width(std::size_t k);

// Upper bound on gate_count() for every circuit returned by the threshold and
// count constructors: at most kGatesPerInput * k gates.
inline constexpr std::size_t kGatesPerInput = 12;

// Binary popcount, MSB first, of the positions where the two k-bit inputs are
// equal. Uses XOR followed by XOR-with-1 per position and a column-compression
// adder tree (full adders on the three oldest bits of a column, a half adder
// on the last two), so every adder costs one AND.
Circuit build_count_circuit(std::size_t k);

// Single output bit: 1 iff the agreement count is at least r.
Circuit build_threshold_circuit(std::size_t k, std::size_t r);

// Single output bit: 1 iff the number of positions where the inputs differ is
// at least r. This is the test that gates a flip in the agreement session.
Circuit build_disagreement_threshold_circuit(std::size_t k, std::size_t r);

// Gate-by-gate evaluation; returns output bits in declared order.
std::vector<std::uint8_t> evaluate_plain(const Circuit& c,
                                         std::span<const std::uint8_t> a_bits,
                                         std::span<const std::uint8_t> b_bits);

// Reads the value encoded by MSB-first output bits.
std::uint64_t decode_msb_first(std::span<const std::uint8_t> bits);

// Text dump: header lines `INPUTS_A ...`, `INPUTS_B ...`, `OUTPUTS ...`
// followed by one `<wire> <KIND> <in1> [<in2>]` line per gate.
void write_circuit(std::ostream& os, const Circuit& c);
Circuit read_circuit(std::istream& is);

}  // namespace bitpact
