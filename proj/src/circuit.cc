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

#include "bitpact/circuit.h"

#include <algorithm>
#include <deque>
#include <istream>
#include <optional>
#include <ostream>
#include <sstream>

#include "bitpact/error.h"

namespace bitpact {

std::string_view gate_kind_name(GateKind kind) {
  switch (kind) {
    case GateKind::kXor:
      return "XOR";
    case GateKind::kAnd:
      return "AND";
    case GateKind::kNot:
      return "NOT";
    case GateKind::kConst0:
      return "CONST0";
    case GateKind::kConst1:
      return "CONST1";
  }
  return "?";
}

Circuit::Circuit(std::size_t inputs_a, std::size_t inputs_b,
                 std::vector<Gate> gates, std::vector<WireId> outputs)
    : inputs_a_(inputs_a),
      inputs_b_(inputs_b),
      gates_(std::move(gates)),
      outputs_(std::move(outputs)) {
  const std::size_t inputs = inputs_a_ + inputs_b_;
  wire_depth_.assign(wire_count(), 0);
  for (std::size_t i = 0; i < gates_.size(); ++i) {
    const Gate& g = gates_[i];
    require(g.out == inputs + i, "gate " + std::to_string(i) +
                                     " must define wire " +
                                     std::to_string(inputs + i));
    const int arity = gate_arity(g.kind);
    require(arity < 1 || g.in0 < g.out,
            "gate on wire " + std::to_string(g.out) + " reads a later wire");
    require(arity < 2 || g.in1 < g.out,
            "gate on wire " + std::to_string(g.out) + " reads a later wire");
    std::uint32_t depth = 0;
    if (arity >= 1) depth = wire_depth_[g.in0];
    if (arity == 2) depth = std::max(depth, wire_depth_[g.in1]);
    if (g.kind == GateKind::kAnd) {
      if (and_levels_.size() <= depth) and_levels_.resize(depth + 1);
      and_levels_[depth].push_back(i);
      ++and_count_;
      ++depth;
    }
    wire_depth_[g.out] = depth;
  }
  for (auto w : outputs_) {
    require(w < wire_count(), "output wire " + std::to_string(w) + " undefined");
  }
}

std::vector<WireId> Circuit::input_a_wires() const {
  std::vector<WireId> out(inputs_a_);
  for (std::size_t i = 0; i < inputs_a_; ++i) out[i] = static_cast<WireId>(i);
  return out;
}

std::vector<WireId> Circuit::input_b_wires() const {
  std::vector<WireId> out(inputs_b_);
  for (std::size_t i = 0; i < inputs_b_; ++i) {
    out[i] = static_cast<WireId>(inputs_a_ + i);
  }
  return out;
}

CircuitBuilder::CircuitBuilder(std::size_t inputs_a, std::size_t inputs_b)
    : inputs_a_(inputs_a), inputs_b_(inputs_b) {}

WireId CircuitBuilder::input_a(std::size_t i) const {
  require(i < inputs_a_, "party A input index out of range");
  return static_cast<WireId>(i);
}

WireId CircuitBuilder::input_b(std::size_t i) const {
  require(i < inputs_b_, "party B input index out of range");
  return static_cast<WireId>(inputs_a_ + i);
}

WireId CircuitBuilder::push(Gate gate) {
  gate.out = static_cast<WireId>(inputs_a_ + inputs_b_ + gates_.size());
  gates_.push_back(gate);
  return gate.out;
}

WireId CircuitBuilder::add_xor(WireId x, WireId y) {
  return push({GateKind::kXor, 0, x, y});
}

WireId CircuitBuilder::add_and(WireId x, WireId y) {
  return push({GateKind::kAnd, 0, x, y});
}

WireId CircuitBuilder::add_not(WireId x) { return add_xor(x, constant(true)); }

WireId CircuitBuilder::constant(bool value) {
  WireId& slot = value ? const1_ : const0_;
  if (slot == UINT32_MAX) {
    slot = push({value ? GateKind::kConst1 : GateKind::kConst0, 0});
  }
  return slot;
}

WireId CircuitBuilder::add_or(WireId x, WireId y) {
  return add_not(add_and(add_not(x), add_not(y)));
}

Circuit CircuitBuilder::finish(std::vector<WireId> outputs) && {
  return Circuit(inputs_a_, inputs_b_, std::move(gates_), std::move(outputs));
}

std::size_t count_width(std::size_t k) {
  std::size_t width = 1;
  while ((std::uint64_t{1} << width) <= k) ++width;
  return width;
}

namespace {

// Sums single-bit wires into a binary number; returns LSB-first wires, padded
// with CONST0 to `width` bits.
std::vector<WireId> popcount_wires(CircuitBuilder& b, std::vector<WireId> bits,
                                   std::size_t width) {
  std::vector<std::deque<WireId>> columns(1);
  columns[0].assign(bits.begin(), bits.end());
  for (std::size_t w = 0; w < columns.size(); ++w) {
    while (columns[w].size() >= 2) {
      if (columns.size() == w + 1) columns.emplace_back();
      auto& col = columns[w];
      const WireId x = col.front();
      col.pop_front();
      const WireId y = col.front();
      col.pop_front();
      if (!col.empty()) {
        const WireId z = col.front();
        col.pop_front();
        // sum = x^y^z, carry = ((x^z)&(y^z))^z
        const WireId sum = b.add_xor(b.add_xor(x, y), z);
        const WireId carry =
            b.add_xor(b.add_and(b.add_xor(x, z), b.add_xor(y, z)), z);
        col.push_back(sum);
        columns[w + 1].push_back(carry);
      } else {
        col.push_back(b.add_xor(x, y));
        columns[w + 1].push_back(b.add_and(x, y));
      }
    }
  }
  // Columns at or above `width` would contribute at least 2^width > k, so
  // their single remaining wire is constant zero and is dropped.
  std::vector<WireId> out(width);
  for (std::size_t w = 0; w < width; ++w) {
    out[w] = (w < columns.size() && !columns[w].empty()) ? columns[w].front()
                                                         : b.constant(false);
  }
  return out;
}

// 1 iff the LSB-first number on `x` is >= r.
WireId greater_equal_const(CircuitBuilder& b, const std::vector<WireId>& x,
                           std::uint64_t r) {
  if (r == 0) return b.constant(true);
  std::optional<WireId> ge;  // nullopt means constant 1
  for (std::size_t i = 0; i < x.size(); ++i) {
    const bool r_bit = (r >> i) & 1u;
    if (r_bit) {
      ge = ge ? b.add_and(x[i], *ge) : x[i];
    } else if (ge) {
      ge = b.add_or(x[i], *ge);
    }
  }
  return ge ? *ge : b.constant(true);
}

std::vector<WireId> per_position(CircuitBuilder& b, std::size_t k, bool agree) {
  std::vector<WireId> bits(k);
  for (std::size_t i = 0; i < k; ++i) {
    const WireId differ = b.add_xor(b.input_a(i), b.input_b(i));
    bits[i] = agree ? b.add_not(differ) : differ;
  }
  return bits;
}

Circuit threshold_circuit(std::size_t k, std::size_t r, bool agree) {
  require(k >= 1, "circuit input size k must be at least 1");
  require(r <= k, "threshold r=" + std::to_string(r) + " must lie in [0, " +
                      std::to_string(k) + "]");
  CircuitBuilder b(k, k);
  if (r == 0) {
    const WireId one = b.constant(true);
    return std::move(b).finish({one});
  }
  auto count = popcount_wires(b, per_position(b, k, agree), count_width(k));
  const WireId out = greater_equal_const(b, count, r);
  return std::move(b).finish({out});
}

}  // namespace

Circuit build_count_circuit(std::size_t k) {
  require(k >= 1, "circuit input size k must be at least 1");
  CircuitBuilder b(k, k);
  auto count = popcount_wires(b, per_position(b, k, true), count_width(k));
  std::reverse(count.begin(), count.end());
  return std::move(b).finish(std::move(count));
}

Circuit build_threshold_circuit(std::size_t k, std::size_t r) {
  return threshold_circuit(k, r, true);
}

Circuit build_disagreement_threshold_circuit(std::size_t k, std::size_t r) {
  return threshold_circuit(k, r, false);
}

std::vector<std::uint8_t> evaluate_plain(const Circuit& c,
                                         std::span<const std::uint8_t> a_bits,
                                         std::span<const std::uint8_t> b_bits) {
  require(a_bits.size() == c.num_inputs_a(),
          "party A supplied " + std::to_string(a_bits.size()) +
              " bits, circuit expects " + std::to_string(c.num_inputs_a()));
  require(b_bits.size() == c.num_inputs_b(),
          "party B supplied " + std::to_string(b_bits.size()) +
              " bits, circuit expects " + std::to_string(c.num_inputs_b()));
  std::vector<std::uint8_t> wires(c.wire_count(), 0);
  std::copy(a_bits.begin(), a_bits.end(), wires.begin());
  std::copy(b_bits.begin(), b_bits.end(), wires.begin() + a_bits.size());
  for (const Gate& g : c.gates()) {
    std::uint8_t v = 0;
    switch (g.kind) {
      case GateKind::kXor:
        v = wires[g.in0] ^ wires[g.in1];
        break;
      case GateKind::kAnd:
        v = wires[g.in0] & wires[g.in1];
        break;
      case GateKind::kNot:
        v = wires[g.in0] ^ 1u;
        break;
      case GateKind::kConst0:
        v = 0;
        break;
      case GateKind::kConst1:
        v = 1;
        break;
    }
    wires[g.out] = v & 1u;
  }
  std::vector<std::uint8_t> out;
  out.reserve(c.output_wires().size());
  for (auto w : c.output_wires()) out.push_back(wires[w]);
  return out;
}

std::uint64_t decode_msb_first(std::span<const std::uint8_t> bits) {
  std::uint64_t value = 0;
  for (auto bit : bits) value = (value << 1) | (bit & 1u);
  return value;
}

void write_circuit(std::ostream& os, const Circuit& c) {
  auto list = [&](std::string_view tag, const auto& wires) {
    os << tag;
    for (auto w : wires) os << ' ' << w;
    os << '\n';
  };
  list("INPUTS_A", c.input_a_wires());
  list("INPUTS_B", c.input_b_wires());
  list("OUTPUTS", c.output_wires());
  for (const Gate& g : c.gates()) {
    os << g.out << ' ' << gate_kind_name(g.kind);
    const int arity = gate_arity(g.kind);
    if (arity >= 1) os << ' ' << g.in0;
    if (arity == 2) os << ' ' << g.in1;
    os << '\n';
  }
}

namespace {

std::vector<WireId> read_wire_list(const std::string& line,
                                   std::string_view tag) {
  std::istringstream ls(line);
  std::string head;
  ls >> head;
  if (head != tag) {
    throw PreconditionError("circuit dump: expected '" + std::string(tag) +
                            "' header, got '" + head + "'");
  }
  std::vector<WireId> wires;
  WireId w;
  while (ls >> w) wires.push_back(w);
  if (!ls.eof()) {
    throw PreconditionError("circuit dump: malformed '" + std::string(tag) +
                            "' line");
  }
  return wires;
}

GateKind parse_kind(const std::string& name) {
  for (auto kind : {GateKind::kXor, GateKind::kAnd, GateKind::kNot,
                    GateKind::kConst0, GateKind::kConst1}) {
    if (gate_kind_name(kind) == name) return kind;
  }
  throw PreconditionError("circuit dump: unknown gate kind '" + name + "'");
}

}  // namespace

Circuit read_circuit(std::istream& is) {
  std::string line;
  auto next_line = [&](std::string_view what) {
    if (!std::getline(is, line)) {
      throw PreconditionError("circuit dump: missing " + std::string(what));
    }
  };
  next_line("INPUTS_A");
  const auto a = read_wire_list(line, "INPUTS_A");
  next_line("INPUTS_B");
  const auto b = read_wire_list(line, "INPUTS_B");
  next_line("OUTPUTS");
  auto outputs = read_wire_list(line, "OUTPUTS");
  for (std::size_t i = 0; i < a.size(); ++i) {
    require(a[i] == i, "circuit dump: party A inputs must be wires 0..");
  }
  for (std::size_t i = 0; i < b.size(); ++i) {
    require(b[i] == a.size() + i, "circuit dump: party B inputs must follow A");
  }
  std::vector<Gate> gates;
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    std::istringstream ls(line);
    Gate g{GateKind::kConst0, 0};
    std::string kind;
    if (!(ls >> g.out >> kind)) {
      throw PreconditionError("circuit dump: malformed gate line '" + line + "'");
    }
    g.kind = parse_kind(kind);
    const int arity = gate_arity(g.kind);
    if ((arity >= 1 && !(ls >> g.in0)) || (arity == 2 && !(ls >> g.in1))) {
      throw PreconditionError("circuit dump: missing operand in '" + line + "'");
    }
    gates.push_back(g);
  }
  return Circuit(a.size(), b.size(), std::move(gates), std::move(outputs));
}

}  // namespace bitpact
