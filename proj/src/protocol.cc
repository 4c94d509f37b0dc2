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

#include "bitpact/protocol.h"

#include <algorithm>
#include <cstdio>
#include <exception>
#include <istream>
#include <memory>
#include <ostream>
#include <thread>

#include "bitpact/channel.h"
#include "bitpact/circuit.h"
#include "bitpact/csv.h"
#include "bitpact/error.h"
#include "bitpact/mpc.h"

namespace bitpact {

std::string_view mode_name(Mode mode) {
  return mode == Mode::kSecure ? "secure" : "oracle";
}

Mode parse_mode(std::string_view text) {
  if (text == "oracle") return Mode::kOracle;
  if (text == "secure") return Mode::kSecure;
  throw PreconditionError("unknown mode '" + std::string(text) +
                          "' (expected oracle or secure)");
}

void ProtocolParams::validate() const {
  require(n >= 1, "n must be at least 1");
  require(k >= 1, "k must be at least 1");
  require(k <= n, "k must not exceed n");
  require(l >= 1, "l must be at least 1");
  require(l <= k, "l must not exceed k");
  require(threshold() <= k, "r must not exceed k");
}

namespace {

constexpr std::uint64_t kDealerLabel = 0xdea1;

// What one party did during one step.
struct StepLog {
  bool flipped = false;
  PositionSet flips;
  std::optional<std::size_t> j;
  std::optional<std::size_t> s;
  std::size_t messages = 0;
};

// One party's long-lived state across steps.
struct PartyState {
  const ProtocolParams* params;
  const Circuit* circuit;  // secure mode only
  Role role;
  BitString bits;
  LocalRng* flip_rng;
  LocalRng mask_rng;
  std::uint64_t dealer_seed;

  int id() const { return static_cast<int>(index_of(role)); }
};

// Round machine for one party's side of one protocol step: the flip test
// (plain reveal or GMW), the flip itself, then the barrier token exchange.
class StepMachine {
 public:
  StepMachine(PartyState& party, std::uint64_t step)
      : party_(&party), step_(step) {
    const auto& p = *party.params;
    sample_ = joint_rand(p.seed, step, p.k, p.n);
    mine_ = restrict(party.bits, sample_).to_bits();
    if (p.mode == Mode::kSecure) {
      LocalRng dealer(derive_seed(party.dealer_seed, step));
      auto dealt = deal_triples(party.circuit->and_count(), dealer);
      triples_ = party.role == Role::kA ? std::move(dealt.first)
                                        : std::move(dealt.second);
      gmw_ = std::make_unique<GmwParty>(*party.circuit, party.role, mine_,
                                        triples_, party.mask_rng);
    }
  }

  bool done() const { return phase_ == Phase::kDone; }

  std::optional<Frame> send_phase() {
    std::optional<Frame> out;
    if (phase_ == Phase::kTest) {
      out = gmw_ ? gmw_->send_phase()
                 : std::optional<Frame>(encode_frame(FrameKind::kReveal, mine_));
    } else if (phase_ == Phase::kBarrier) {
      out = encode_frame(FrameKind::kStepDone, {});
    } else {
      throw ProtocolError("step already finished");
    }
    if (out) ++log_.messages;
    return out;
  }

  bool needs_peer_frame() const {
    if (phase_ == Phase::kTest) return gmw_ ? gmw_->needs_peer_frame() : true;
    return phase_ == Phase::kBarrier;
  }

  void receive_phase(const Frame* peer) {
    if (phase_ == Phase::kTest) {
      bool trigger = false;
      if (gmw_) {
        gmw_->receive_phase(peer);
        if (!gmw_->done()) return;
        trigger = gmw_->outputs().at(0) == 1;
      } else {
        if (peer == nullptr) throw ProtocolError("missing reveal frame");
        peer_bits_ = decode_frame(*peer, FrameKind::kReveal, mine_.size());
        std::size_t j = 0;
        for (std::size_t i = 0; i < mine_.size(); ++i) j += mine_[i] != peer_bits_[i];
        log_.j = j;
        trigger = j >= party_->params->threshold();
      }
      if (trigger && turn_at(step_) == party_->id()) flip();
      phase_ = Phase::kBarrier;
    } else if (phase_ == Phase::kBarrier) {
      if (peer == nullptr) throw ProtocolError("missing barrier token");
      decode_frame(*peer, FrameKind::kStepDone, 0);
      phase_ = Phase::kDone;
    } else {
      throw ProtocolError("step already finished");
    }
  }

  StepLog take_log() { return std::move(log_); }

 private:
  enum class Phase { kTest, kBarrier, kDone };

  void flip() {
    const auto& p = *party_->params;
    PositionSet chosen = rand_subset(*party_->flip_rng, p.l, sample_);
    if (!peer_bits_.empty()) {
      std::size_t s = 0;
      for (auto pos : chosen) {
        const auto idx = static_cast<std::size_t>(
            std::lower_bound(sample_.begin(), sample_.end(), pos) - sample_.begin());
        s += mine_[idx] != peer_bits_[idx];
      }
      log_.s = s;
    }
    party_->bits = flip_positions(party_->bits, chosen);
    log_.flipped = true;
    log_.flips = std::move(chosen);
  }

  PartyState* party_;
  std::uint64_t step_;
  Phase phase_ = Phase::kTest;
  PositionSet sample_;
  std::vector<std::uint8_t> mine_;
  std::vector<std::uint8_t> peer_bits_;
  TripleSet triples_;
  std::unique_ptr<GmwParty> gmw_;
  StepLog log_;
};

// Harness-side view of both strings, used to compute X(i) from the logs.
class AgreementTracker {
 public:
  AgreementTracker(BitString a, BitString b)
      : a_(std::move(a)), b_(std::move(b)), x_(agreement_count(a_, b_)) {}

  TraceRecord apply(std::uint64_t step, const StepLog& la, const StepLog& lb) {
    TraceRecord rec;
    rec.step = step;
    rec.turn = turn_at(step);
    for (const StepLog* log : {&la, &lb}) {
      if (!log->flipped) continue;
      BitString& target = log == &la ? a_ : b_;
      for (auto pos : log->flips) {
        if (a_[pos] == b_[pos]) {
          --x_;
        } else {
          ++x_;
        }
        target.set(pos, !target[pos]);
      }
      rec.flipped = true;
      rec.s = log->s;
    }
    rec.x = x_;
    rec.messages = la.messages + lb.messages;
    rec.j = la.j;
    return rec;
  }

  std::size_t x() const { return x_; }

 private:
  BitString a_;
  BitString b_;
  std::size_t x_;
};

struct Parties {
  std::unique_ptr<Circuit> circuit;
  PartyState a;
  PartyState b;
};

Parties make_parties(const ProtocolParams& params, const BitString& a,
                     const BitString& b, LocalRng& rng_a, LocalRng& rng_b,
                     const SessionOptions& options) {
  std::unique_ptr<Circuit> circuit;
  if (params.mode == Mode::kSecure) {
    circuit = std::make_unique<Circuit>(
        build_disagreement_threshold_circuit(params.k, params.threshold()));
  }
  const std::uint64_t dealer = derive_seed(options.mpc_seed, kDealerLabel);
  PartyState pa{&params, circuit.get(), Role::kA, a, &rng_a,
                LocalRng(derive_seed(options.mpc_seed, 1)), dealer};
  PartyState pb{&params, circuit.get(), Role::kB, b, &rng_b,
                LocalRng(derive_seed(options.mpc_seed, 2)), dealer};
  return {std::move(circuit), std::move(pa), std::move(pb)};
}

SessionResult run_lockstep_session(const ProtocolParams& params, Parties& parties,
                                   const SessionOptions& options) {
  AgreementTracker tracker(parties.a.bits, parties.b.bits);
  MessageChannel channel;
  std::vector<TraceRecord> trace;
  trace.reserve(static_cast<std::size_t>(params.t_max));
  for (std::uint64_t step = 1; step <= params.t_max; ++step) {
    try {
      if (options.fault_at_step == step) channel.close();
      StepMachine ma(parties.a, step);
      StepMachine mb(parties.b, step);
      run_lockstep(ma, mb, channel);
      trace.push_back(tracker.apply(step, ma.take_log(), mb.take_log()));
    } catch (const PreconditionError&) {
      throw;
    } catch (const std::exception& e) {
      throw SessionError(std::string("session failed at step ") +
                             std::to_string(step) + ": " + e.what(),
                         step - 1);
    }
    if (options.stop_at_density &&
        static_cast<double>(tracker.x()) >= *options.stop_at_density * params.n) {
      break;
    }
  }
  return {parties.a.bits, parties.b.bits, std::move(trace)};
}

SessionResult run_threaded_session(const ProtocolParams& params, Parties& parties,
                                   const SessionOptions& options) {
  require(!options.stop_at_density,
          "density stop is only available with lockstep scheduling");
  MessageChannel channel;
  const BitString a0 = parties.a.bits;
  const BitString b0 = parties.b.bits;
  struct Worker {
    std::vector<StepLog> logs;
    std::exception_ptr error;
  };
  Worker wa;
  Worker wb;
  auto body = [&](PartyState& party, Worker& w) {
    auto ep = channel.endpoint(party.role);
    try {
      for (std::uint64_t step = 1; step <= params.t_max; ++step) {
        if (party.role == Role::kA && options.fault_at_step == step) channel.close();
        StepMachine m(party, step);
        run_blocking(m, ep);
        w.logs.push_back(m.take_log());
      }
    } catch (...) {
      w.error = std::current_exception();
      channel.close();
    }
  };
  std::thread ta(body, std::ref(parties.a), std::ref(wa));
  std::thread tb(body, std::ref(parties.b), std::ref(wb));
  ta.join();
  tb.join();

  if (wa.error || wb.error) {
    const std::uint64_t completed = std::min(wa.logs.size(), wb.logs.size());
    std::string what = "session failed";
    try {
      std::rethrow_exception(wa.error ? wa.error : wb.error);
    } catch (const std::exception& e) {
      what += std::string(": ") + e.what();
    }
    throw SessionError(what, completed);
  }
  AgreementTracker tracker(a0, b0);
  std::vector<TraceRecord> trace;
  trace.reserve(wa.logs.size());
  for (std::size_t i = 0; i < wa.logs.size(); ++i) {
    trace.push_back(tracker.apply(i + 1, wa.logs[i], wb.logs[i]));
  }
  return {parties.a.bits, parties.b.bits, std::move(trace)};
}

}  // namespace

SessionResult run_session(const ProtocolParams& params, const BitString& a,
                          const BitString& b, LocalRng& rng_a, LocalRng& rng_b,
                          const SessionOptions& options) {
  params.validate();
  require(a.size() == params.n && b.size() == params.n,
          "input strings must both have length n=" + std::to_string(params.n));
  Parties parties = make_parties(params, a, b, rng_a, rng_b, options);
  if (options.scheduling == Scheduling::kThreaded) {
    return run_threaded_session(params, parties, options);
  }
  return run_lockstep_session(params, parties, options);
}

void write_trace_csv(std::ostream& os, const std::vector<TraceRecord>& trace,
                     std::size_t n, bool with_oracle_fields) {
  os << "step,X,density,turn,flipped,msgs";
  if (with_oracle_fields) os << ",j,s";
  os << '\n';
  char density[32];
  for (const auto& r : trace) {
    std::snprintf(density, sizeof density, "%.6f",
                  static_cast<double>(r.x) / static_cast<double>(n));
    os << r.step << ',' << r.x << ',' << density << ',' << r.turn << ','
       << (r.flipped ? 1 : 0) << ',' << r.messages;
    if (with_oracle_fields) {
      os << ',';
      if (r.j) os << *r.j;
      os << ',';
      if (r.s) os << *r.s;
    }
    os << '\n';
  }
}

std::vector<TraceRecord> read_trace_csv(std::istream& is) {
  const CsvTable table = read_csv(is);
  const std::size_t c_step = table.column("step");
  const std::size_t c_x = table.column("X");
  table.column("density");
  const std::size_t c_turn = table.column("turn");
  const std::size_t c_flip = table.column("flipped");
  const std::size_t c_msgs = table.column("msgs");
  const bool oracle = table.has_column("j");
  std::vector<TraceRecord> out;
  out.reserve(table.rows.size());
  for (const auto& row : table.rows) {
    TraceRecord r;
    r.step = parse_unsigned(row[c_step]);
    r.x = parse_unsigned(row[c_x]);
    r.turn = static_cast<int>(parse_unsigned(row[c_turn]));
    r.flipped = parse_unsigned(row[c_flip]) != 0;
    r.messages = parse_unsigned(row[c_msgs]);
    if (oracle) {
      const auto& j = row[table.column("j")];
      const auto& s = row[table.column("s")];
      if (!j.empty()) r.j = parse_unsigned(j);
      if (!s.empty()) r.s = parse_unsigned(s);
    }
    out.push_back(r);
  }
  return out;
}

TrialSeeds trial_seeds(std::uint64_t base_seed, std::uint64_t trial) {
  const std::uint64_t root = derive_seed(base_seed, trial);
  return {derive_seed(root, 0), SharedSeed{derive_seed(root, 1)},
          derive_seed(root, 2), derive_seed(root, 3)};
}

namespace {

std::vector<std::uint32_t> run_one_trial(const ProtocolParams& params,
                                         std::size_t x0_count,
                                         std::uint64_t base_seed,
                                         std::uint64_t trial) {
  const TrialSeeds seeds = trial_seeds(base_seed, trial);
  LocalRng setup(seeds.setup);
  auto [a, b] = make_pair_with_agreement(params.n, x0_count, setup);
  ProtocolParams p = params;
  p.seed = seeds.shared;
  LocalRng rng_a(seeds.rng_a);
  LocalRng rng_b(seeds.rng_b);
  const SessionResult result = [&] {
    try {
      return run_session(p, a, b, rng_a, rng_b);
    } catch (const SessionError& e) {
      throw SessionError("trial " + std::to_string(trial) + ": " + e.what(),
                         e.last_completed_step());
    }
  }();
  std::vector<std::uint32_t> xs;
  xs.reserve(result.trace.size() + 1);
  xs.push_back(static_cast<std::uint32_t>(x0_count));
  for (const auto& r : result.trace) xs.push_back(static_cast<std::uint32_t>(r.x));
  return xs;
}

// Calls fn(trial) for every trial, splitting contiguous ranges over workers.
template <typename Fn>
void parallel_trials(std::size_t trials, unsigned workers, Fn&& fn) {
  workers = std::max(1u, std::min<unsigned>(workers, static_cast<unsigned>(trials)));
  if (workers == 1) {
    for (std::size_t t = 0; t < trials; ++t) fn(0u, t);
    return;
  }
  std::vector<std::thread> pool;
  std::vector<std::exception_ptr> errors(workers);
  for (unsigned w = 0; w < workers; ++w) {
    pool.emplace_back([&, w] {
      const std::size_t begin = trials * w / workers;
      const std::size_t end = trials * (w + 1) / workers;
      try {
        for (std::size_t t = begin; t < end; ++t) fn(w, t);
      } catch (...) {
        errors[w] = std::current_exception();
      }
    });
  }
  for (auto& th : pool) th.join();
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
}

}  // namespace

std::vector<std::vector<std::uint32_t>> run_trials(const ProtocolParams& params,
                                                   std::size_t x0_count,
                                                   std::size_t trials,
                                                   std::uint64_t base_seed,
                                                   unsigned workers) {
  params.validate();
  require(x0_count <= params.n, "x0 count must not exceed n");
  require(trials >= 1, "trials must be at least 1");
  std::vector<std::vector<std::uint32_t>> out(trials);
  parallel_trials(trials, workers, [&](unsigned, std::size_t t) {
    out[t] = run_one_trial(params, x0_count, base_seed, t);
  });
  return out;
}

MonteCarloStats run_monte_carlo(const ProtocolParams& params, std::size_t x0_count,
                                std::size_t trials, std::uint64_t base_seed,
                                unsigned workers) {
  params.validate();
  require(x0_count <= params.n, "x0 count must not exceed n");
  require(trials >= 1, "trials must be at least 1");
  const std::size_t len = static_cast<std::size_t>(params.t_max) + 1;
  workers = std::max(1u, std::min<unsigned>(workers, static_cast<unsigned>(trials)));
  // Integer sums are exact, so the reduction does not depend on scheduling.
  std::vector<std::vector<std::uint64_t>> sum(workers, std::vector<std::uint64_t>(len));
  std::vector<std::vector<unsigned __int128>> sum_sq(
      workers, std::vector<unsigned __int128>(len));
  parallel_trials(trials, workers, [&](unsigned w, std::size_t t) {
    const auto xs = run_one_trial(params, x0_count, base_seed, t);
    for (std::size_t i = 0; i < xs.size(); ++i) {
      sum[w][i] += xs[i];
      sum_sq[w][i] += static_cast<unsigned __int128>(xs[i]) * xs[i];
    }
  });
  MonteCarloStats stats;
  stats.trials = trials;
  stats.mean.resize(len);
  stats.variance.resize(len);
  const long double count = static_cast<long double>(trials);
  for (std::size_t i = 0; i < len; ++i) {
    std::uint64_t s = 0;
    unsigned __int128 sq = 0;
    for (unsigned w = 0; w < workers; ++w) {
      s += sum[w][i];
      sq += sum_sq[w][i];
    }
    const long double mean = static_cast<long double>(s) / count;
    stats.mean[i] = static_cast<double>(mean);
    if (trials > 1) {
      // (sum x^2 - (sum x)^2 / N) / (N - 1), with the subtraction done exactly.
      const unsigned __int128 s128 = s;
      const unsigned __int128 centered = sq * trials - s128 * s128;
      stats.variance[i] = static_cast<double>(static_cast<long double>(centered) /
                                              (count * (count - 1)));
    }
  }
  return stats;
}

}  // namespace bitpact
