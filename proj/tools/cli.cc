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

#include "cli.h"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <optional>
#include <ostream>
#include <sstream>

#include "CLI11.hpp"
#include "bitpact/analysis.h"
#include "bitpact/circuit.h"
#include "bitpact/error.h"
#include "bitpact/mpc.h"
#include "bitpact/protocol.h"

namespace bitpact::cli {
namespace {

// Raised for invalid flag combinations; reported with exit code 2.
class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Options {
  std::optional<std::size_t> n;
  std::size_t k = 5;
  std::size_t l = 2;
  std::optional<std::size_t> r;
  std::string seed = "1";
  std::string mode = "oracle";
  std::string scheduling = "lockstep";
  std::optional<double> x0;
  std::optional<std::string> init_a;
  std::optional<std::string> init_b;
  std::optional<std::uint64_t> steps;
  std::size_t trials = 10;
  unsigned workers = 1;
  double dt = analysis::kDefaultDt;
  double t_end = 10.0;
  std::size_t stride = 1;
  std::optional<double> stop_at;
  std::string out;

  // bounds
  std::vector<int> ks{2, 3, 5};
  std::vector<int> ls{1, 2};
  std::vector<double> x0s{0.05, 0.1, 0.2};
  std::vector<double> targets{0.2, 0.4, 0.6};
  std::vector<double> hs;
  double slack = 1e-9;

  // mpc-demo
  std::string circuit = "threshold";
  std::optional<std::string> input_a;
  std::optional<std::string> input_b;
};

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.9g", v);
  return buf;
}

std::uint64_t seed_of(const Options& o) {
  try {
    return parse_seed(o.seed).value;
  } catch (const PreconditionError& e) {
    throw UsageError(e.what());
  }
}

ProtocolParams params_of(const Options& o, std::size_t n) {
  ProtocolParams p;
  p.n = n;
  p.k = o.k;
  p.l = o.l;
  p.r = o.r;
  p.mode = parse_mode(o.mode);
  p.validate();
  return p;
}

std::size_t count_from_density(double x0, std::size_t n) {
  if (!(x0 >= 0.0 && x0 <= 1.0)) throw UsageError("--x0 must lie in [0, 1]");
  return static_cast<std::size_t>(std::llround(x0 * static_cast<double>(n)));
}

int cmd_simulate(const Options& o, std::ostream& out) {
  const bool strings = o.init_a || o.init_b;
  if (o.x0.has_value() == strings) {
    throw UsageError("give exactly one of --x0 or --init-a/--init-b");
  }
  if (strings && !(o.init_a && o.init_b)) {
    throw UsageError("--init-a and --init-b must be given together");
  }
  const TrialSeeds seeds = trial_seeds(seed_of(o), 0);
  std::optional<BitString> a;
  std::optional<BitString> b;
  std::size_t n = 0;
  if (strings) {
    a = BitString::from_string(*o.init_a);
    b = BitString::from_string(*o.init_b);
    n = o.n.value_or(a->size());
    if (a->size() != n || b->size() != n) {
      throw UsageError("--init-a and --init-b must both have length n");
    }
  } else {
    if (!o.n) throw UsageError("--n is required with --x0");
    n = *o.n;
  }
  ProtocolParams p = params_of(o, n);
  p.t_max = o.steps.value_or(1000);
  p.seed = seeds.shared;
  if (!strings) {
    LocalRng setup(seeds.setup);
    auto pair = make_pair_with_agreement(n, count_from_density(*o.x0, n), setup);
    a = std::move(pair.first);
    b = std::move(pair.second);
  }
  SessionOptions options;
  options.scheduling =
      o.scheduling == "threaded" ? Scheduling::kThreaded : Scheduling::kLockstep;
  options.stop_at_density = o.stop_at;
  LocalRng rng_a(seeds.rng_a);
  LocalRng rng_b(seeds.rng_b);
  const SessionResult result = run_session(p, *a, *b, rng_a, rng_b, options);
  write_trace_csv(out, result.trace, n, p.mode == Mode::kOracle);
  return kExitOk;
}

int cmd_compare(const Options& o, std::ostream& out) {
  if (!o.n) throw UsageError("--n is required");
  if (!o.x0) throw UsageError("--x0 is required");
  if (o.init_a || o.init_b) throw UsageError("compare takes --x0, not explicit strings");
  if (o.trials < 1) throw UsageError("--trials must be at least 1");
  if (o.stride < 1) throw UsageError("--stride must be at least 1");
  const std::size_t n = *o.n;
  ProtocolParams p = params_of(o, n);
  if (p.threshold() != (p.k + 1) / 2) {
    throw UsageError("compare needs the default threshold r = ceil(k/2)");
  }
  p.t_max = o.steps.value_or(5 * n);
  if (p.t_max < 1) throw UsageError("--steps must be at least 1");
  const std::size_t x0_count = count_from_density(*o.x0, n);
  const auto stats = run_monte_carlo(p, x0_count, o.trials, seed_of(o), o.workers);

  const double scale = static_cast<double>(n);
  const double t_end = static_cast<double>(p.t_max) / scale;
  const analysis::DriftModel model(static_cast<int>(p.k), static_cast<int>(p.l));
  const auto ode = analysis::integrate_ode(model, static_cast<double>(x0_count) / scale,
                                           t_end, std::min(o.dt, t_end));
  out << "t,x_ode,x_empirical_mean,abs_dev\n";
  double worst = 0.0;
  for (std::uint64_t i = 0; i <= p.t_max; ++i) {
    const double t = static_cast<double>(i) / scale;
    const double x_ode = ode.at(std::min(t, t_end));
    const double x_emp = stats.mean[i] / scale;
    const double dev = std::abs(x_ode - x_emp);
    worst = std::max(worst, dev);
    if (i % o.stride == 0 || i == p.t_max) {
      out << fmt(t) << ',' << fmt(x_ode) << ',' << fmt(x_emp) << ',' << fmt(dev) << '\n';
    }
  }
  out << "# max_abs_dev=" << fmt(worst) << '\n';
  out << "# trials=" << o.trials << '\n';
  return kExitOk;
}

int cmd_ode(const Options& o, std::ostream& out) {
  if (!o.x0) throw UsageError("--x0 is required");
  const analysis::DriftModel model(static_cast<int>(o.k), static_cast<int>(o.l));
  analysis::write_ode_csv(out, analysis::integrate_ode(model, *o.x0, o.t_end, o.dt));
  return kExitOk;
}

int cmd_bounds(const Options& o, std::ostream& out, std::ostream& err) {
  out << "k,l,x0,h,bound_piecewise,bound_generic,ode_time\n";
  bool ordered = true;
  for (int k : o.ks) {
    for (int l : o.ls) {
      if (l > k) continue;
      const analysis::DriftModel model(k, l);
      for (double x0 : o.x0s) {
        std::vector<double> hs = o.hs;
        if (hs.empty()) {
          for (double target : o.targets) hs.push_back(target / x0);
        }
        for (double h : hs) {
          if (h < 1.0 || h * x0 > 1.0 + 1e-12) continue;
          const auto b = analysis::hitting_time_bound(model, x0, h);
          const double t = analysis::ode_hitting_time(model, x0, h * x0, o.dt);
          out << k << ',' << l << ',' << fmt(x0) << ',' << fmt(h) << ','
              << fmt(b.piecewise) << ',' << fmt(b.generic) << ',' << fmt(t) << '\n';
          if (!(t <= b.generic + o.slack && b.generic <= b.piecewise + o.slack)) {
            err << "ordering violated at k=" << k << " l=" << l << " x0=" << fmt(x0)
                << " h=" << fmt(h) << '\n';
            ordered = false;
          }
        }
      }
    }
  }
  return ordered ? kExitOk : kExitCheckFailed;
}

std::string bits_text(const std::vector<std::uint8_t>& bits) {
  std::string s;
  for (auto b : bits) s += b ? '1' : '0';
  return s;
}

int cmd_mpc_demo(const Options& o, std::ostream& out) {
  const std::size_t k = o.k;
  if (k < 1 || k > 64) throw UsageError("mpc-demo needs 1 <= k <= 64");
  const std::uint64_t seed = seed_of(o);
  auto input = [&](const std::optional<std::string>& text, std::uint64_t label) {
    if (text) {
      auto bits = BitString::from_string(*text).to_bits();
      if (bits.size() != k) throw UsageError("demo inputs must have exactly k bits");
      return bits;
    }
    LocalRng rng(derive_seed(seed, label));
    return random_bits(rng, k);
  };
  const auto a_bits = input(o.input_a, 0xa);
  const auto b_bits = input(o.input_b, 0xb);

  Circuit circuit = [&] {
    if (o.circuit == "count") return build_count_circuit(k);
    const std::size_t r = o.r.value_or((k + 1) / 2);
    if (r > k) throw UsageError("r must not exceed k");
    return build_threshold_circuit(k, r);
  }();
  LocalRng dealer(derive_seed(seed, 0xd));
  LocalRng rng_a(derive_seed(seed, 0x1a));
  LocalRng rng_b(derive_seed(seed, 0x1b));
  const JointResult res = secure_evaluate_lockstep(circuit, a_bits, b_bits, dealer, rng_a, rng_b);
  const auto plain = evaluate_plain(circuit, a_bits, b_bits);
  const bool match = res.a.outputs == plain && res.b.outputs == plain &&
                     res.triples_consumed == circuit.and_count();

  auto value = [&](const std::vector<std::uint8_t>& bits) {
    std::string s = bits_text(bits);
    if (o.circuit == "count") s += " (" + std::to_string(decode_msb_first(bits)) + ")";
    return s;
  };
  out << "circuit        " << o.circuit << " k=" << k;
  if (o.circuit != "count") out << " r=" << o.r.value_or((k + 1) / 2);
  out << '\n';
  out << "input A        " << bits_text(a_bits) << '\n';
  out << "input B        " << bits_text(b_bits) << '\n';
  out << "output A       " << value(res.a.outputs) << '\n';
  out << "output B       " << value(res.b.outputs) << '\n';
  out << "plaintext      " << value(plain) << '\n';
  out << "and gates      " << circuit.and_count() << '\n';
  out << "triples used   " << res.triples_consumed << '\n';
  out << "messages       "
      << res.a.transcript.messages_sent + res.b.transcript.messages_sent << '\n';
  out << "rounds         " << res.a.transcript.rounds << '\n';
  out << "bytes          "
      << res.a.transcript.bytes_sent() + res.b.transcript.bytes_sent() << '\n';
  out << "status         " << (match ? "ok" : "MISMATCH") << '\n';
  return match ? kExitOk : kExitCheckFailed;
}

// Small versions of the test-suite checks, for a quick installation sanity run.
int cmd_selfcheck(std::ostream& out) {
  using namespace analysis;
  std::vector<std::pair<std::string, std::function<bool()>>> checks;
  checks.emplace_back("flip probabilities sum to one", [] {
    for (int k = 1; k <= 6; ++k)
      for (int j = 0; j <= k; ++j)
        for (int l = 0; l <= k; ++l) {
          Rational total = 0;
          Rational signed_sum = 0;
          for (int s = 0; s <= l; ++s) {
            total += hypergeom_flip_prob(k, j, l, s);
            signed_sum += (2 * s - l) * hypergeom_flip_prob(k, j, l, s);
          }
          if (total != 1 || signed_sum != signed_flip_identity(k, j, l)) return false;
        }
    return true;
  });
  checks.emplace_back("drift hand case", [] {
    return expected_drift_exact(10, 5, 2, 1) == Rational(2, 9);
  });
  checks.emplace_back("ode closed form", [] {
    const auto sol = integrate_ode(DriftModel(2, 1), 0.3, 10.0);
    for (const auto& s : sol.samples) {
      if (std::abs(s.x - (1.0 - 0.7 / (1.0 + 0.7 * s.t))) >= 1e-6) return false;
    }
    return true;
  });
  checks.emplace_back("bound ordering", [] {
    for (int k : {2, 3, 5})
      for (int l = 1; l <= 2; ++l)
        for (double x0 : {0.05, 0.1, 0.2})
          for (double target : {0.2, 0.4, 0.6}) {
            const DriftModel m(k, l);
            const auto b = hitting_time_bound(m, x0, target / x0);
            if (!(ode_hitting_time(m, x0, target) <= b.generic + 1e-9 &&
                  b.generic <= b.piecewise + 1e-9)) {
              return false;
            }
          }
    return true;
  });
  checks.emplace_back("secure evaluation", [] {
    const Circuit c = build_threshold_circuit(4, 2);
    std::uint64_t seed = 1;
    for (unsigned a = 0; a < 16; ++a)
      for (unsigned b = 0; b < 16; ++b) {
        std::vector<std::uint8_t> wa(4), wb(4);
        for (int i = 0; i < 4; ++i) {
          wa[i] = (a >> i) & 1;
          wb[i] = (b >> i) & 1;
        }
        LocalRng d(seed++), ra(seed++), rb(seed++);
        const auto res = secure_evaluate_lockstep(c, wa, wb, d, ra, rb);
        const auto plain = evaluate_plain(c, wa, wb);
        if (res.a.outputs != plain || res.b.outputs != plain) return false;
      }
    return true;
  });
  checks.emplace_back("mode equivalence", [] {
    ProtocolParams p;
    p.n = 60;
    p.k = 5;
    p.l = 2;
    p.t_max = 100;
    p.seed = SharedSeed{7};
    std::vector<TraceRecord> traces[2];
    for (Mode mode : {Mode::kOracle, Mode::kSecure}) {
      p.mode = mode;
      LocalRng setup(1), ra(2), rb(3);
      auto [a, b] = make_pair_with_agreement(p.n, 20, setup);
      traces[mode == Mode::kSecure] = run_session(p, a, b, ra, rb).trace;
    }
    for (std::size_t i = 0; i < traces[0].size(); ++i) {
      if (traces[0][i].x != traces[1][i].x || traces[0][i].flipped != traces[1][i].flipped)
        return false;
    }
    return traces[0].size() == traces[1].size();
  });

  bool all = true;
  for (const auto& [name, check] : checks) {
    const bool ok = check();
    all &= ok;
    out << (ok ? "ok    " : "FAIL  ") << name << '\n';
  }
  return all ? kExitOk : kExitCheckFailed;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Options o;
  CLI::App app("Two-party bit string agreement: simulation, analysis and MPC demo.",
               "bitpact");
  app.fallthrough();
  app.require_subcommand(1);
  app.set_config("--config", "", "Read key=value defaults from a file");
  app.option_defaults()->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);

  app.add_option("--n", o.n, "String length");
  app.add_option("--k", o.k, "Sample size per step")->capture_default_str();
  app.add_option("--l", o.l, "Bits flipped per flip")->capture_default_str();
  app.add_option("--r", o.r, "Flip when disagreements in the sample reach r (default ceil(k/2))");
  app.add_option("--seed", o.seed, "64-bit seed, decimal or 0x hex")
      ->envname("BITPACT_SEED")
      ->capture_default_str();
  app.add_option("--mode", o.mode, "Flip test: oracle or secure")
      ->check(CLI::IsMember({"oracle", "secure"}))
      ->capture_default_str();
  app.add_option("--scheduling", o.scheduling, "lockstep or threaded")
      ->check(CLI::IsMember({"lockstep", "threaded"}))
      ->capture_default_str();
  app.add_option("--x0", o.x0, "Initial agreement density");
  app.add_option("--init-a", o.init_a, "Initial string of party A");
  app.add_option("--init-b", o.init_b, "Initial string of party B");
  app.add_option("--steps", o.steps, "Protocol steps (simulate: 1000, compare: 5n)");
  app.add_option("--trials", o.trials, "Monte Carlo trials")->capture_default_str();
  app.add_option("--workers", o.workers, "Worker threads for trials")->capture_default_str();
  app.add_option("--dt", o.dt, "RK4 step in scaled time")->capture_default_str();
  app.add_option("--t-end", o.t_end, "ODE end time")->capture_default_str();
  app.add_option("--stride", o.stride, "Emit every stride-th compare row")->capture_default_str();
  app.add_option("--stop-at", o.stop_at, "Stop once the density reaches this value");
  app.add_option("--out", o.out, "Write output to this file instead of stdout");
  app.add_option("--ks", o.ks, "bounds: sample sizes")->delimiter(',')->capture_default_str();
  app.add_option("--ls", o.ls, "bounds: flip sizes")->delimiter(',')->capture_default_str();
  app.add_option("--x0s", o.x0s, "bounds: initial densities")->delimiter(',')->capture_default_str();
  app.add_option("--targets", o.targets, "bounds: target densities h*x0")
      ->delimiter(',')
      ->capture_default_str();
  app.add_option("--hs", o.hs, "bounds: growth factors (overrides --targets)")->delimiter(',');
  app.add_option("--slack", o.slack, "bounds: ordering tolerance")->capture_default_str();
  app.add_option("--circuit", o.circuit, "mpc-demo: threshold or count")
      ->check(CLI::IsMember({"threshold", "count"}))
      ->capture_default_str();
  app.add_option("--input-a", o.input_a, "mpc-demo: party A's k bits (random if absent)");
  app.add_option("--input-b", o.input_b, "mpc-demo: party B's k bits (random if absent)");

  auto* simulate = app.add_subcommand("simulate", "Run one session and print its trace CSV");
  auto* compare = app.add_subcommand("compare", "Monte Carlo mean trajectory against the ODE");
  auto* ode = app.add_subcommand("ode", "Integrate the density ODE");
  auto* bounds = app.add_subcommand("bounds", "Hitting-time bounds next to ODE hitting times");
  auto* demo = app.add_subcommand("mpc-demo", "Evaluate one circuit securely and report costs");
  auto* selfcheck = app.add_subcommand("selfcheck", "Quick consistency checks");

  std::vector<const char*> argv{"bitpact"};
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), const_cast<char**>(argv.data()));
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  std::ofstream file;
  if (!o.out.empty()) {
    file.open(o.out);
    if (!file) {
      err << "error: cannot open " << o.out << '\n';
      return kExitUsage;
    }
  }
  std::ostream& sink = o.out.empty() ? out : file;
  try {
    if (simulate->parsed()) return cmd_simulate(o, sink);
    if (compare->parsed()) return cmd_compare(o, sink);
    if (ode->parsed()) return cmd_ode(o, sink);
    if (bounds->parsed()) return cmd_bounds(o, sink, err);
    if (demo->parsed()) return cmd_mpc_demo(o, sink);
    if (selfcheck->parsed()) return cmd_selfcheck(sink);
  } catch (const UsageError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const PreconditionError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitCheckFailed;
  }
  return kExitUsage;
}

}  // namespace bitpact::cli
