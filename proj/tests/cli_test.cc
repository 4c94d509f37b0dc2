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

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "bitpact/csv.h"
#include "bitpact/protocol.h"
#include "doctest.h"

using namespace bitpact;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run run(std::vector<std::string> args) {
  std::ostringstream out;
  std::ostringstream err;
  const int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

CsvTable parse(const std::string& text) {
  std::istringstream in(text);
  return read_csv(in);
}

std::string field(const std::string& report, const std::string& key) {
  std::istringstream in(report);
  std::string line;
  while (std::getline(in, line)) {
    if (line.rfind(key, 0) == 0) {
      const auto pos = line.find_first_not_of(' ', key.size());
      return line.substr(pos);
    }
  }
  return "";
}

double max_dev(const CsvTable& t) {
  for (const auto& c : t.comments) {
    if (c.rfind("max_abs_dev=", 0) == 0) return parse_double(c.substr(12));
  }
  return -1.0;
}

std::filesystem::path temp_file(const std::string& name) {
  return std::filesystem::temp_directory_path() / ("bitpact_cli_test_" + name);
}

}  // namespace

TEST_CASE("simulate") {
  const std::vector<std::string> args{"simulate", "--n", "1000", "--k", "5", "--l", "2",
                                      "--x0", "0.3", "--steps", "5000", "--seed", "42"};
  const Run r = run(args);
  REQUIRE(r.code == 0);
  const CsvTable t = parse(r.out);
  CHECK(t.rows.size() == 5000);
  CHECK(t.header == std::vector<std::string>{"step", "X", "density", "turn", "flipped",
                                             "msgs", "j", "s"});
  CHECK(run(args).out == r.out);

  std::istringstream in(r.out);
  const auto trace = read_trace_csv(in);
  std::ostringstream again;
  write_trace_csv(again, trace, 1000, true);
  CHECK(again.str() == r.out);

  const Run secure = run({"simulate", "--n", "100", "--x0", "0.3", "--steps", "50",
                          "--mode", "secure", "--seed", "42"});
  REQUIRE(secure.code == 0);
  CHECK(parse(secure.out).header.size() == 6);

  const Run threaded = run({"simulate", "--n", "100", "--x0", "0.3", "--steps", "50",
                            "--seed", "42", "--scheduling", "threaded"});
  const Run lockstep = run({"simulate", "--n", "100", "--x0", "0.3", "--steps", "50",
                            "--seed", "42"});
  CHECK(threaded.out == lockstep.out);
}

TEST_CASE("simulate from explicit strings") {
  const Run r = run({"simulate", "--init-a", "0000", "--init-b", "1111", "--k", "4",
                     "--l", "4", "--steps", "1"});
  REQUIRE(r.code == 0);
  const CsvTable t = parse(r.out);
  REQUIRE(t.rows.size() == 1);
  CHECK(t.rows[0][t.column("X")] == "4");
  CHECK(t.rows[0][t.column("density")] == "1.000000");
}

TEST_CASE("usage errors exit with 2") {
  const Run big_k = run({"simulate", "--n", "10", "--k", "20", "--x0", "0.5"});
  CHECK(big_k.code == 2);
  CHECK(big_k.err.find("k must not exceed n") != std::string::npos);
  CHECK(run({"simulate", "--n", "10", "--k", "2", "--l", "1"}).code == 2);
  CHECK(run({"simulate", "--n", "4", "--x0", "0.5", "--init-a", "0101", "--init-b",
             "0101"}).code == 2);
  CHECK(run({"simulate", "--init-a", "0101"}).code == 2);
  CHECK(run({"simulate", "--init-a", "0101", "--init-b", "011"}).code == 2);
  CHECK(run({"simulate", "--n", "10", "--x0", "1.5"}).code == 2);
  CHECK(run({"simulate", "--n", "10", "--x0", "0.5", "--seed", "0xZZ"}).code == 2);
  CHECK(run({"simulate", "--n", "10", "--x0", "0.5", "--mode", "plain"}).code == 2);
  CHECK(run({"compare", "--n", "100", "--x0", "0.3", "--trials", "0"}).code == 2);
  CHECK(run({"frobnicate"}).code == 2);
  CHECK(run({}).code == 2);
  CHECK(run({"simulate", "--bogus", "1"}).code == 2);
  CHECK(run({"mpc-demo", "--k", "65"}).code == 2);
  CHECK(run({"mpc-demo", "--k", "4", "--input-a", "101"}).code == 2);
  CHECK(run({"ode", "--k", "2", "--l", "3", "--x0", "0.3"}).code == 2);
  CHECK(run({"ode", "--x0", "0.3", "--dt", "0"}).code == 2);
  const Run help = run({"--help"});
  CHECK(help.code == 0);
  CHECK(help.out.find("--seed") != std::string::npos);
}

TEST_CASE("config file and environment fallback") {
  const auto path = temp_file("config.ini");
  {
    std::ofstream f(path);
    f << "# defaults for a small run\nn=200\nx0=0.4\nsteps=30\nseed=7\n";
  }
  const Run from_file = run({"simulate", "--config", path.string()});
  REQUIRE(from_file.code == 0);
  const Run explicit_flags =
      run({"simulate", "--n", "200", "--x0", "0.4", "--steps", "30", "--seed", "7"});
  CHECK(from_file.out == explicit_flags.out);
  const Run overridden = run({"simulate", "--config", path.string(), "--steps", "10"});
  CHECK(parse(overridden.out).rows.size() == 10);

  const std::vector<std::string> no_seed{"simulate", "--n", "200", "--x0", "0.4",
                                         "--steps", "30"};
  ::setenv("BITPACT_SEED", "0x7", 1);
  const Run from_env = run(no_seed);
  const Run env_vs_flag = run({"simulate", "--n", "200", "--x0", "0.4", "--steps", "30",
                               "--seed", "9"});
  ::unsetenv("BITPACT_SEED");
  CHECK(from_env.out == explicit_flags.out);
  CHECK(env_vs_flag.out != explicit_flags.out);
  CHECK(run(no_seed).out != explicit_flags.out);
  std::filesystem::remove(path);
}

TEST_CASE("output file") {
  const auto path = temp_file("ode.csv");
  const Run r = run({"ode", "--k", "2", "--l", "1", "--x0", "0.3", "--t-end", "1",
                     "--out", path.string()});
  REQUIRE(r.code == 0);
  CHECK(r.out.empty());
  std::ifstream in(path);
  const CsvTable t = read_csv(in);
  CHECK(t.rows.size() == 1001);
  CHECK(parse_double(t.rows.back()[1]) == doctest::Approx(1.0 - 0.7 / 1.7).epsilon(1e-6));
  std::filesystem::remove(path);
}

TEST_CASE("compare") {
  const std::vector<std::string> base{"compare", "--k", "2", "--l", "1", "--x0", "0.3",
                                      "--trials", "11", "--workers", "4", "--stride", "100"};
  auto with_n = [&](const char* n) {
    auto args = base;
    args.insert(args.end(), {"--n", n});
    return args;
  };
  const Run big = run(with_n("10000"));
  REQUIRE(big.code == 0);
  const CsvTable t_big = parse(big.out);
  CHECK(t_big.header ==
        std::vector<std::string>{"t", "x_ode", "x_empirical_mean", "abs_dev"});
  CHECK(t_big.rows.size() == 501);
  CHECK(parse_double(t_big.rows.back()[0]) == doctest::Approx(5.0));
  const double dev_big = max_dev(t_big);
  CHECK(dev_big >= 0.0);
  CHECK(dev_big < 0.02);

  const Run small = run(with_n("1000"));
  REQUIRE(small.code == 0);
  const double dev_small = max_dev(parse(small.out));
  INFO("n=1e3 " << dev_small << " n=1e4 " << dev_big);
  CHECK(dev_small > dev_big);

  CHECK(run(with_n("1000")).out == small.out);
  auto one_worker = with_n("1000");
  one_worker.insert(one_worker.end(), {"--workers", "1"});
  CHECK(run(one_worker).out == small.out);

  CHECK(run({"compare", "--n", "100", "--x0", "0.3", "--r", "1"}).code == 2);
}

TEST_CASE("bounds") {
  const Run example = run({"bounds", "--ks", "2", "--ls", "1", "--x0s", "0.1", "--hs", "2,1"});
  REQUIRE(example.code == 0);
  const CsvTable t = parse(example.out);
  CHECK(t.header == std::vector<std::string>{"k", "l", "x0", "h", "bound_piecewise",
                                             "bound_generic", "ode_time"});
  REQUIRE(t.rows.size() == 2);
  CHECK(parse_double(t.rows[0][t.column("bound_piecewise")]) == doctest::Approx(0.15625));
  CHECK(parse_double(t.rows[0][t.column("ode_time")]) == doctest::Approx(0.1389).epsilon(1e-3));
  for (const char* c : {"bound_piecewise", "bound_generic", "ode_time"}) {
    CHECK(parse_double(t.rows[1][t.column(c)]) == 0.0);
  }

  const Run sweep = run({"bounds"});
  REQUIRE(sweep.code == 0);
  CHECK(parse(sweep.out).rows.size() == 54);
  CHECK(run({"bounds", "--slack", "-1"}).code == 1);
}

TEST_CASE("mpc-demo") {
  const Run r = run({"mpc-demo", "--k", "4", "--r", "2", "--input-a", "1010",
                     "--input-b", "1010"});
  CHECK(r.code == 0);
  CHECK(field(r.out, "output A") == "1");
  CHECK(field(r.out, "output B") == "1");
  CHECK(field(r.out, "plaintext") == "1");
  CHECK(field(r.out, "and gates") == field(r.out, "triples used"));
  CHECK(field(r.out, "status") == "ok");

  const Run count = run({"mpc-demo", "--k", "5", "--circuit", "count", "--input-a",
                         "10110", "--input-b", "10011"});
  CHECK(count.code == 0);
  CHECK(field(count.out, "plaintext") == "011 (3)");

  for (int seed = 0; seed < 100; ++seed) {
    const Run demo = run({"mpc-demo", "--k", std::to_string(1 + seed % 64), "--seed",
                          std::to_string(seed)});
    REQUIRE(demo.code == 0);
  }
  std::string messages;
  std::string bytes;
  for (int seed = 0; seed < 20; ++seed) {
    const Run demo = run({"mpc-demo", "--k", "16", "--seed", std::to_string(seed)});
    REQUIRE(demo.code == 0);
    if (seed == 0) {
      messages = field(demo.out, "messages");
      bytes = field(demo.out, "bytes");
    }
    CHECK(field(demo.out, "messages") == messages);
    CHECK(field(demo.out, "bytes") == bytes);
  }
  CHECK(run({"mpc-demo", "--seed", "3"}).out == run({"mpc-demo", "--seed", "3"}).out);
}

TEST_CASE("selfcheck") {
  const Run r = run({"selfcheck"});
  CHECK(r.code == 0);
  CHECK(r.out.find("FAIL") == std::string::npos);
}
