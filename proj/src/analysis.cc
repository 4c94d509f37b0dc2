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

#include "bitpact/analysis.h"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <ostream>
#include <string>

#include <boost/multiprecision/cpp_bin_float.hpp>

#include "bitpact/error.h"

namespace bitpact::analysis {

namespace {

using Float50 = boost::multiprecision::cpp_bin_float_50;

void check_density(double x, const char* what) {
  require(x >= 0.0 && x <= 1.0, std::string(what) + " must lie in [0, 1], got " +
                                     std::to_string(x));
}

// y^e with y^0 == 1, including 0^0.
double ipow(double y, int e) {
  double r = 1.0;
  for (int i = 0; i < e; ++i) r *= y;
  return r;
}

// Exact for the small k used in drift models.
double binomial_double(int a, int b) {
  if (b < 0 || b > a) return 0.0;
  double r = 1.0;
  for (int i = 1; i <= b; ++i) r = r * (a - b + i) / i;
  return std::round(r);
}

double rk4_step(const DriftModel& m, double x, double h) {
  auto f = [&m](double y) { return p_of_x(m, std::clamp(y, 0.0, 1.0)); };
  const double k1 = f(x);
  const double k2 = f(x + 0.5 * h * k1);
  const double k3 = f(x + 0.5 * h * k2);
  const double k4 = f(x + h * k3);
  return std::clamp(x + h / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4), 0.0, 1.0);
}

}  // namespace

double to_double(const Rational& r) {
  const Float50 num(boost::multiprecision::numerator(r));
  const Float50 den(boost::multiprecision::denominator(r));
  return static_cast<double>(num / den);
}

BigInt binomial(std::int64_t a, std::int64_t b) {
  if (b < 0 || a < 0 || b > a) return 0;
  b = std::min(b, a - b);
  BigInt result = 1;
  for (std::int64_t i = 1; i <= b; ++i) {
    result *= a - b + i;
    result /= i;  // exact: result is C(a-b+i, i) after this line
  }
  return result;
}

DriftModel::DriftModel(int k_, int l_) : k(k_), l(l_) {
  require(k >= 1, "sample size k must be at least 1");
  require(l >= 1 && l <= k, "flip size l must satisfy 1 <= l <= k");
}

Rational hypergeom_flip_prob(int k, int j, int l, int s) {
  require(k >= 0 && j >= 0 && l >= 0 && s >= 0, "arguments must be nonnegative");
  require(j <= k, "j must not exceed k");
  require(l <= k, "l must not exceed k");
  require(s <= l, "s must not exceed l");
  return Rational(binomial(j, s) * binomial(k - j, l - s), binomial(k, l));
}

Rational signed_flip_identity(int k, int j, int l) {
  require(k >= 1 && j >= 0 && l >= 0, "need k >= 1 and nonnegative j, l");
  require(j <= k && l <= k, "j and l must not exceed k");
  return Rational(BigInt(2 * j - k) * l, k);
}

Rational expected_drift_exact(std::int64_t n, std::int64_t x, int k, int l) {
  require(n >= 1 && x >= 0 && k >= 1 && l >= 0, "invalid drift arguments");
  require(x <= n, "agreement count X must not exceed n");
  require(k <= n, "sample size k must not exceed n");
  require(l <= k, "flip size l must not exceed k");
  const int threshold = (k + 1) / 2;
  BigInt numerator = 0;
  for (int j = threshold; j <= k; ++j) {
    // l (2j/k - 1) = l (2j - k) / k; the common 1/k is applied below.
    numerator += BigInt(l) * (2 * j - k) * binomial(n - x, j) * binomial(x, k - j);
  }
  return Rational(numerator, binomial(n, k) * k);
}

double p_of_x(const DriftModel& m, double x) {
  check_density(x, "density x");
  double total = 0.0;
  for (int j = m.threshold(); j <= m.k; ++j) {
    const double coeff = m.l * (2.0 * j / m.k - 1.0) * binomial_double(m.k, j);
    total += coeff * ipow(1.0 - x, j) * ipow(x, m.k - j);
  }
  return total;
}

double dp_dx(const DriftModel& m, double x) {
  check_density(x, "density x");
  double total = 0.0;
  for (int j = m.threshold(); j <= m.k; ++j) {
    const double coeff = m.l * (2.0 * j / m.k - 1.0) * binomial_double(m.k, j);
    double d = 0.0;
    if (j > 0) d -= j * ipow(1.0 - x, j - 1) * ipow(x, m.k - j);
    if (m.k - j > 0) d += (m.k - j) * ipow(1.0 - x, j) * ipow(x, m.k - j - 1);
    total += coeff * d;
  }
  return total;
}

double OdeSolution::at(double t) const {
  require(!samples.empty(), "empty ODE solution");
  require(t >= samples.front().t && t <= samples.back().t + 1e-12,
          "time outside the integrated range");
  auto it = std::lower_bound(samples.begin(), samples.end(), t,
                             [](const OdeSample& s, double v) { return s.t < v; });
  if (it == samples.end()) return samples.back().x;
  if (it == samples.begin() || it->t == t) return it->x;
  const auto& hi = *it;
  const auto& lo = *(it - 1);
  const double w = (t - lo.t) / (hi.t - lo.t);
  return lo.x + w * (hi.x - lo.x);
}

OdeSolution integrate_ode(const DriftModel& model, double x0, double t_end,
                          double dt) {
  check_density(x0, "initial density x0");
  require(dt > 0.0, "step size dt must be positive");
  require(t_end > 0.0, "t_end must be positive");
  require(dt <= t_end, "step size dt must not exceed t_end");
  OdeSolution sol;
  sol.x0 = x0;
  sol.dt = dt;
  const auto steps = static_cast<std::size_t>(std::ceil(t_end / dt - 1e-9));
  sol.samples.reserve(steps + 1);
  sol.samples.push_back({0.0, x0});
  double x = x0;
  for (std::size_t i = 1; i <= steps; ++i) {
    const double t_prev = static_cast<double>(i - 1) * dt;
    const double t = i == steps ? t_end : static_cast<double>(i) * dt;
    // Every RK4 stage slope is p(.) >= 0, so x never decreases.
    x = rk4_step(model, x, t - t_prev);
    sol.samples.push_back({t, x});
  }
  return sol;
}

double ode_hitting_time(const DriftModel& model, double x0, double target,
                        double dt) {
  check_density(x0, "initial density x0");
  require(dt > 0.0, "step size dt must be positive");
  if (target <= x0) return 0.0;
  if (target >= 1.0) return std::numeric_limits<double>::infinity();
  constexpr std::size_t kMaxSteps = 100'000'000;
  double x = x0;
  for (std::size_t i = 0; i < kMaxSteps; ++i) {
    const double next = rk4_step(model, x, dt);
    if (next >= target) {
      double lo = 0.0;
      double hi = dt;
      for (int it = 0; it < 200 && hi - lo > 1e-16; ++it) {
        const double mid = 0.5 * (lo + hi);
        if (rk4_step(model, x, mid) >= target) {
          hi = mid;
        } else {
          lo = mid;
        }
      }
      return static_cast<double>(i) * dt + hi;
    }
    if (next <= x) break;  // stalled below target
    x = next;
  }
  return std::numeric_limits<double>::infinity();
}

double lower_bound_p(const DriftModel& m, double x) {
  check_density(x, "density x");
  if (x < 0.5) return m.l * (ipow(x, m.k) + 1.0 - 2.0 * x);
  const int half = m.threshold();
  return static_cast<double>(m.l) / m.k * ipow(1.0 - x, m.k) *
         binomial_double(m.k, half) * half;
}

HittingTimeBounds hitting_time_bound(const DriftModel& model, double x0, double h) {
  check_density(x0, "initial density x0");
  require(h >= 1.0, "growth factor h must be at least 1");
  require(x0 == 0.0 || h * x0 <= 1.0 + 1e-12,
          "growth factor h must not exceed 1/x0");
  if (h == 1.0 || x0 == 0.0) return {0.0, 0.0};
  const double target = std::min(1.0, h * x0);
  const double gain = x0 * (h - 1.0);
  const double inf = std::numeric_limits<double>::infinity();
  const double lb = lower_bound_p(model, target);
  const double p = p_of_x(model, target);
  return {lb > 0.0 ? gain / lb : inf, p > 0.0 ? gain / p : inf};
}

double lipschitz_estimate(const DriftModel& model, int grid_points) {
  require(grid_points >= 2, "grid needs at least two points");
  double best = 0.0;
  for (int i = 0; i < grid_points; ++i) {
    const double x = static_cast<double>(i) / (grid_points - 1);
    best = std::max(best, std::abs(dp_dx(model, x)));
  }
  return best;
}

void write_ode_csv(std::ostream& os, const OdeSolution& solution) {
  os << "t,x\n";
  char buf[64];
  for (const auto& s : solution.samples) {
    std::snprintf(buf, sizeof buf, "%.9g,%.9g\n", s.t, s.x);
    os << buf;
  }
}

}  // namespace bitpact::analysis
