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
#include <iosfwd>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace bitpact::analysis {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

double to_double(const Rational& r);

// C(a, b) with C(a, b) = 0 whenever b < 0 or b > a.
BigInt binomial(std::int64_t a, std::int64_t b);

// Sample size k and flip size l. The flip threshold is ceil(k/2)
// disagreements.
struct DriftModel {
  int k = 1;
  int l = 1;

  DriftModel() = default;
  DriftModel(int k, int l);  // validates 1 <= l <= k

  int threshold() const { return (k + 1) / 2; }
};

// Probability that s of l uniformly flipped positions among k land on the j
// positions where two k-bit strings differ: C(j,s) C(k-j,l-s) / C(k,l).
Rational hypergeom_flip_prob(int k, int j, int l, int s);

// Expected gain in agreements from flipping l of k positions with j
// disagreements: (2j/k - 1) l.
Rational signed_flip_identity(int k, int j, int l);

// Exact expected one-step change of the agreement count X:
//   sum_{j >= ceil(k/2)} l (2j/k - 1) C(n-X, j) C(X, k-j) / C(n, k).
Rational expected_drift_exact(std::int64_t n, std::int64_t x, int k, int l);

// Density-limit drift
//   p(x) = sum_{j >= ceil(k/2)} l (2j/k - 1) C(k,j) (1-x)^j x^(k-j).
double p_of_x(const DriftModel& model, double x);

// Analytic derivative of p.
double dp_dx(const DriftModel& model, double x);

struct OdeSample {
  double t;
  double x;
};

struct OdeSolution {
  double x0 = 0.0;
  double dt = 0.0;
  std::vector<OdeSample> samples;  // samples[0] is (0, x0)

  // Linear interpolation between samples; t must lie inside the grid.
  double at(double t) const;
};

inline constexpr double kDefaultDt = 1e-3;

// Classical RK4 for dx/dt = p(x), clamped to [0, 1]. The last step is
// shortened if dt does not divide t_end.
OdeSolution integrate_ode(const DriftModel& model, double x0, double t_end,
                          double dt = kDefaultDt);

// Scaled time at which the ODE started at x0 first reaches `target`, found by
// RK4 stepping and bisection inside the crossing step. Returns +inf when the
// target is unreachable (target >= 1 with x0 < 1).
double ode_hitting_time(const DriftModel& model, double x0, double target,
                        double dt = kDefaultDt);

// Piecewise lower bound on p:
//   x < 1/2:  l (x^k + 1 - 2x)
//   x >= 1/2: (l/k) (1-x)^k C(k, ceil(k/2)) ceil(k/2)
double lower_bound_p(const DriftModel& model, double x);

struct HittingTimeBounds {
  // x0 (h-1) / lower_bound_p(h x0)
  double piecewise;
  // x0 (h-1) / p(h x0); never larger than `piecewise`
  double generic;
};

// Upper bounds on the scaled time for the ODE to grow from x0 to h x0.
// Requires 1 <= h <= 1/x0. Infinite when h x0 == 1.
HittingTimeBounds hitting_time_bound(const DriftModel& model, double x0, double h);

// max |p'(x)| over `grid_points` equally spaced points of [0, 1].
double lipschitz_estimate(const DriftModel& model, int grid_points = 10000);

// `t,x` CSV with 9 significant digits.
void write_ode_csv(std::ostream& os, const OdeSolution& solution);

}  // namespace bitpact::analysis
