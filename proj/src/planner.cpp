// Copyright 2026 The qsim Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "qsim/planner.hpp"

#include <cmath>
#include <limits>

namespace qsim {

std::vector<double> bessel_j_all(long kmax, double t) {
  if (kmax < 0)
    throw RangeError("bessel_j: negative order");
  if (!(std::fabs(t) <= 1e4))
    throw RangeError("bessel_j: |t| beyond 1e4");
  std::vector<double> j(kmax + 1, 0.0);
  if (t == 0.0) {
    j[0] = 1.0;
    return j;
  }
  const double x = std::fabs(t);
  const double big = std::max(static_cast<double>(kmax), x);
  long m = static_cast<long>(big + 50 + 20 * std::sqrt(big));
  m += m % 2;
  // Miller's algorithm. Values for k > kmax are only needed transiently.
  std::vector<double> v(m + 2, 0.0);
  v[m + 1] = 0.0;
  v[m] = 1.0;
  for (long k = m; k >= 1; --k) {
    v[k - 1] = (2.0 * k / x) * v[k] - v[k + 1];
    if (std::fabs(v[k - 1]) > 1e100) {
      for (long i = k - 1; i <= m; ++i)
        v[i] *= 1e-100;
    }
  }
  // Normalise with J_0^2 + 2 sum J_k^2 = 1 (no cancellation); the sign comes
  // from J_0 + 2 sum J_2k = 1.
  double sq = v[0] * v[0], lin = v[0];
  for (long k = 1; k <= m; ++k) {
    sq += 2.0 * v[k] * v[k];
    if (k % 2 == 0)
      lin += 2.0 * v[k];
  }
  const double scale = (lin < 0 ? -1.0 : 1.0) / std::sqrt(sq);
  for (long k = 0; k <= kmax; ++k) {
    j[k] = v[k] * scale;
    if (t < 0 && (k % 2))
      j[k] = -j[k];
  }
  return j;
}

double bessel_j(long k, double t) { return bessel_j_all(k, t)[k]; }

double upper_bound(double t, long q) {
  if (q < 1)
    throw RangeError("upper_bound: q must be >= 1");
  if (t == 0.0)
    return 0.0;
  const double x = std::fabs(t);
  return 4.0 * std::exp(q * std::log(x / 2.0) - std::lgamma(q + 1.0));
}

double truncation_error(double t, long q) {
  if (q < 1)
    throw RangeError("truncation_error: q must be >= 1");
  if (t == 0.0)
    return 0.0;
  const double x = std::fabs(t);
  long kmax = std::max<long>(q, static_cast<long>(x)) + 64 +
              static_cast<long>(4 * std::cbrt(x));
  for (;;) {
    std::vector<double> j = bessel_j_all(kmax, t);
    double sum = 0.0;
    for (long k = q; k <= kmax; ++k) {
      sum += 2.0 * std::fabs(j[k]);
      // Tail from k+1 on is below 4 (x/2)^{k+1}/(k+1)! once x/(2(k+1)) < 1/2.
      if (x < (k + 1)) {
        const double tail = upper_bound(x, k + 1);
        if (tail < 1e-18 * sum || tail < 1e-300)
          return sum;
      }
    }
    kmax *= 2;
  }
}

JacobiAngerPlan plan_queries(double t, double eps) {
  if (!(t >= 0))
    throw RangeError("plan_queries: t must be >= 0");
  if (!(eps > 0 && eps < 1))
    throw RangeError("plan_queries: eps must lie in (0, 1)");
  const double target = eps / 8.0;
  // Suffix sums over one Bessel table give a first guess for q.
  long kmax = static_cast<long>(t) + 40;
  while (!(t < kmax && upper_bound(t, kmax) < 1e-6 * target))
    kmax += 16;
  std::vector<double> j = bessel_j_all(kmax, t);
  long q = kmax;
  double s = 0.0;
  for (long k = kmax; k >= 2; --k) {
    s += 2.0 * std::fabs(j[k]);
    if (s > target) {
      q = k + 1;
      break;
    }
    q = k;
  }
  q = std::max<long>(q, 2);
  // Settle minimality against the audited tail sum.
  while (truncation_error(t, q) > target)
    ++q;
  while (q > 2 && truncation_error(t, q - 1) <= target)
    --q;
  JacobiAngerPlan p;
  p.t = t;
  p.eps = eps;
  p.q = q;
  p.N = 2 * (q - 1);
  if (p.N > 1000000)
    throw RangeError("plan_queries: N exceeds 1e6");
  std::vector<double> jc = bessel_j_all(q, t);
  p.coefficients.assign(jc.begin(), jc.end());
  p.truncation_error = truncation_error(t, q);
  p.upper_bound = upper_bound(t, q);
  return p;
}

BcksCount bcks_queries(double t, double eps) {
  if (!(t > 0))
    throw RangeError("bcks_queries: t must be > 0");
  if (!(eps > 0 && eps < 1))
    throw RangeError("bcks_queries: eps must lie in (0, 1)");
  const double l2 = std::log(2.0);
  BcksCount c;
  c.r = static_cast<long>(std::ceil(t / l2));
  const double target = eps / c.r;
  auto tail = [&](long K) {
    double s = 0.0;
    for (long k = K + 1;; ++k) {
      const double term = std::exp(k * std::log(l2) - std::lgamma(k + 1.0));
      s += term;
      if (term < 1e-20 * s || term < 1e-320)
        return s;
    }
  };
  long K = 0;
  while (tail(K) > target)
    ++K;
  c.K = K;
  c.total = 3 * K * c.r;
  return c;
}

long trotter_first_order_steps(long d, double t, double hmax, double eps) {
  if (d < 1 || !(t > 0) || !(hmax > 0) || !(eps > 0))
    throw RangeError("trotter_first_order_steps: arguments must be positive");
  const double x = d * t * hmax;
  const double n = std::ceil(x * x / (2.0 * eps));
  if (n > 9.0e18)
    throw RangeError("trotter_first_order_steps: step count overflows");
  return static_cast<long>(n);
}

double trotter_suzuki_bound(long d, double t, double hmax, double eps) {
  if (d < 1 || !(t > 0) || !(hmax > 0) || !(eps > 0))
    throw DomainError("trotter_suzuki_bound: arguments must be positive");
  const double x = d * t * hmax / eps;
  if (!(x > 1.0))
    throw DomainError("trotter_suzuki_bound: d t hmax / eps must exceed 1");
  return 2.0 * d * d * t * hmax *
         std::exp(2.0 * std::sqrt(std::log(5.0) * std::log(x)));
}

double exact_trotter_error(const PauliDecomposition &terms, double t, long n) {
  terms.validate();
  if (n < 1)
    throw RangeError("exact_trotter_error: n must be >= 1");
  if (terms.n > 12)
    throw CapacityError("exact_trotter_error: more than 12 qubits");
  const long dim = 1L << terms.n;
  ComplexMatrix step = identity(dim);
  for (const auto &term : terms.terms)
    step = step * expm_herm(term.coef * pauli_string_matrix(term.pauli), t / n);
  ComplexMatrix acc = identity(dim), base = step;
  for (long e = n; e > 0; e >>= 1) {
    if (e & 1)
      acc = acc * base;
    if (e > 1)
      base = base * base;
  }
  return operator_distance(acc, expm_herm(terms.matrix(), t));
}

double qsp_gate_estimate(long d, double alpha, double t) {
  if (d < 1 || !(alpha > 0) || !(t > 0))
    throw RangeError("qsp_gate_estimate: arguments must be positive");
  return 6.0 * d * alpha * t;
}

} // namespace qsim
