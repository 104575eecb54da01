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

#include <gtest/gtest.h>

#include <cmath>

#include "qsim/planner.hpp"

using namespace qsim;

TEST(Bessel, SmallArguments) {
  EXPECT_EQ(bessel_j(0, 0.0), 1.0);
  EXPECT_EQ(bessel_j(1, 0.0), 0.0);
}

TEST(Bessel, MatchesStandardLibrary) {
  for (double t : {0.0707, 0.5, 1.0, 2.2164, 7.3, 10.1, 50.0, 300.0})
    for (long k : {0L, 1L, 2L, 5L, 17L, 40L}) {
      const double ref = std::cyl_bessel_j(static_cast<double>(k), t);
      const double got = bessel_j(k, t);
      if (std::fabs(ref) > 1e-280)
        EXPECT_NEAR(got, ref, 1e-13 * std::max(1.0, std::fabs(ref)))
            << "k=" << k << " t=" << t;
    }
}

TEST(Bessel, RelativeAccuracyInTail) {
  for (double t : {1.0, 7.3, 30.0})
    for (long k = 0; k <= static_cast<long>(t) + 40; ++k) {
      const double ref = std::cyl_bessel_j(static_cast<double>(k), t);
      if (std::fabs(ref) < 1e-280)
        continue;
      EXPECT_NEAR(bessel_j(k, t) / ref, 1.0, 1e-10) << "k=" << k << " t=" << t;
    }
}

TEST(Bessel, NegativeArgumentParity) {
  for (long k = 0; k < 6; ++k)
    EXPECT_NEAR(bessel_j(k, -3.3), (k % 2 ? -1 : 1) * bessel_j(k, 3.3), 1e-15);
}

TEST(Bessel, Normalisation) {
  for (double t : {1.0, 7.3, 50.0}) {
    const long kmax = static_cast<long>(t) + 200;
    std::vector<double> j = bessel_j_all(kmax, t);
    double s = j[0] * j[0];
    for (long k = 1; k <= kmax; ++k)
      s += 2 * j[k] * j[k];
    EXPECT_NEAR(s, 1.0, 1e-12);
  }
}

TEST(Bessel, RangeErrors) {
  EXPECT_THROW(bessel_j(3, 2e4), RangeError);
  EXPECT_THROW(bessel_j(-1, 1.0), RangeError);
  EXPECT_NO_THROW(bessel_j(10, 1e4));
}

TEST(UpperBound, Examples) {
  EXPECT_NEAR(upper_bound(2, 4), 1.0 / 6.0, 1e-15);
  EXPECT_EQ(upper_bound(0, 3), 0.0);
  EXPECT_TRUE(std::isfinite(upper_bound(1e4, 20000)));
}

TEST(Truncation, Examples) {
  EXPECT_EQ(truncation_error(0, 1), 0.0);
  EXPECT_LE(truncation_error(2, 4), 1.0 / 6.0);
  // Direct oracle from the standard library.
  double s = 0;
  for (int k = 4; k < 60; ++k)
    s += 2 * std::fabs(std::cyl_bessel_j(double(k), 2.0));
  EXPECT_NEAR(truncation_error(2, 4), s, 1e-15);
}

TEST(Truncation, MonotoneInQ) {
  double prev = truncation_error(5, 1);
  for (long q = 2; q <= 40; ++q) {
    const double cur = truncation_error(5, q);
    EXPECT_LE(cur, prev);
    prev = cur;
  }
}

TEST(Truncation, DominatedByBound) {
  for (double t : {0.1, 1.0, 10.0, 100.0})
    for (long q = 1; q <= 60; ++q)
      if (t / (2.0 * q) < 1)
        EXPECT_LE(truncation_error(t, q), upper_bound(t, q) * (1 + 1e-12))
            << "t=" << t << " q=" << q;
}

TEST(Plan, ZeroTime) {
  JacobiAngerPlan p = plan_queries(0, 1e-3);
  EXPECT_EQ(p.N, 2);
  EXPECT_EQ(p.q, 2);
}

TEST(Plan, Minimality) {
  for (double t : {0.0707, 1.0, 3.78, 10.0, 57.0})
    for (double eps : {1e-2, 1e-4, 1e-8}) {
      JacobiAngerPlan p = plan_queries(t, eps);
      EXPECT_EQ(p.N % 2, 0);
      EXPECT_EQ(p.q, 1 + p.N / 2);
      EXPECT_LE(truncation_error(t, 1 + p.N / 2), eps / 8);
      if (p.N > 2)
        EXPECT_GT(truncation_error(t, 1 + (p.N - 2) / 2), eps / 8);
      EXPECT_LE(p.truncation_error, p.upper_bound);
      EXPECT_EQ(static_cast<long>(p.coefficients.size()), p.q + 1);
    }
}

TEST(Plan, LargeTimeRatio) {
  JacobiAngerPlan p = plan_queries(1000, 1e-2);
  const double r = double(p.N) / 1000;
  EXPECT_GE(r, 2.0);
  EXPECT_LE(r, 2.2);
}

TEST(Plan, MonotoneInEps) {
  long prev = plan_queries(10, 1e-12).N;
  for (int e = 11; e >= 1; --e) {
    long cur = plan_queries(10, std::pow(10.0, -e)).N;
    EXPECT_LE(cur, prev);
    prev = cur;
  }
}

TEST(Plan, RangeErrors) {
  EXPECT_THROW(plan_queries(-1, 0.1), RangeError);
  EXPECT_THROW(plan_queries(1, 0), RangeError);
  EXPECT_THROW(plan_queries(1, 1), RangeError);
}

TEST(Bcks, Examples) {
  BcksCount c = bcks_queries(0.5, 1e-3);
  EXPECT_EQ(c.r, 1);
  double tail = 0;
  for (int k = c.K + 1; k < 60; ++k)
    tail += std::pow(std::log(2.0), k) / std::tgamma(k + 1.0);
  EXPECT_LE(tail, 1e-3);
  double tail_prev = tail + std::pow(std::log(2.0), c.K) / std::tgamma(c.K + 1.0);
  EXPECT_GT(tail_prev, 1e-3);
  EXPECT_EQ(c.total, 3 * c.K * c.r);
}

TEST(Bcks, SeparationFromQsp) {
  BcksCount c = bcks_queries(100, 1e-2);
  EXPECT_GT(c.total, 2 * plan_queries(100, 1e-2).N);
}

TEST(Bcks, MonotoneInEps) {
  long prev = 0;
  for (double eps : {1e-1, 1e-3, 1e-6, 1e-9}) {
    long K = bcks_queries(10, eps).K;
    EXPECT_GE(K, prev);
    prev = K;
  }
}

TEST(Trotter, FirstOrderFormula) {
  EXPECT_EQ(trotter_first_order_steps(5, 625, 0.5, 1.6e-3),
            static_cast<long>(std::ceil(std::pow(5 * 625 * 0.5, 2) / 3.2e-3)));
  EXPECT_EQ(trotter_first_order_steps(1, 2, 1, 0.5), 4);
  const long n1 = trotter_first_order_steps(2, 10, 1, 0.01);
  const long n2 = trotter_first_order_steps(4, 10, 1, 0.01);
  EXPECT_EQ(n2, 4 * n1);
}

TEST(Trotter, SuzukiFormula) {
  EXPECT_NEAR(trotter_suzuki_bound(1, 1, 1, 0.1),
              2 * std::exp(2 * std::sqrt(std::log(5.0) * std::log(10.0))), 1e-12);
  EXPECT_THROW(trotter_suzuki_bound(1, 1, 1, 2.0), DomainError);
}

TEST(Trotter, ExactErrorCommutingAndSingle) {
  PauliDecomposition zs{2, {{0.3, "ZI"}, {0.7, "IZ"}, {-0.2, "ZZ"}}};
  for (long n : {1L, 3L, 10L})
    EXPECT_LE(exact_trotter_error(zs, 2.0, n), 1e-12);
  PauliDecomposition one{2, {{0.9, "XY"}}};
  EXPECT_LE(exact_trotter_error(one, 5.0, 1), 1e-12);
}

TEST(Trotter, ExactErrorFirstOrderScaling) {
  PauliDecomposition xz{2, {{1.0, "XI"}, {1.0, "ZI"}}};
  const double e1 = exact_trotter_error(xz, 1.0, 64);
  const double e2 = exact_trotter_error(xz, 1.0, 128);
  EXPECT_NEAR(e2 / e1, 0.5, 0.05);
  EXPECT_LT(exact_trotter_error(xz, 1.0, 4096), e2);
}

TEST(Trotter, Capacity) {
  PauliDecomposition big{13, {{1.0, std::string(13, 'Z')}}};
  EXPECT_THROW(exact_trotter_error(big, 1, 1), CapacityError);
}

TEST(GateEstimate, Formula) {
  EXPECT_EQ(qsp_gate_estimate(5, 1, 625), 18750);
  EXPECT_EQ(qsp_gate_estimate(10, 1, 625), 2 * 18750);
  EXPECT_THROW(qsp_gate_estimate(0, 1, 1), RangeError);
}
