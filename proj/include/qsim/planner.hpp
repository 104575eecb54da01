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

#pragma once

#include <string>
#include <vector>

#include "qsim/block_encoding.hpp"

namespace qsim {

struct JacobiAngerPlan {
  double t = 0;
  double eps = 0;
  long N = 2;
  long q = 2;
  std::vector<double> coefficients; // J_k(t), k = 0..q
  double truncation_error = 0;
  double upper_bound = 0;
};

struct BcksCount {
  long K = 0;
  long r = 0;
  long total = 0;
};

enum class FormulaId {
  QSP_iterates,
  QSP_oracle_queries,
  BCCKS,
  Trotter1,
  TrotterSuzuki,
  N_T_exact,
  N_QSP_gates
};

struct BenchRecord {
  std::string label;
  double t = 0, eps = 0;
  double count = 0;
  FormulaId formula = FormulaId::QSP_iterates;
};

/** J_k(t) for integer k >= 0, |t| <= 1e4. */
double bessel_j(long k, double t);
/** J_0(t) .. J_kmax(t) by normalised downward recurrence. */
std::vector<double> bessel_j_all(long kmax, double t);

double truncation_error(double t, long q);
double upper_bound(double t, long q);
JacobiAngerPlan plan_queries(double t, double eps);
BcksCount bcks_queries(double t, double eps);

long trotter_first_order_steps(long d, double t, double hmax, double eps);
double trotter_suzuki_bound(long d, double t, double hmax, double eps);
/** Spectral norm of (prod_j e^{-i H_j t/n})^n - e^{-iHt}. */
double exact_trotter_error(const PauliDecomposition &terms, double t, long n);
double qsp_gate_estimate(long d, double alpha, double t);

} // namespace qsim
