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

#include <cmath>
#include <cstdint>
#include <string>
#include <vector>

#include "qsim/signal_processing.hpp"

namespace qsim {

/** e^{iΦ} W_axis restricted to one eigenspace, λ = cos θ. */
struct ScalarModel {
  std::vector<double> theta_grid;
  double axis = M_PI / 2;
  double Phi = -M_PI / 2;

  /** Uniform grid of m points in (-π, π]. */
  static ScalarModel uniform(long m = 1024, double axis = M_PI / 2,
                             double Phi = -M_PI / 2);
};

struct TargetFourier {
  // A(θ) = sum_k a[k] cos(kθ), C(θ) = sum_k c[k] sin(kθ), k = 0..N/2.
  std::vector<double> a, c;
};

struct SolverOptions {
  long N = 0;                 // 0: take N from plan_queries
  std::uint64_t seed = 1;
  long restarts = 200;
  long max_iterations = 2000;
  long theta_grid = 1024;
  double axis = M_PI / 2;
  double Phi = -M_PI / 2;
  double time_limit_s = 0;    // 0: no wall-clock limit
  bool use_constructive_seed = true;
};

struct SolverReport {
  PhaseSequence phases;
  double t = 0, eps = 0;
  long N = 0;
  double max_error = 0;
  long iterations = 0;
  long restarts_used = 0;
  bool converged = false;
  std::uint64_t seed = 0;
  std::string seed_kind; // constructive | table | zeros | random
};

struct PhaseRow {
  long N;
  double eps, t;
  std::vector<double> phases;
};

/** Reference phase rows (as printed, 2 to 5 significant figures). */
const std::vector<PhaseRow> &reference_phase_rows();

TargetFourier target_fourier(double t, long N);
double verify_phases(const PhaseSequence &phases, double t,
                     const ScalarModel &model);
SolverReport solve_phases(double t, double eps, const SolverOptions &opt = {});

/** <+| prod_k e^{-i(ω/2)σ_{φ_k}} |+>: the projected QSP response at eigenphase ω. */
cplx qsp_response(const std::vector<double> &phis, double omega);

/**
 * Phases whose response approximates e^{i t' sin ω}, built from the
 * truncated Jacobi-Anger polynomial via a complementary polynomial and layer
 * stripping. N must be even.
 */
std::vector<double> constructive_phases(double t_prime, long N, double gamma);

std::string solver_report_csv_header();
std::string solver_report_csv_row(const SolverReport &r);

} // namespace qsim
