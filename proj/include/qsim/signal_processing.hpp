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
#include <iosfwd>
#include <string>
#include <vector>

#include "qsim/qubitization.hpp"

namespace qsim {

enum class SequenceKind { observable, qsp };

struct PhaseSequence {
  std::vector<double> phases;
  double global_phase = -M_PI / 2;
  SequenceKind kind = SequenceKind::qsp;

  void validate() const;
};

struct ABCDSample {
  double lambda, a, b, c, d;
};

/**
 * Functions of a phased-iterate product in the (|G_λ>, |G⊥_λ>) basis:
 * block = A I + i (B σz + C σx + D σy).
 *
 * A and B are degree-L polynomials in λ. C and D carry one factor of
 * g(λ) = sqrt(1-λ²); their fitted coefficients describe C/g and D/g, which
 * are degree L-1 polynomials.
 */
struct SU2Decomposition {
  std::vector<ABCDSample> samples;
  int degree = 0;
  RealVector cheb_a, cheb_b, cheb_c_over_g, cheb_d_over_g;
  double parity_impurity = 0;     // largest wrong-parity coefficient
  double sample_fit_residual = 0; // samples vs fitted functions
};

enum class PolyBasis { monomial, chebyshev };

struct AchievabilityReport {
  bool ok = true;
  std::vector<int> failed; // condition numbers 1..5
  std::vector<double> worst; // per-condition worst violation (0 if passed)
};

ComplexMatrix chebyshev_block(const QubitizedIterate &q, int L);
ComplexMatrix observable_sequence(const QubitizedIterate &q,
                                  const PhaseSequence &phases);

/** 2x2 block of W_phi for signal eigenvalue λ (scalar model). */
ComplexMatrix phased_block(double lambda, double phi);
/** Product of phased_block over the sequence, right-to-left. */
ComplexMatrix observable_block(double lambda, const std::vector<double> &phis);

SU2Decomposition extract_ABCD(const ComplexMatrix &seq,
                              const QubitizedIterate &q,
                              const SignalSpectrum &spec,
                              const PhaseSequence &phases);

/** Real (a, b, c, d) with m = det^{1/2} (a I + i(b σz + c σx + d σy)). */
ABCDSample su2_coordinates(const ComplexMatrix &m, double lambda,
                           cplx *branch = nullptr);

RealVector chebyshev_interpolate(const std::vector<double> &values_at_nodes);
std::vector<double> chebyshev_nodes(int n);
cplx chebyshev_eval(const RealVector &coef, cplx x);

AchievabilityReport check_achievable(const RealVector &a, const RealVector &b,
                                     int L,
                                     PolyBasis basis = PolyBasis::chebyshev);

ComplexMatrix qsp_sequence(const QubitizedIterate &q,
                           const PhaseSequence &phases,
                           double phi_axis = M_PI / 2,
                           double Phi = -M_PI / 2);

struct Projection {
  StateVector output;
  double success_prob;
};

/** `input` lives on the system register; ancillas start in |+>_b|G>. */
Projection qsp_project(const ComplexMatrix &v, const BlockEncoding &enc,
                       const StateVector &input);
/** (<+|_b <G| ⊗ I) v (|+>_b |G> ⊗ I) as a system operator. */
ComplexMatrix qsp_projected_block(const ComplexMatrix &v,
                                  const BlockEncoding &enc);

PhaseSequence read_phases(std::istream &in);
PhaseSequence read_phases_file(const std::string &path);
void write_phases(std::ostream &out, const PhaseSequence &p);

} // namespace qsim
