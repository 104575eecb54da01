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

#include "qsim/block_encoding.hpp"

namespace qsim {

struct QubitizedIterate {
  BlockEncoding enc;
  ComplexMatrix s_op; // full-space ancilla operator s_a ⊗ I
  ComplexMatrix w;    // empty until iterate() is called
  bool extended = false;
};

struct QubitizationCheck {
  bool ok = false;
  double signal_residual = 0; // ‖<G|S U|G> - <G|U|G>‖
  double square_residual = 0; // ‖<G|(S U)^2|G> - I‖
};

struct SU2Block {
  double lambda = 0;
  double theta = 0;
  ComplexMatrix block; // 2x2, or 1x1 when |lambda| = 1
  double leakage = 0;
};

/** `s` is either d x d (ancilla only) or the full operator. */
QubitizationCheck check_qubitized(const BlockEncoding &enc,
                                  const ComplexMatrix &s,
                                  double tol = 1e-10);
QubitizedIterate hermitian_qubitize(const BlockEncoding &enc,
                                    double tol = 1e-10);
/** Builds w = (2|G><G| ⊗ I - I) s u, stores it in q and returns it. */
const ComplexMatrix &iterate(QubitizedIterate &q, double tol = 1e-10);

/** Z_a = (1 + e^{-ia}) |G><G| ⊗ I - I. */
ComplexMatrix partial_reflection(const BlockEncoding &enc, double a);
/** W_phi = Z_{phi+pi/2} w Z_{-phi-pi/2}. */
ComplexMatrix phased_iterate(const QubitizedIterate &q, double phi);

SU2Block su2_block(const ComplexMatrix &w, const BlockEncoding &enc,
                   const SignalSpectrum &spec, long i,
                   double leak_tol = 1e-9);

/** Alternating-sign iterates for a normal signal operator. */
struct NormalIterates {
  BlockEncoding enc;
  /** W_{phi±} = Z_{phi+pi/2} (2|G><G| - I) U_± Z_{-phi-pi/2}. */
  ComplexMatrix plus(double phi) const;
  ComplexMatrix minus(double phi) const;
  /** W_{phi_L} ... W_{phi_2 -} W_{phi_1 +}, signs alternating from +. */
  ComplexMatrix alternating(const std::vector<double> &phis) const;
};

NormalIterates normal_qubitize(const BlockEncoding &enc, double tol = 1e-10);

/**
 * Leakage of the span K = span{v, P v} under P: the norm of the component of
 * P k2 outside K, where k2 completes v to an orthonormal basis of K.
 */
double invariant_leakage(const ComplexMatrix &p, const StateVector &v);

} // namespace qsim
