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

#include <iosfwd>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "qsim/linalg.hpp"

namespace qsim {

/**
 * A unitary u on (ancilla ⊗ system) together with the flag state |G> (first
 * column of g_prep) such that <G|u|G> = H / alpha.
 *
 * Index convention: a * system_dim + s.
 */
struct BlockEncoding {
  long ancilla_dim = 1;
  long system_dim = 1;
  ComplexMatrix u;
  ComplexMatrix g_prep;
  double alpha = 1.0;

  long total_dim() const { return ancilla_dim * system_dim; }
  StateVector flag_state() const { return g_prep.col(0); }
  /** |G> ⊗ I as a (total_dim x system_dim) isometry. */
  ComplexMatrix flag_isometry() const;
  /** |G><G| ⊗ I on the full space. */
  ComplexMatrix flag_projector() const;
  void validate(double tol = 1e-10) const;
};

struct SignalSpectrum {
  RealVector lambdas;
  RealVector thetas;
  RealVector g;
  ComplexMatrix vectors;
};

struct PauliTerm {
  double coef;
  std::string pauli;
};

struct PauliDecomposition {
  int n = 0;
  std::vector<PauliTerm> terms;

  double alpha() const;
  /** Direct sum of coefficient * Pauli matrix. */
  ComplexMatrix matrix() const;
  void validate() const;
};

struct LabeledPauliBlock {
  std::string label;
  PauliDecomposition terms;
};

/** Hermitian matrix plus a sparsity bound d. */
struct SparseHamiltonianSpec {
  int n = 0;
  long d = 1;
  ComplexMatrix h;

  double h_max() const;
  /** Column of the l-th slot in row j; padded rows use unused columns. */
  long col_index(long j, long l) const;
  void validate(double tol = 1e-10) const;
};

struct PurifiedDensity {
  std::vector<double> weights;
  std::vector<StateVector> chi;

  ComplexMatrix rho() const;
  void validate() const;
};

ComplexMatrix pauli_matrix(char p);
/** Leftmost character acts on the most significant qubit. */
ComplexMatrix pauli_string_matrix(const std::string &s);

ComplexMatrix signal_operator(const BlockEncoding &enc);
BlockEncoding lcu_encode(const PauliDecomposition &p);
BlockEncoding sparse_encode(const SparseHamiltonianSpec &s);
BlockEncoding purify_encode(const PurifiedDensity &p);
/** Wrap a user-supplied signal oracle; |G> = |0>. */
BlockEncoding dense_encode(const ComplexMatrix &u, long ancilla_dim,
                           double alpha = 1.0);
/** Unitary dilation [[A, sqrt(I-AA†)], [sqrt(I-A†A), -A†]] of ‖A‖ ≤ 1. */
BlockEncoding dilation_encode(const ComplexMatrix &a, double alpha = 1.0);
SignalSpectrum spectrum(const ComplexMatrix &h);

PauliDecomposition read_pauli(std::istream &in);
PauliDecomposition read_pauli_file(const std::string &path);
/** Blocks start at "# label: NAME" comment lines. */
std::vector<LabeledPauliBlock> read_pauli_blocks(std::istream &in);
std::vector<LabeledPauliBlock> read_pauli_blocks_file(const std::string &path);
PurifiedDensity read_purified(std::istream &in);
PurifiedDensity read_purified_file(const std::string &path);
/** Header "n d", then "j k re im" entries (missing transposes mirrored). */
SparseHamiltonianSpec read_sparse(std::istream &in);
SparseHamiltonianSpec read_sparse_file(const std::string &path);

long next_pow2(long x);
int ceil_log2(long x);

} // namespace qsim
