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

#include <complex>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace qsim {

using cplx = std::complex<double>;
using ComplexMatrix =
    Eigen::Matrix<cplx, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
using StateVector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;

inline constexpr cplx I_UNIT{0.0, 1.0};

/** Largest row/column count any dense operator may reach. */
inline constexpr long MAX_TOTAL_DIM = 1L << 14;

// Error hierarchy. Each class maps to one failure category; the CLI turns
// them into exit codes.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct ShapeError : Error {
  using Error::Error;
};
struct ContractError : Error {
  using Error::Error;
};
struct CapacityError : Error {
  using Error::Error;
};
struct NormalizationError : Error {
  using Error::Error;
};
struct RangeError : Error {
  using Error::Error;
};
struct DomainError : Error {
  using Error::Error;
};
struct FormatError : Error {
  using Error::Error;
};
struct NonConvergenceError : Error {
  using Error::Error;
};

struct ToleranceConfig {
  double unitarity_tol = 1e-10;
  double condition_tol = 1e-10;
  double eig_residual_tol = 1e-10;

  void validate() const;
};

struct EigenDecomposition {
  RealVector values;     // ascending
  ComplexMatrix vectors; // columns
};

ComplexMatrix identity(long dim);
ComplexMatrix kron(const ComplexMatrix &a, const ComplexMatrix &b);
bool is_unitary(const ComplexMatrix &a, double tol = 1e-10);
double unitarity_residual(const ComplexMatrix &a);
double hermiticity_residual(const ComplexMatrix &a);
EigenDecomposition herm_eig(const ComplexMatrix &h,
                            const ToleranceConfig &tol = {});
ComplexMatrix expm_herm(const ComplexMatrix &h, double t,
                        const ToleranceConfig &tol = {});
double operator_distance(const ComplexMatrix &a, const ComplexMatrix &b);
double spectral_norm(const ComplexMatrix &a);
double max_entry_diff(const ComplexMatrix &a, const ComplexMatrix &b);

/** Outer product |a><b|. */
ComplexMatrix outer(const StateVector &a, const StateVector &b);

/**
 * Columns of the result span the orthogonal complement of the (orthonormal)
 * columns of `basis` inside C^dim.
 */
ComplexMatrix orthonormal_complement(const ComplexMatrix &basis);

// Dense text format: "rows cols" then one row per line as "re im re im ...".
ComplexMatrix read_matrix(std::istream &in);
ComplexMatrix read_matrix_file(const std::string &path);
void write_matrix(std::ostream &out, const ComplexMatrix &m);

} // namespace qsim
