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

#include "qsim/linalg.hpp"

#include <cmath>
#include <fstream>
#include <iomanip>
#include <sstream>

namespace qsim {

void ToleranceConfig::validate() const {
  if (!(unitarity_tol > 0) || !(condition_tol > 0) || !(eig_residual_tol > 0))
    throw ContractError("tolerances must be strictly positive");
}

ComplexMatrix identity(long dim) { return ComplexMatrix::Identity(dim, dim); }

ComplexMatrix kron(const ComplexMatrix &a, const ComplexMatrix &b) {
  if (a.size() == 0 || b.size() == 0)
    throw ShapeError("kron: empty operand");
  const long rows = a.rows() * b.rows(), cols = a.cols() * b.cols();
  if (rows > MAX_TOTAL_DIM || cols > MAX_TOTAL_DIM)
    throw CapacityError("kron: result " + std::to_string(rows) + "x" +
                        std::to_string(cols) + " exceeds maximum dimension " +
                        std::to_string(MAX_TOTAL_DIM));
  ComplexMatrix r(rows, cols);
  for (long i = 0; i < a.rows(); ++i)
    for (long j = 0; j < a.cols(); ++j)
      r.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return r;
}

double unitarity_residual(const ComplexMatrix &a) {
  if (a.rows() != a.cols())
    throw ShapeError("unitarity check needs a square matrix");
  ComplexMatrix d = a.adjoint() * a;
  d.diagonal().array() -= 1.0;
  return d.cwiseAbs().maxCoeff();
}

bool is_unitary(const ComplexMatrix &a, double tol) {
  return unitarity_residual(a) <= tol;
}

double hermiticity_residual(const ComplexMatrix &a) {
  if (a.rows() != a.cols())
    throw ShapeError("hermiticity check needs a square matrix");
  if (a.size() == 0)
    return 0.0;
  return (a - a.adjoint()).cwiseAbs().maxCoeff();
}

EigenDecomposition herm_eig(const ComplexMatrix &h,
                            const ToleranceConfig &tol) {
  const double herm = hermiticity_residual(h);
  if (herm > tol.condition_tol)
    throw ContractError("herm_eig: input not Hermitian (residual " +
                        std::to_string(herm) + ")");
  Eigen::MatrixXcd hs = 0.5 * (h + h.adjoint());
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(hs);
  if (es.info() != Eigen::Success)
    throw ContractError("herm_eig: eigensolver failed");
  EigenDecomposition out{es.eigenvalues(), es.eigenvectors()};
  // Residual bound scales with the operator size; unit-norm inputs are the
  // common case here.
  const double scale = std::max(1.0, hs.cwiseAbs().maxCoeff());
  const double res =
      (hs * es.eigenvectors() - es.eigenvectors() * es.eigenvalues().asDiagonal())
          .colwise()
          .norm()
          .maxCoeff();
  if (h.rows() > 0 && res > tol.eig_residual_tol * scale * h.rows())
    throw ContractError("herm_eig: residual " + std::to_string(res) +
                        " above tolerance");
  return out;
}

ComplexMatrix expm_herm(const ComplexMatrix &h, double t,
                        const ToleranceConfig &tol) {
  EigenDecomposition e = herm_eig(h, tol);
  Eigen::VectorXcd ph(e.values.size());
  for (long i = 0; i < ph.size(); ++i)
    ph[i] = std::exp(-I_UNIT * e.values[i] * t);
  return e.vectors * ph.asDiagonal() * e.vectors.adjoint();
}

double spectral_norm(const ComplexMatrix &a) {
  if (a.size() == 0)
    return 0.0;
  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(a);
  return svd.singularValues()[0];
}

double operator_distance(const ComplexMatrix &a, const ComplexMatrix &b) {
  if (a.rows() != b.rows() || a.cols() != b.cols())
    throw ShapeError("operator_distance: shape mismatch");
  return spectral_norm(a - b);
}

double max_entry_diff(const ComplexMatrix &a, const ComplexMatrix &b) {
  if (a.rows() != b.rows() || a.cols() != b.cols())
    throw ShapeError("max_entry_diff: shape mismatch");
  if (a.size() == 0)
    return 0.0;
  return (a - b).cwiseAbs().maxCoeff();
}

ComplexMatrix outer(const StateVector &a, const StateVector &b) {
  return a * b.adjoint();
}

ComplexMatrix orthonormal_complement(const ComplexMatrix &basis) {
  const long n = basis.rows(), k = basis.cols();
  // Project the standard basis out of span(basis) and keep the n-k columns
  // with the largest surviving norm, re-orthonormalised by QR.
  Eigen::MatrixXcd proj =
      Eigen::MatrixXcd::Identity(n, n) - basis * basis.adjoint();
  Eigen::ColPivHouseholderQR<Eigen::MatrixXcd> qr(proj);
  Eigen::MatrixXcd q = qr.householderQ();
  ComplexMatrix out = q.leftCols(n - k);
  return out;
}

ComplexMatrix read_matrix(std::istream &in) {
  std::string line;
  long rows = -1, cols = -1;
  std::vector<cplx> vals;
  while (std::getline(in, line)) {
    auto p = line.find_first_not_of(" \t\r");
    if (p == std::string::npos || line[p] == '#')
      continue;
    std::istringstream ls(line);
    if (rows < 0) {
      if (!(ls >> rows >> cols) || rows <= 0 || cols <= 0)
        throw FormatError("matrix header must be 'rows cols'");
      if (rows > MAX_TOTAL_DIM || cols > MAX_TOTAL_DIM)
        throw CapacityError("matrix too large");
      continue;
    }
    double re, im;
    long n = 0;
    while (ls >> re) {
      if (!(ls >> im))
        throw FormatError("odd number of reals in matrix row");
      vals.emplace_back(re, im);
      ++n;
    }
    if (!ls.eof())
      throw FormatError("unparsable token in matrix row");
    if (n != cols)
      throw FormatError("matrix row has " + std::to_string(n) +
                        " entries, expected " + std::to_string(cols));
  }
  if (rows < 0)
    throw FormatError("empty matrix file");
  if (static_cast<long>(vals.size()) != rows * cols)
    throw FormatError("matrix has wrong number of rows");
  ComplexMatrix m(rows, cols);
  for (long i = 0; i < rows * cols; ++i) {
    if (!std::isfinite(vals[i].real()) || !std::isfinite(vals[i].imag()))
      throw FormatError("non-finite matrix entry");
    m.data()[i] = vals[i];
  }
  return m;
}

ComplexMatrix read_matrix_file(const std::string &path) {
  std::ifstream f(path);
  if (!f)
    throw FormatError("cannot open " + path);
  return read_matrix(f);
}

void write_matrix(std::ostream &out, const ComplexMatrix &m) {
  out << m.rows() << ' ' << m.cols() << '\n' << std::setprecision(17);
  for (long i = 0; i < m.rows(); ++i) {
    for (long j = 0; j < m.cols(); ++j) {
      if (j)
        out << ' ';
      out << m(i, j).real() << ' ' << m(i, j).imag();
    }
    out << '\n';
  }
}

} // namespace qsim
