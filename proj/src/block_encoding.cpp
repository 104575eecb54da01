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

#include "qsim/block_encoding.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

namespace qsim {

long next_pow2(long x) {
  long p = 1;
  while (p < x)
    p <<= 1;
  return p;
}

int ceil_log2(long x) {
  int k = 0;
  while ((1L << k) < x)
    ++k;
  return k;
}

namespace {

bool blank_or_comment(const std::string &line) {
  auto p = line.find_first_not_of(" \t\r");
  return p == std::string::npos || line[p] == '#';
}

// Unitary whose first column is the unit vector v.
ComplexMatrix unitary_with_first_column(const StateVector &v) {
  const long d = v.size();
  ComplexMatrix basis = v;
  ComplexMatrix u(d, d);
  u.col(0) = v;
  if (d > 1)
    u.rightCols(d - 1) = orthonormal_complement(basis);
  return u;
}

// Principal square root of a PSD Hermitian matrix.
ComplexMatrix psd_sqrt(const ComplexMatrix &m) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(
      Eigen::MatrixXcd(0.5 * (m + m.adjoint())));
  Eigen::VectorXd ev = es.eigenvalues().cwiseMax(0.0).cwiseSqrt();
  return es.eigenvectors() * ev.asDiagonal() * es.eigenvectors().adjoint();
}

} // namespace

ComplexMatrix BlockEncoding::flag_isometry() const {
  ComplexMatrix g = flag_state();
  return kron(g, identity(system_dim));
}

ComplexMatrix BlockEncoding::flag_projector() const {
  StateVector g = flag_state();
  return kron(outer(g, g), identity(system_dim));
}

void BlockEncoding::validate(double tol) const {
  if (ancilla_dim < 1 || system_dim < 1)
    throw ContractError("block encoding: empty register");
  if (u.rows() != total_dim() || u.cols() != total_dim())
    throw ShapeError("block encoding: u has wrong dimension");
  if (g_prep.rows() != ancilla_dim || g_prep.cols() != ancilla_dim)
    throw ShapeError("block encoding: g_prep has wrong dimension");
  if (!is_unitary(u, tol))
    throw ContractError("block encoding: u not unitary (residual " +
                        std::to_string(unitarity_residual(u)) + ")");
  if (!is_unitary(g_prep, tol))
    throw ContractError("block encoding: g_prep not unitary");
  if (alpha < 0)
    throw ContractError("block encoding: negative alpha");
}

ComplexMatrix pauli_matrix(char p) {
  ComplexMatrix m(2, 2);
  switch (p) {
  case 'I':
    m << 1, 0, 0, 1;
    break;
  case 'X':
    m << 0, 1, 1, 0;
    break;
  case 'Y':
    m << 0, -I_UNIT, I_UNIT, 0;
    break;
  case 'Z':
    m << 1, 0, 0, -1;
    break;
  default:
    throw FormatError(std::string("unknown Pauli letter '") + p + "'");
  }
  return m;
}

ComplexMatrix pauli_string_matrix(const std::string &s) {
  ComplexMatrix m = identity(1);
  for (char c : s)
    m = kron(m, pauli_matrix(c));
  return m;
}

double PauliDecomposition::alpha() const {
  double a = 0;
  for (const auto &t : terms)
    a += std::fabs(t.coef);
  return a;
}

ComplexMatrix PauliDecomposition::matrix() const {
  ComplexMatrix h = ComplexMatrix::Zero(1L << n, 1L << n);
  for (const auto &t : terms)
    h += t.coef * pauli_string_matrix(t.pauli);
  return h;
}

void PauliDecomposition::validate() const {
  if (terms.empty())
    throw ContractError("Pauli decomposition has no terms");
  std::set<std::string> seen;
  for (const auto &t : terms) {
    if (static_cast<int>(t.pauli.size()) != n)
      throw ContractError("Pauli string '" + t.pauli + "' has wrong length");
    if (!seen.insert(t.pauli).second)
      throw ContractError("duplicate Pauli string '" + t.pauli + "'");
    if (!std::isfinite(t.coef))
      throw ContractError("non-finite Pauli coefficient");
  }
  if (!(alpha() > 0))
    throw ContractError("Pauli decomposition has zero 1-norm");
}

ComplexMatrix signal_operator(const BlockEncoding &enc) {
  ComplexMatrix g = enc.flag_isometry();
  return g.adjoint() * enc.u * g;
}

BlockEncoding lcu_encode(const PauliDecomposition &p) {
  p.validate();
  const long dim = 1L << p.n;
  const long d = next_pow2(static_cast<long>(p.terms.size()));
  const double alpha = p.alpha();
  StateVector g = StateVector::Zero(d);
  ComplexMatrix u = identity(d * dim);
  for (std::size_t j = 0; j < p.terms.size(); ++j) {
    const auto &t = p.terms[j];
    g[j] = std::sqrt(std::fabs(t.coef) / alpha);
    const double sign = t.coef < 0 ? -1.0 : 1.0;
    u.block(j * dim, j * dim, dim, dim) = sign * pauli_string_matrix(t.pauli);
  }
  BlockEncoding enc{d, dim, u, unitary_with_first_column(g), alpha};
  return enc;
}

double SparseHamiltonianSpec::h_max() const {
  return h.size() ? h.cwiseAbs().maxCoeff() : 0.0;
}

long SparseHamiltonianSpec::col_index(long j, long l) const {
  std::vector<long> cols;
  for (long k = 0; k < h.cols(); ++k)
    if (h(j, k) != cplx(0.0))
      cols.push_back(k);
  if (l < static_cast<long>(cols.size()))
    return cols[l];
  // Pad with distinct unused columns; their entries are zero so the slot
  // carries only the remainder branch.
  long extra = l - static_cast<long>(cols.size());
  for (long k = 0; k < h.cols(); ++k) {
    if (std::find(cols.begin(), cols.end(), k) != cols.end())
      continue;
    if (extra-- == 0)
      return k;
  }
  throw ContractError("sparse spec: slot index beyond dimension");
}

void SparseHamiltonianSpec::validate(double tol) const {
  const long dim = 1L << n;
  if (h.rows() != dim || h.cols() != dim)
    throw ShapeError("sparse spec: matrix is not 2^n square");
  if (d < 1 || d > dim)
    throw ContractError("sparse spec: sparsity must be in [1, 2^n]");
  if (hermiticity_residual(h) > tol)
    throw ContractError("sparse spec: entries are not Hermitian");
  for (long j = 0; j < dim; ++j) {
    long nz = 0;
    for (long k = 0; k < dim; ++k)
      nz += h(j, k) != cplx(0.0);
    if (nz > d)
      throw ContractError("sparse spec: row " + std::to_string(j) + " has " +
                          std::to_string(nz) + " nonzeros > d");
  }
}

BlockEncoding sparse_encode(const SparseHamiltonianSpec &s) {
  s.validate();
  const long dim = 1L << s.n;
  // a1 needs three orthogonal flags: |0> for the matrix-element branch and
  // separate remainder flags |1> (row states) and |2> (column states) so the
  // remainders never overlap. Stored in two qubits.
  const long a1 = 4;
  const long anc = a1 * dim;
  const long total = anc * dim;
  if (total > MAX_TOTAL_DIM)
    throw CapacityError("sparse_encode: dimension too large");
  const double hm = s.h_max();
  const double sd = std::sqrt(static_cast<double>(s.d));
  auto index = [&](long f1, long f2, long sys) {
    return (f1 * dim + f2) * dim + sys;
  };
  ComplexMatrix t1 = ComplexMatrix::Zero(total, dim);
  ComplexMatrix t2 = ComplexMatrix::Zero(total, dim);
  for (long j = 0; j < dim; ++j) {
    for (long l = 0; l < s.d; ++l) {
      const long f = s.col_index(j, l);
      cplx hv = hm > 0 ? s.h(f, j) / hm : cplx(0.0);
      const double rem = std::sqrt(std::max(0.0, 1.0 - std::abs(hv)));
      // Row state: |f>_{a2} (sqrt(H_fj)|0> + rem|1>)_{a1} |j>_s.
      t1(index(0, f, j), j) += std::sqrt(hv) / sd;
      t1(index(1, f, j), j) += rem / sd;
      // Column state: |f>_s (conj sqrt(H_jf)|0> + rem|2>)_{a1} |j>_{a2}.
      cplx hc = hm > 0 ? s.h(j, f) / hm : cplx(0.0);
      t2(index(0, j, f), j) += std::conj(std::sqrt(hc)) / sd;
      t2(index(2, j, f), j) += rem / sd;
    }
  }
  auto complete = [&](const ComplexMatrix &t) {
    // Isometry columns sit at the |0>_{a1}|0>_{a2}|j>_s positions.
    ComplexMatrix v(total, total);
    ComplexMatrix comp = orthonormal_complement(t);
    v.leftCols(dim) = t;
    v.rightCols(total - dim) = comp;
    return v;
  };
  ComplexMatrix u = complete(t2).adjoint() * complete(t1);
  BlockEncoding enc{anc, dim, u, identity(anc), static_cast<double>(s.d) * hm};
  return enc;
}

ComplexMatrix PurifiedDensity::rho() const {
  const long dim = chi.empty() ? 1 : chi.front().size();
  ComplexMatrix r = ComplexMatrix::Zero(dim, dim);
  for (std::size_t j = 0; j < chi.size(); ++j)
    r += weights[j] * outer(chi[j], chi[j]);
  return r;
}

void PurifiedDensity::validate() const {
  if (weights.empty() || weights.size() != chi.size())
    throw ContractError("purified density: weights/states mismatch");
  double sum = 0;
  for (double w : weights) {
    if (w < 0)
      throw ContractError("purified density: negative weight");
    sum += w;
  }
  if (std::fabs(sum - 1.0) > 1e-12)
    throw ContractError("purified density: weights sum to " +
                        std::to_string(sum) + ", not 1");
  const long dim = chi.front().size();
  if (dim < 1 || (dim & (dim - 1)))
    throw ContractError("purified density: state dimension not 2^n");
  for (const auto &c : chi) {
    if (c.size() != dim)
      throw ContractError("purified density: state dimensions differ");
    if (std::fabs(c.norm() - 1.0) > 1e-10)
      throw ContractError("purified density: purifier state not normalized");
  }
}

BlockEncoding purify_encode(const PurifiedDensity &p) {
  p.validate();
  const long dim = p.chi.front().size();
  const long a1 = next_pow2(static_cast<long>(p.weights.size()));
  const long anc = a1 * dim;
  if (anc * dim > MAX_TOTAL_DIM)
    throw CapacityError("purify_encode: dimension too large");
  StateVector g = StateVector::Zero(anc);
  for (std::size_t j = 0; j < p.weights.size(); ++j)
    g.segment(j * dim, dim) += std::sqrt(p.weights[j]) * p.chi[j];
  ComplexMatrix swap = ComplexMatrix::Zero(dim * dim, dim * dim);
  for (long x = 0; x < dim; ++x)
    for (long y = 0; y < dim; ++y)
      swap(y * dim + x, x * dim + y) = 1.0;
  BlockEncoding enc{anc, dim, kron(identity(a1), swap),
                    unitary_with_first_column(g), 1.0};
  return enc;
}

BlockEncoding dense_encode(const ComplexMatrix &u, long ancilla_dim,
                           double alpha) {
  if (ancilla_dim < 1 || u.rows() % ancilla_dim != 0)
    throw ShapeError("dense_encode: matrix size not divisible by ancilla_dim");
  BlockEncoding enc{ancilla_dim, u.rows() / ancilla_dim, u,
                    identity(ancilla_dim), alpha};
  if (u.rows() != u.cols())
    throw ShapeError("dense_encode: oracle must be square");
  return enc;
}

BlockEncoding dilation_encode(const ComplexMatrix &a, double alpha) {
  if (a.rows() != a.cols())
    throw ShapeError("dilation_encode: square input required");
  if (spectral_norm(a) > 1.0 + 1e-9)
    throw NormalizationError("dilation_encode: spectral norm " +
                             std::to_string(spectral_norm(a)) + " exceeds 1");
  const long m = a.rows();
  const ComplexMatrix id = identity(m);
  ComplexMatrix u(2 * m, 2 * m);
  u.topLeftCorner(m, m) = a;
  u.topRightCorner(m, m) = psd_sqrt(id - a * a.adjoint());
  u.bottomLeftCorner(m, m) = psd_sqrt(id - a.adjoint() * a);
  u.bottomRightCorner(m, m) = -a.adjoint();
  BlockEncoding enc{2, m, u, identity(2), alpha};
  return enc;
}

SignalSpectrum spectrum(const ComplexMatrix &h) {
  const double nrm = spectral_norm(h);
  if (nrm > 1.0 + 1e-9)
    throw NormalizationError("signal operator spectral norm " +
                             std::to_string(nrm) + " exceeds 1");
  EigenDecomposition e = herm_eig(h);
  SignalSpectrum s;
  s.lambdas = e.values.cwiseMax(-1.0).cwiseMin(1.0);
  s.thetas = RealVector::Zero(s.lambdas.size()); // polar phases; zero for Hermitian h
  s.g = (1.0 - s.lambdas.array().square()).cwiseMax(0.0).sqrt().matrix();
  s.vectors = e.vectors;
  return s;
}

PauliDecomposition read_pauli(std::istream &in) {
  auto blocks = read_pauli_blocks(in);
  PauliDecomposition p;
  for (auto &b : blocks) {
    if (p.n == 0)
      p.n = b.terms.n;
    for (auto &t : b.terms.terms)
      p.terms.push_back(t);
  }
  if (p.terms.empty())
    throw FormatError("Pauli file has no terms");
  for (auto &t : p.terms)
    if (static_cast<int>(t.pauli.size()) != p.n)
      throw FormatError("Pauli strings have unequal lengths");
  return p;
}

std::vector<LabeledPauliBlock> read_pauli_blocks(std::istream &in) {
  std::vector<LabeledPauliBlock> blocks;
  std::string line;
  while (std::getline(in, line)) {
    auto p = line.find_first_not_of(" \t\r");
    if (p == std::string::npos)
      continue;
    if (line[p] == '#') {
      auto k = line.find("label:", p);
      if (k != std::string::npos) {
        std::string name = line.substr(k + 6);
        name.erase(0, name.find_first_not_of(" \t"));
        name.erase(name.find_last_not_of(" \t\r") + 1);
        blocks.push_back({name, {}});
      }
      continue;
    }
    std::istringstream ls(line);
    double c;
    std::string s, extra;
    if (!(ls >> c >> s) || (ls >> extra))
      throw FormatError("bad Pauli line: '" + line + "'");
    for (char ch : s)
      if (std::string("IXYZ").find(ch) == std::string::npos)
        throw FormatError("bad Pauli string '" + s + "'");
    if (blocks.empty())
      blocks.push_back({"", {}});
    auto &b = blocks.back().terms;
    if (b.n == 0)
      b.n = static_cast<int>(s.size());
    if (static_cast<int>(s.size()) != b.n)
      throw FormatError("Pauli strings have unequal lengths");
    b.terms.push_back({c, s});
  }
  blocks.erase(std::remove_if(blocks.begin(), blocks.end(),
                              [](auto &b) { return b.terms.terms.empty(); }),
               blocks.end());
  return blocks;
}

namespace {
std::ifstream open_or_throw(const std::string &path) {
  std::ifstream f(path);
  if (!f)
    throw FormatError("cannot open " + path);
  return f;
}
} // namespace

PauliDecomposition read_pauli_file(const std::string &path) {
  auto f = open_or_throw(path);
  return read_pauli(f);
}

std::vector<LabeledPauliBlock> read_pauli_blocks_file(const std::string &path) {
  auto f = open_or_throw(path);
  return read_pauli_blocks(f);
}

PurifiedDensity read_purified(std::istream &in) {
  std::string line;
  long J = -1, n = -1;
  PurifiedDensity p;
  while (std::getline(in, line)) {
    if (blank_or_comment(line))
      continue;
    std::istringstream ls(line);
    if (J < 0) {
      if (!(ls >> J >> n) || J < 1 || n < 0 || n > 12)
        throw FormatError("purified header must be 'J n'");
      continue;
    }
    double w;
    if (!(ls >> w))
      throw FormatError("purified line missing weight");
    const long dim = 1L << n;
    StateVector v(dim);
    for (long i = 0; i < dim; ++i) {
      double re, im;
      if (!(ls >> re >> im))
        throw FormatError("purified line has too few amplitudes");
      v[i] = cplx(re, im);
    }
    std::string extra;
    if (ls >> extra)
      throw FormatError("purified line has too many amplitudes");
    p.weights.push_back(w);
    p.chi.push_back(v);
  }
  if (J < 0 || static_cast<long>(p.weights.size()) != J)
    throw FormatError("purified file: expected J state lines");
  return p;
}

PurifiedDensity read_purified_file(const std::string &path) {
  auto f = open_or_throw(path);
  return read_purified(f);
}

SparseHamiltonianSpec read_sparse(std::istream &in) {
  std::string line;
  SparseHamiltonianSpec s;
  bool header = false;
  std::map<std::pair<long, long>, cplx> entries;
  while (std::getline(in, line)) {
    if (blank_or_comment(line))
      continue;
    std::istringstream ls(line);
    if (!header) {
      if (!(ls >> s.n >> s.d) || s.n < 0 || s.n > 6 || s.d < 1)
        throw FormatError("sparse header must be 'n d'");
      header = true;
      continue;
    }
    long j, k;
    double re, im;
    if (!(ls >> j >> k >> re >> im))
      throw FormatError("sparse entry must be 'j k re im'");
    const long dim = 1L << s.n;
    if (j < 0 || k < 0 || j >= dim || k >= dim)
      throw FormatError("sparse entry index out of range");
    entries[{j, k}] = cplx(re, im);
  }
  if (!header)
    throw FormatError("empty sparse file");
  const long dim = 1L << s.n;
  s.h = ComplexMatrix::Zero(dim, dim);
  for (auto &[jk, v] : entries)
    s.h(jk.first, jk.second) = v;
  for (auto &[jk, v] : entries) {
    auto it = entries.find({jk.second, jk.first});
    if (it == entries.end())
      s.h(jk.second, jk.first) = std::conj(v);
    else if (std::abs(it->second - std::conj(v)) > 1e-12)
      throw FormatError("sparse entries are not Hermitian");
  }
  return s;
}

SparseHamiltonianSpec read_sparse_file(const std::string &path) {
  auto f = open_or_throw(path);
  return read_sparse(f);
}

} // namespace qsim
