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

#include "qsim/qubitization.hpp"

#include <cmath>

namespace qsim {

namespace {

ComplexMatrix full_ancilla_operator(const BlockEncoding &enc,
                                    const ComplexMatrix &s) {
  if (s.rows() == enc.ancilla_dim && s.cols() == enc.ancilla_dim)
    return kron(s, identity(enc.system_dim));
  if (s.rows() != enc.total_dim() || s.cols() != enc.total_dim())
    throw ShapeError("s has neither ancilla nor full dimension");
  // Must factor as s_a ⊗ I: every system block is a multiple of identity.
  const long n = enc.system_dim;
  for (long a = 0; a < enc.ancilla_dim; ++a)
    for (long b = 0; b < enc.ancilla_dim; ++b) {
      ComplexMatrix blk = s.block(a * n, b * n, n, n);
      ComplexMatrix ref = blk(0, 0) * identity(n);
      if (max_entry_diff(blk, ref) > 1e-12)
        throw ContractError("s acts nontrivially on the system register");
    }
  return s;
}

} // namespace

QubitizationCheck check_qubitized(const BlockEncoding &enc,
                                  const ComplexMatrix &s, double tol) {
  ComplexMatrix sf = full_ancilla_operator(enc, s);
  if (!is_unitary(sf, 1e-10))
    throw ContractError("check_qubitized: s is not unitary");
  ComplexMatrix g = enc.flag_isometry();
  ComplexMatrix su = sf * enc.u;
  ComplexMatrix h = g.adjoint() * enc.u * g;
  QubitizationCheck c;
  c.signal_residual = operator_distance(g.adjoint() * su * g, h);
  c.square_residual =
      operator_distance(g.adjoint() * su * su * g, identity(enc.system_dim));
  c.ok = c.signal_residual <= tol && c.square_residual <= tol;
  return c;
}

QubitizedIterate hermitian_qubitize(const BlockEncoding &enc, double tol) {
  enc.validate();
  const ComplexMatrix h = signal_operator(enc);
  QubitizationCheck c = check_qubitized(enc, identity(enc.ancilla_dim), tol);
  if (c.ok && hermiticity_residual(h) <= tol)
    return {enc, identity(enc.total_dim()), ComplexMatrix(), false};

  const long d = enc.ancilla_dim, dim = enc.total_dim();
  if (2 * dim > MAX_TOTAL_DIM)
    throw CapacityError("hermitian_qubitize: extended space too large");
  ComplexMatrix up = ComplexMatrix::Zero(2 * dim, 2 * dim);
  up.topLeftCorner(dim, dim) = enc.u;
  up.bottomRightCorner(dim, dim) = enc.u.adjoint();
  ComplexMatrix had(2, 2);
  had << 1, 1, 1, -1;
  had /= std::sqrt(2.0);
  ComplexMatrix sx(2, 2);
  sx << 0, 1, 1, 0;
  BlockEncoding ext{2 * d, enc.system_dim, up, kron(had, enc.g_prep),
                    enc.alpha};
  return {ext, kron(sx, identity(dim)), ComplexMatrix(), true};
}

const ComplexMatrix &iterate(QubitizedIterate &q, double tol) {
  QubitizationCheck c = check_qubitized(q.enc, q.s_op, tol);
  if (!c.ok)
    throw ContractError("iterate: qubitization conditions violated "
                        "(signal residual " +
                        std::to_string(c.signal_residual) +
                        ", square residual " +
                        std::to_string(c.square_residual) + ")");
  ComplexMatrix refl = 2.0 * q.enc.flag_projector() - identity(q.enc.total_dim());
  q.w = refl * q.s_op * q.enc.u;
  return q.w;
}

ComplexMatrix partial_reflection(const BlockEncoding &enc, double a) {
  return (1.0 + std::exp(-I_UNIT * a)) * enc.flag_projector() -
         identity(enc.total_dim());
}

ComplexMatrix phased_iterate(const QubitizedIterate &q, double phi) {
  if (q.w.size() == 0)
    throw ContractError("phased_iterate: iterate not built");
  const double a = phi + M_PI / 2;
  return partial_reflection(q.enc, a) * q.w * partial_reflection(q.enc, -a);
}

SU2Block su2_block(const ComplexMatrix &w, const BlockEncoding &enc,
                   const SignalSpectrum &spec, long i, double leak_tol) {
  SU2Block b;
  b.lambda = spec.lambdas[i];
  b.theta = std::acos(std::clamp(b.lambda, -1.0, 1.0));
  StateVector gl = kron(ComplexMatrix(enc.flag_state()),
                        ComplexMatrix(spec.vectors.col(i)));
  StateVector wg = w * gl;
  const cplx top = gl.dot(wg);
  StateVector perp = wg - top * gl;
  const double pn = perp.norm();
  if (std::fabs(b.lambda) >= 1.0 - 1e-9 || pn < 1e-12) {
    b.block = ComplexMatrix::Constant(1, 1, top);
    b.leakage = pn;
    return b;
  }
  StateVector gp = perp / pn;
  StateVector wp = w * gp;
  b.block.resize(2, 2);
  b.block << top, gl.dot(wp), gp.dot(wg), gp.dot(wp);
  StateVector out = wp - gl.dot(wp) * gl - gp.dot(wp) * gp;
  b.leakage = out.norm();
  if (b.leakage > leak_tol)
    throw ContractError("su2_block: not qubitized (leakage " +
                        std::to_string(b.leakage) + ")");
  return b;
}

NormalIterates normal_qubitize(const BlockEncoding &enc, double tol) {
  enc.validate();
  ComplexMatrix h = signal_operator(enc);
  const double comm = (h * h.adjoint() - h.adjoint() * h).cwiseAbs().maxCoeff();
  if (comm > tol)
    throw ContractError("normal_qubitize: signal operator is not normal "
                        "(commutator " +
                        std::to_string(comm) + ")");
  return {enc};
}

ComplexMatrix NormalIterates::plus(double phi) const {
  const double a = phi + M_PI / 2;
  ComplexMatrix refl = 2.0 * enc.flag_projector() - identity(enc.total_dim());
  return partial_reflection(enc, a) * refl * enc.u * partial_reflection(enc, -a);
}

ComplexMatrix NormalIterates::minus(double phi) const {
  const double a = phi + M_PI / 2;
  ComplexMatrix refl = 2.0 * enc.flag_projector() - identity(enc.total_dim());
  return partial_reflection(enc, a) * refl * enc.u.adjoint() *
         partial_reflection(enc, -a);
}

ComplexMatrix NormalIterates::alternating(const std::vector<double> &phis) const {
  ComplexMatrix m = identity(enc.total_dim());
  for (std::size_t k = 0; k < phis.size(); ++k)
    m = (k % 2 == 0 ? plus(phis[k]) : minus(phis[k])) * m;
  return m;
}

double invariant_leakage(const ComplexMatrix &p, const StateVector &v) {
  StateVector k1 = v.normalized();
  StateVector pv = p * k1;
  StateVector r = pv - k1.dot(pv) * k1;
  if (r.norm() < 1e-13)
    return 0.0;
  StateVector k2 = r.normalized();
  StateVector pk = p * k2;
  StateVector out = pk - k1.dot(pk) * k1 - k2.dot(pk) * k2;
  return out.norm();
}

} // namespace qsim
