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

#include "qsim/signal_processing.hpp"

#include <algorithm>
#include <fstream>
#include <iomanip>
#include <numeric>
#include <sstream>

namespace qsim {

void PhaseSequence::validate() const {
  for (double p : phases)
    if (!std::isfinite(p))
      throw ContractError("phase sequence contains a non-finite phase");
  if (kind == SequenceKind::qsp && (phases.empty() || phases.size() % 2))
    throw ContractError("QSP phase sequence needs an even, nonzero length (got " +
                        std::to_string(phases.size()) + ")");
}

ComplexMatrix chebyshev_block(const QubitizedIterate &q, int L) {
  if (q.w.size() == 0)
    throw ContractError("chebyshev_block: iterate not built");
  ComplexMatrix g = q.enc.flag_isometry();
  ComplexMatrix x = g;
  for (int k = 0; k < L; ++k)
    x = q.w * x;
  return g.adjoint() * x;
}

ComplexMatrix observable_sequence(const QubitizedIterate &q,
                                  const PhaseSequence &phases) {
  phases.validate();
  ComplexMatrix m = identity(q.enc.total_dim());
  for (double phi : phases.phases)
    m = phased_iterate(q, phi) * m;
  return m;
}

ComplexMatrix phased_block(double lambda, double phi) {
  const double g = std::sqrt(std::max(0.0, 1.0 - lambda * lambda));
  ComplexMatrix b(2, 2);
  b << lambda, -I_UNIT * std::exp(-I_UNIT * phi) * g,
      -I_UNIT * std::exp(I_UNIT * phi) * g, lambda;
  return b;
}

ComplexMatrix observable_block(double lambda, const std::vector<double> &phis) {
  ComplexMatrix m = identity(2);
  for (double phi : phis)
    m = phased_block(lambda, phi) * m;
  return m;
}

ABCDSample su2_coordinates(const ComplexMatrix &m, double lambda,
                           cplx *branch) {
  cplx r = std::sqrt(m.determinant());
  if (branch) {
    // Keep det^{1/2} continuous along the sweep.
    if (std::abs(r + *branch) < std::abs(r - *branch))
      r = -r;
    *branch = r;
  } else if (r.real() < 0) {
    r = -r;
  }
  ComplexMatrix s = m / r;
  ABCDSample o;
  o.lambda = lambda;
  o.a = 0.5 * (s(0, 0) + s(1, 1)).real();
  o.b = 0.5 * (s(0, 0) - s(1, 1)).imag();
  o.c = 0.5 * (s(0, 1) + s(1, 0)).imag();
  o.d = 0.5 * (s(0, 1) - s(1, 0)).real();
  return o;
}

std::vector<double> chebyshev_nodes(int n) {
  std::vector<double> x(n);
  for (int k = 0; k < n; ++k)
    x[k] = std::cos(M_PI * (k + 0.5) / n);
  return x;
}

RealVector chebyshev_interpolate(const std::vector<double> &f) {
  const int n = static_cast<int>(f.size());
  RealVector c = RealVector::Zero(n);
  for (int j = 0; j < n; ++j) {
    double s = 0;
    for (int k = 0; k < n; ++k)
      s += f[k] * std::cos(M_PI * j * (k + 0.5) / n);
    c[j] = (j == 0 ? 1.0 : 2.0) * s / n;
  }
  return c;
}

cplx chebyshev_eval(const RealVector &coef, cplx x) {
  // Clenshaw recurrence; valid off the real axis too.
  cplx b1 = 0, b2 = 0;
  for (long j = coef.size() - 1; j >= 1; --j) {
    cplx b0 = coef[j] + 2.0 * x * b1 - b2;
    b2 = b1;
    b1 = b0;
  }
  return (coef.size() ? coef[0] : 0.0) + x * b1 - b2;
}

namespace {

double wrong_parity(const RealVector &c, int parity) {
  double w = 0;
  for (long j = 0; j < c.size(); ++j)
    if ((j + parity) % 2 != 0)
      w = std::max(w, std::fabs(c[j]));
  return w;
}

} // namespace

SU2Decomposition extract_ABCD(const ComplexMatrix &seq,
                              const QubitizedIterate &q,
                              const SignalSpectrum &spec,
                              const PhaseSequence &phases) {
  if (q.w.size() == 0)
    throw ContractError("extract_ABCD: iterate not built");
  if (!is_unitary(seq, 1e-9))
    throw ContractError("extract_ABCD: sequence is not unitary");
  const int L = static_cast<int>(phases.phases.size());
  SU2Decomposition out;
  out.degree = L;

  std::vector<long> order(spec.lambdas.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(),
            [&](long x, long y) { return spec.lambdas[x] > spec.lambdas[y]; });
  cplx branch = 1.0;
  const StateVector gflag = q.enc.flag_state();
  for (long i : order) {
    const double lam = spec.lambdas[i];
    if (std::fabs(lam) >= 1.0 - 1e-9)
      continue;
    StateVector gl = kron(ComplexMatrix(gflag), ComplexMatrix(spec.vectors.col(i)));
    StateVector wg = q.w * gl;
    StateVector perp = (wg - gl.dot(wg) * gl).normalized();
    ComplexMatrix blk(2, 2);
    StateVector sg = seq * gl, sp = seq * perp;
    blk << gl.dot(sg), gl.dot(sp), perp.dot(sg), perp.dot(sp);
    out.samples.push_back(su2_coordinates(blk, lam, &branch));
  }

  // Functional fit from the scalar model on Chebyshev nodes.
  const int n = L + 1;
  std::vector<double> xs = chebyshev_nodes(n);
  // Natural node order runs from x near 1 downwards, matching the branch sweep.
  std::vector<double> fa(n), fb(n), fc(n), fd(n);
  branch = 1.0;
  for (int k = 0; k < n; ++k) {
    ABCDSample s = su2_coordinates(observable_block(xs[k], phases.phases),
                                   xs[k], &branch);
    const double g = std::sqrt(1.0 - xs[k] * xs[k]);
    fa[k] = s.a;
    fb[k] = s.b;
    fc[k] = s.c / g;
    fd[k] = s.d / g;
  }
  out.cheb_a = chebyshev_interpolate(fa);
  out.cheb_b = chebyshev_interpolate(fb);
  // C/g and D/g have degree L-1, so their top coefficient comes out ~0.
  out.cheb_c_over_g = chebyshev_interpolate(fc);
  out.cheb_d_over_g = chebyshev_interpolate(fd);
  out.parity_impurity = std::max(
      {wrong_parity(out.cheb_a, L % 2), wrong_parity(out.cheb_b, L % 2),
       wrong_parity(out.cheb_c_over_g, (L + 1) % 2),
       wrong_parity(out.cheb_d_over_g, (L + 1) % 2)});
  for (const auto &s : out.samples) {
    const double g = std::sqrt(1.0 - s.lambda * s.lambda);
    const double r = std::max(
        {std::fabs(chebyshev_eval(out.cheb_a, s.lambda).real() - s.a),
         std::fabs(chebyshev_eval(out.cheb_b, s.lambda).real() - s.b),
         std::fabs(g * chebyshev_eval(out.cheb_c_over_g, s.lambda).real() - s.c),
         std::fabs(g * chebyshev_eval(out.cheb_d_over_g, s.lambda).real() - s.d)});
    out.sample_fit_residual = std::max(out.sample_fit_residual, r);
  }
  return out;
}

AchievabilityReport check_achievable(const RealVector &a, const RealVector &b,
                                     int L, PolyBasis basis) {
  // Work in the Chebyshev basis throughout.
  auto to_cheb = [&](const RealVector &m) -> RealVector {
    if (basis == PolyBasis::chebyshev)
      return m;
    // x^k = 2^{-k} sum_{j=0..k} binom(k, j) T_{|k-2j|}
    RealVector c = RealVector::Zero(std::max<long>(m.size(), 1));
    for (long k = 0; k < m.size(); ++k) {
      double binom = 1.0;
      for (long j = 0; j <= k; ++j) {
        const long deg = std::labs(k - 2 * j);
        c[deg] += m[k] * binom * std::pow(2.0, -static_cast<double>(k));
        binom = binom * (k - j) / (j + 1);
      }
    }
    return c;
  };
  RealVector ca = to_cheb(a), cb = to_cheb(b);
  AchievabilityReport r;
  r.worst.assign(5, 0.0);
  auto fail = [&](int cond, double amount) {
    if (std::find(r.failed.begin(), r.failed.end(), cond) == r.failed.end())
      r.failed.push_back(cond);
    r.worst[cond - 1] = std::max(r.worst[cond - 1], amount);
    r.ok = false;
  };
  auto ev = [&](const RealVector &c, cplx x) { return chebyshev_eval(c, x); };

  // (1) degree and parity.
  for (const RealVector *c : {&ca, &cb})
    for (long j = 0; j < c->size(); ++j) {
      const double v = std::fabs((*c)[j]);
      if ((j > L || (j - L) % 2 != 0) && v > 1e-12)
        fail(1, v);
    }
  // (2) A(1) = 1.
  {
    const double dv = std::fabs(ev(ca, 1.0).real() - 1.0);
    if (dv > 1e-9)
      fail(2, dv);
  }
  // (3) |A|^2 + |B|^2 <= 1 on [-1, 1].
  for (int k = 0; k < 2049; ++k) {
    const double x = std::cos(M_PI * k / 2048.0);
    const double s = std::norm(ev(ca, x).real()) + std::norm(ev(cb, x).real());
    if (s > 1.0 + 1e-9)
      fail(3, s - 1.0);
  }
  // (4) A^2 + B^2 >= 1 for x >= 1.
  for (int k = 0; k < 512; ++k) {
    const double x = std::pow(10.0, 3.0 * k / 511.0);
    const double s = std::norm(ev(ca, x).real()) + std::norm(ev(cb, x).real());
    if (s < 1.0 - 1e-9)
      fail(4, 1.0 - s);
  }
  // (5) even L: A(ix)^2 + B(ix)^2 >= 1 for x >= 0 (real by parity).
  if (L % 2 == 0) {
    for (int k = 0; k < 513; ++k) {
      const double x = k == 0 ? 0.0 : std::pow(10.0, -3.0 + 6.0 * (k - 1) / 511.0);
      const cplx av = ev(ca, cplx(0, x)), bv = ev(cb, cplx(0, x));
      const double s = (av * av + bv * bv).real();
      if (s < 1.0 - 1e-9)
        fail(5, 1.0 - s);
    }
  }
  std::sort(r.failed.begin(), r.failed.end());
  return r;
}

ComplexMatrix qsp_sequence(const QubitizedIterate &q,
                           const PhaseSequence &phases, double phi_axis,
                           double Phi) {
  PhaseSequence p = phases;
  p.kind = SequenceKind::qsp;
  p.validate();
  const long dim = q.enc.total_dim();
  if (2 * dim > MAX_TOTAL_DIM)
    throw CapacityError("qsp_sequence: dimension too large");
  const ComplexMatrix x = std::exp(I_UNIT * Phi) * phased_iterate(q, phi_axis);
  const ComplexMatrix id = identity(dim);
  const ComplexMatrix sum = 0.5 * (id + x), diff = 0.5 * (id - x);
  // V_phi in b-major block form.
  auto v_phi = [&](double phi) {
    ComplexMatrix v(2 * dim, 2 * dim);
    v.topLeftCorner(dim, dim) = sum;
    v.bottomRightCorner(dim, dim) = sum;
    v.topRightCorner(dim, dim) = std::exp(-I_UNIT * phi) * diff;
    v.bottomLeftCorner(dim, dim) = std::exp(I_UNIT * phi) * diff;
    return v;
  };
  ComplexMatrix m = identity(2 * dim);
  for (std::size_t k = 0; k + 1 < p.phases.size(); k += 2) {
    ComplexMatrix pair =
        v_phi(p.phases[k + 1] + M_PI).adjoint() * v_phi(p.phases[k]);
    m = pair * m;
  }
  return m;
}

ComplexMatrix qsp_projected_block(const ComplexMatrix &v,
                                  const BlockEncoding &enc) {
  const long dim = enc.total_dim();
  if (v.rows() != 2 * dim)
    throw ShapeError("qsp_projected_block: sequence/encoding mismatch");
  ComplexMatrix plus_block = 0.5 * (v.topLeftCorner(dim, dim) +
                                    v.topRightCorner(dim, dim) +
                                    v.bottomLeftCorner(dim, dim) +
                                    v.bottomRightCorner(dim, dim));
  ComplexMatrix g = enc.flag_isometry();
  return g.adjoint() * plus_block * g;
}

Projection qsp_project(const ComplexMatrix &v, const BlockEncoding &enc,
                       const StateVector &input) {
  const long dim = enc.total_dim();
  if (v.rows() != 2 * dim || input.size() != enc.system_dim)
    throw ShapeError("qsp_project: dimension mismatch");
  ComplexMatrix g = enc.flag_isometry();
  StateVector anc_in = g * input;
  StateVector full(2 * dim);
  full.head(dim) = anc_in / std::sqrt(2.0);
  full.tail(dim) = anc_in / std::sqrt(2.0);
  StateVector out = v * full;
  StateVector plus_part = (out.head(dim) + out.tail(dim)) / std::sqrt(2.0);
  Projection p;
  p.success_prob = plus_part.squaredNorm();
  p.output = g.adjoint() * plus_part;
  return p;
}

PhaseSequence read_phases(std::istream &in) {
  PhaseSequence p;
  std::string line;
  while (std::getline(in, line)) {
    auto s = line.find_first_not_of(" \t\r");
    if (s == std::string::npos || line[s] == '#')
      continue;
    std::string field = line.substr(s);
    auto comma = field.find(',');
    if (comma != std::string::npos)
      field = field.substr(comma + 1);
    std::istringstream ls(field);
    double v;
    if (!(ls >> v)) {
      if (comma != std::string::npos && p.phases.empty())
        continue; // CSV header
      throw FormatError("bad phase line: '" + line + "'");
    }
    std::string extra;
    if (ls >> extra)
      throw FormatError("trailing data on phase line: '" + line + "'");
    p.phases.push_back(v);
  }
  return p;
}

PhaseSequence read_phases_file(const std::string &path) {
  std::ifstream f(path);
  if (!f)
    throw FormatError("cannot open " + path);
  return read_phases(f);
}

void write_phases(std::ostream &out, const PhaseSequence &p) {
  out << std::setprecision(17);
  for (double v : p.phases)
    out << v << '\n';
}

} // namespace qsim
