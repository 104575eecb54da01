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

#include <gtest/gtest.h>

#include <sstream>

#include <Eigen/QR>

#include "qsim/phase_solver.hpp"
#include "qsim/signal_processing.hpp"
#include "test_util.hpp"

using namespace qsim;
using namespace qsim::testing;

namespace {

QubitizedIterate random_lcu_iterate(std::mt19937_64 &rng, int n, int terms) {
  QubitizedIterate q = hermitian_qubitize(lcu_encode(random_pauli(rng, n, terms)));
  iterate(q);
  return q;
}

QubitizedIterate scalar_iterate(double lambda) {
  QubitizedIterate q =
      hermitian_qubitize(dilation_encode(ComplexMatrix::Constant(1, 1, lambda)));
  iterate(q);
  return q;
}

ComplexMatrix spectral_function(const ComplexMatrix &h, double (*f)(double, int),
                                int L) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(h);
  Eigen::VectorXcd d(h.rows());
  for (long i = 0; i < h.rows(); ++i)
    d[i] = f(std::clamp(es.eigenvalues()[i], -1.0, 1.0), L);
  return es.eigenvectors() * d.asDiagonal() * es.eigenvectors().adjoint();
}

double cheb_t(double x, int L) { return std::cos(L * std::acos(x)); }

} // namespace

TEST(Chebyshev, LowOrders) {
  std::mt19937_64 rng(41);
  QubitizedIterate q = random_lcu_iterate(rng, 2, 3);
  ComplexMatrix h = signal_operator(q.enc);
  EXPECT_LE(max_entry_diff(chebyshev_block(q, 0), identity(4)), 1e-14);
  EXPECT_LE(max_entry_diff(chebyshev_block(q, 1), h), 1e-14);
  EXPECT_LE(max_entry_diff(chebyshev_block(q, 5), spectral_function(h, cheb_t, 5)),
            1e-9);
}

TEST(Chebyshev, RandomHermitianSignalsUpTo16) {
  std::mt19937_64 rng(42);
  for (int rep = 0; rep < 10; ++rep) {
    ComplexMatrix h = random_hermitian(rng, 4, 0.95);
    QubitizedIterate q = hermitian_qubitize(dilation_encode(h));
    iterate(q);
    for (int L = 0; L <= 16; ++L)
      EXPECT_LE(operator_distance(chebyshev_block(q, L),
                                  spectral_function(h, cheb_t, L)),
                1e-8);
  }
}

TEST(Chebyshev, NeedsIterate) {
  QubitizedIterate q = hermitian_qubitize(dense_encode(pauli_matrix('Z'), 1));
  EXPECT_THROW(chebyshev_block(q, 2), ContractError);
}

TEST(Observable, EmptyAndSingle) {
  QubitizedIterate q = scalar_iterate(0.4);
  PhaseSequence empty{{}, 0.0, SequenceKind::observable};
  EXPECT_LE(max_entry_diff(observable_sequence(q, empty), identity(2)), 0.0);
  PhaseSequence one{{M_PI / 2}, 0.0, SequenceKind::observable};
  ComplexMatrix m = observable_sequence(q, one);
  EXPECT_TRUE(is_unitary(m, 1e-12));
  EXPECT_NEAR(std::abs(m(0, 0) - 0.4), 0.0, 1e-12);
}

TEST(Observable, EqualPhasesCompose) {
  const double theta = 0.31;
  ComplexMatrix b = observable_block(std::cos(theta), std::vector<double>(5, 0.7));
  // Equal phases: a rotation by 5θ about a fixed axis in the xy-plane.
  EXPECT_NEAR(b(0, 0).real(), std::cos(5 * theta), 1e-12);
  EXPECT_NEAR(std::abs(b(1, 0)), std::sin(5 * theta), 1e-12);
}

TEST(ABCD, IteratePowerGivesChebyshev) {
  std::mt19937_64 rng(43);
  QubitizedIterate q = random_lcu_iterate(rng, 2, 4);
  SignalSpectrum spec = spectrum(signal_operator(q.enc));
  for (int L : {1, 2, 3, 6}) {
    PhaseSequence p{std::vector<double>(L, M_PI / 2), 0.0, SequenceKind::observable};
    SU2Decomposition d = extract_ABCD(observable_sequence(q, p), q, spec, p);
    for (long j = 0; j < d.cheb_a.size(); ++j)
      EXPECT_NEAR(std::fabs(d.cheb_a[j]), j == L ? 1.0 : 0.0, 1e-9);
    EXPECT_LE(d.cheb_b.cwiseAbs().maxCoeff(), 1e-9);
    EXPECT_LE(d.sample_fit_residual, 1e-8);
  }
}

TEST(ABCD, IdentitySequence) {
  QubitizedIterate q = scalar_iterate(0.2);
  SignalSpectrum spec = spectrum(signal_operator(q.enc));
  PhaseSequence p{{}, 0.0, SequenceKind::observable};
  SU2Decomposition d = extract_ABCD(identity(2), q, spec, p);
  EXPECT_NEAR(d.cheb_a[0], 1.0, 1e-12);
  ASSERT_EQ(d.samples.size(), 1u);
  EXPECT_NEAR(d.samples[0].a, 1.0, 1e-12);
  EXPECT_NEAR(d.samples[0].b, 0.0, 1e-12);
}

TEST(ABCD, UnitarityAndParity) {
  std::mt19937_64 rng(44);
  std::uniform_real_distribution<double> u(-M_PI, M_PI);
  for (int L = 1; L <= 8; ++L) {
    QubitizedIterate q = random_lcu_iterate(rng, 2, 5);
    SignalSpectrum spec = spectrum(signal_operator(q.enc));
    PhaseSequence p{{}, 0.0, SequenceKind::observable};
    for (int k = 0; k < L; ++k)
      p.phases.push_back(u(rng));
    SU2Decomposition d = extract_ABCD(observable_sequence(q, p), q, spec, p);
    for (const auto &s : d.samples)
      EXPECT_NEAR(s.a * s.a + s.b * s.b + s.c * s.c + s.d * s.d, 1.0, 1e-9);
    EXPECT_LE(d.parity_impurity, 1e-8);
    EXPECT_LE(d.sample_fit_residual, 1e-8);
  }
}

TEST(Achievable, ChebyshevPolynomials) {
  for (int L = 0; L <= 16; ++L) {
    RealVector a = RealVector::Zero(L + 1), b = RealVector::Zero(1);
    a[L] = 1.0;
    AchievabilityReport r = check_achievable(a, b, L);
    EXPECT_TRUE(r.ok) << "L=" << L;
  }
}

TEST(Achievable, SquareFailsImaginaryAxis) {
  RealVector a(3), b = RealVector::Zero(1);
  a << 0, 0, 1; // monomial x^2
  AchievabilityReport r = check_achievable(a, b, 2, PolyBasis::monomial);
  EXPECT_FALSE(r.ok);
  EXPECT_EQ(r.failed, std::vector<int>({5}));
}

TEST(Achievable, ScaledFailsNormalisation) {
  RealVector a(2), b = RealVector::Zero(1);
  a << 0, 0.5;
  AchievabilityReport r = check_achievable(a, b, 1);
  EXPECT_FALSE(r.ok);
  EXPECT_NE(std::find(r.failed.begin(), r.failed.end(), 2), r.failed.end());
}

TEST(Achievable, WrongParity) {
  RealVector a(3), b = RealVector::Zero(1);
  a << 0.1, 0, 0.9;
  AchievabilityReport r = check_achievable(a, b, 1);
  EXPECT_NE(std::find(r.failed.begin(), r.failed.end(), 1), r.failed.end());
}

TEST(Achievable, MonomialConversion) {
  // T_3 = 4x^3 - 3x.
  RealVector m(4), b = RealVector::Zero(1);
  m << 0, -3, 0, 4;
  EXPECT_TRUE(check_achievable(m, b, 3, PolyBasis::monomial).ok);
}

TEST(QspSequence, InversePairIsIdentity) {
  std::mt19937_64 rng(45);
  QubitizedIterate q = random_lcu_iterate(rng, 1, 2);
  PhaseSequence p{{0.0, -M_PI}};
  ComplexMatrix v = qsp_sequence(q, p);
  EXPECT_LE(max_entry_diff(v, identity(v.rows())), 1e-12);
}

TEST(QspSequence, OddLengthRejected) {
  std::mt19937_64 rng(46);
  QubitizedIterate q = random_lcu_iterate(rng, 1, 2);
  EXPECT_THROW(qsp_sequence(q, PhaseSequence{{0.1, 0.2, 0.3}}), ContractError);
}

TEST(QspSequence, EigenspaceBlockDiagonal) {
  std::mt19937_64 rng(47);
  std::uniform_real_distribution<double> u(-M_PI, M_PI);
  QubitizedIterate q = random_lcu_iterate(rng, 2, 4);
  PhaseSequence p;
  for (int k = 0; k < 6; ++k)
    p.phases.push_back(u(rng));
  ComplexMatrix v = qsp_sequence(q, p);
  EXPECT_TRUE(is_unitary(v, 1e-10));
  SignalSpectrum spec = spectrum(signal_operator(q.enc));
  for (long i = 0; i < spec.lambdas.size(); ++i) {
    if (std::fabs(spec.lambdas[i]) > 1 - 1e-9)
      continue;
    StateVector gl = kron(ComplexMatrix(q.enc.flag_state()),
                          ComplexMatrix(spec.vectors.col(i)));
    StateVector wg = q.w * gl;
    StateVector gp = (wg - gl.dot(wg) * gl).normalized();
    ComplexMatrix proj = outer(gl, gl) + outer(gp, gp);
    ComplexMatrix pb = kron(identity(2), proj);
    EXPECT_LE(spectral_norm(v * pb - pb * v), 1e-9);
  }
}

TEST(QspSequence, ScalarResponseIsTrigPolynomial) {
  std::mt19937_64 rng(48);
  std::uniform_real_distribution<double> u(-M_PI, M_PI);
  const int N = 6;
  std::vector<double> phis(N);
  for (auto &p : phis)
    p = u(rng);
  PhaseSequence ps{phis};
  const int m = 48;
  Eigen::MatrixXcd basis(m, N + 1);
  Eigen::VectorXcd f(m);
  for (int j = 0; j < m; ++j) {
    const double theta = 0.05 + 3.0 * j / m;
    QubitizedIterate q = scalar_iterate(std::cos(theta));
    ComplexMatrix blk = qsp_projected_block(qsp_sequence(q, ps), q.enc);
    f[j] = blk(0, 0);
    for (int k = -N / 2; k <= N / 2; ++k)
      basis(j, k + N / 2) = std::exp(I_UNIT * double(k) * theta);
  }
  Eigen::VectorXcd c = basis.colPivHouseholderQr().solve(f);
  EXPECT_LE((basis * c - f).cwiseAbs().maxCoeff(), 1e-8);
}

TEST(QspProject, IdentitySequence) {
  std::mt19937_64 rng(49);
  QubitizedIterate q = random_lcu_iterate(rng, 1, 2);
  StateVector in = random_state(rng, 2);
  Projection p = qsp_project(identity(2 * q.enc.total_dim()), q.enc, in);
  EXPECT_NEAR(p.success_prob, 1.0, 1e-14);
  EXPECT_LE((p.output - in).norm(), 1e-14);
}

TEST(QspProject, ReferenceRowSuccessProbability) {
  std::mt19937_64 rng(50);
  // H with spectral norm <= 1 so that alpha t matches the row's t.
  QubitizedIterate q = random_lcu_iterate(rng, 2, 3);
  const PhaseRow &row = reference_phase_rows().front();
  ComplexMatrix v = qsp_sequence(q, PhaseSequence{row.phases});
  SignalSpectrum spec = spectrum(signal_operator(q.enc));
  for (long i = 0; i < spec.vectors.cols(); ++i) {
    Projection p = qsp_project(v, q.enc, spec.vectors.col(i));
    EXPECT_GE(p.success_prob, 1 - 2 * row.eps);
  }
}

TEST(QspProject, HaarInputsWithVerifiedSequence) {
  std::mt19937_64 rng(51);
  QubitizedIterate q = random_lcu_iterate(rng, 2, 4);
  SolverReport r = solve_phases(1.0, 1e-4);
  ASSERT_TRUE(r.converged);
  ComplexMatrix v = qsp_sequence(q, r.phases);
  for (int rep = 0; rep < 10; ++rep) {
    Projection p = qsp_project(v, q.enc, random_state(rng, 4));
    EXPECT_GE(p.success_prob, 1 - 2e-4);
  }
}

TEST(PhaseIO, RoundTripAndCsv) {
  PhaseSequence p{{0.1, -2.5, 3.0, 1e-9}};
  std::stringstream ss;
  write_phases(ss, p);
  PhaseSequence back = read_phases(ss);
  EXPECT_EQ(back.phases, p.phases);
  std::istringstream csv("index,phase\n0,-1.61\n1,1.67\n");
  PhaseSequence c = read_phases(csv);
  EXPECT_EQ(c.phases, std::vector<double>({-1.61, 1.67}));
  std::istringstream bad("0.1\nabc\n");
  EXPECT_THROW(read_phases(bad), FormatError);
}
