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

#include "qsim/hamsim.hpp"

#include <algorithm>
#include <chrono>
#include <cstdlib>
#include <iomanip>
#include <ostream>

#include <Eigen/Eigenvalues>
#include <json.hpp>

namespace qsim {

std::string to_string(SourceKind k) {
  switch (k) {
  case SourceKind::pauli:
    return "pauli";
  case SourceKind::dense:
    return "dense";
  case SourceKind::purified:
    return "purified";
  case SourceKind::sparse:
    return "sparse";
  }
  return "?";
}

Source source_from_pauli(const PauliDecomposition &p) {
  p.validate();
  return {SourceKind::pauli, lcu_encode(p), p.matrix(), p.n};
}

Source source_from_sparse(const SparseHamiltonianSpec &s) {
  s.validate();
  return {SourceKind::sparse, sparse_encode(s), s.h, s.n};
}

Source source_from_purified(const PurifiedDensity &p) {
  p.validate();
  BlockEncoding enc = purify_encode(p);
  return {SourceKind::purified, enc, p.rho(), ceil_log2(enc.system_dim)};
}

Source source_from_dense(const ComplexMatrix &u, long ancilla_dim,
                         double alpha) {
  BlockEncoding enc = dense_encode(u, ancilla_dim, alpha);
  return {SourceKind::dense, enc, alpha * signal_operator(enc),
          ceil_log2(enc.system_dim)};
}

Source load_source(SourceKind kind, const std::string &path, long ancilla_dim,
                   double alpha) {
  switch (kind) {
  case SourceKind::pauli:
    return source_from_pauli(read_pauli_file(path));
  case SourceKind::sparse:
    return source_from_sparse(read_sparse_file(path));
  case SourceKind::purified:
    return source_from_purified(read_purified_file(path));
  case SourceKind::dense: {
    ComplexMatrix u = read_matrix_file(path);
    if (ancilla_dim < 1)
      throw ContractError("dense source needs an ancilla dimension");
    return source_from_dense(u, ancilla_dim, alpha);
  }
  }
  throw ContractError("unknown source kind");
}

RuntimeConfig RuntimeConfig::from_env() {
  RuntimeConfig c;
  auto parse = [](const char *name, auto &field) {
    const char *v = std::getenv(name);
    if (!v || !*v)
      return;
    char *end = nullptr;
    double x = std::strtod(v, &end);
    if (end == v || *end != '\0')
      throw FormatError(std::string("bad value for ") + name + ": " + v);
    field = static_cast<std::decay_t<decltype(field)>>(x);
  };
  parse("QSIM_TOL", c.tol);
  parse("QSIM_THETA_GRID", c.theta_grid);
  parse("QSIM_SEED", c.seed);
  if (!(c.tol > 0) || c.theta_grid < 2)
    throw RangeError("invalid runtime configuration");
  return c;
}

SimulationReport simulate(const Source &src, double t, double eps,
                          const SimulateOptions &opt) {
  const auto start = std::chrono::steady_clock::now();
  if (!(eps > 0 && eps < 1))
    throw RangeError("simulate: eps must lie in (0, 1)");
  if (2 * src.enc.total_dim() > MAX_SIMULATION_DIM)
    throw CapacityError("simulate: total dimension exceeds 2^12");
  QubitizedIterate q = hermitian_qubitize(src.enc);
  if (2 * q.enc.total_dim() > MAX_SIMULATION_DIM)
    throw CapacityError("simulate: total dimension exceeds 2^12");

  SimulationReport rep;
  SimulationPlan &plan = rep.plan;
  plan.source = src.kind;
  plan.t = t;
  plan.eps = eps;
  plan.tau = src.enc.alpha * t;
  plan.plan = plan_queries(std::fabs(plan.tau), eps);
  plan.extended = q.extended;
  plan.total_qubits = src.system_qubits + ceil_log2(src.enc.ancilla_dim) +
                      (q.extended ? 1 : 0) + 1;

  const double axis = opt.solver.axis, Phi = opt.solver.Phi;
  const ScalarModel model = ScalarModel::uniform(
      std::max(opt.solver.theta_grid, 4 * (plan.plan.N + 2)), axis, Phi);
  if (opt.phases) {
    plan.phases = *opt.phases;
    plan.phases.kind = SequenceKind::qsp;
    plan.phases.validate();
    rep.phase_error = verify_phases(plan.phases, plan.tau, model);
  } else {
    SolverOptions so = opt.solver;
    so.N = plan.plan.N;
    SolverReport sr = solve_phases(plan.tau, eps, so);
    if (!sr.converged)
      throw NonConvergenceError("simulate: phase solver did not reach eps (" +
                                std::to_string(sr.max_error) + ")");
    plan.phases = sr.phases;
    rep.phase_error = sr.max_error;
  }
  rep.N = static_cast<long>(plan.phases.phases.size());
  rep.oracle_query_count = q.extended ? 2 * rep.N : rep.N;

  iterate(q);
  const ComplexMatrix v = qsp_sequence(q, plan.phases, axis, Phi);
  const ComplexMatrix block = qsp_projected_block(v, q.enc);
  rep.distance_to_exact = operator_distance(block, expm_herm(src.hamiltonian, t));

  EigenDecomposition eig = herm_eig(src.hamiltonian);
  rep.min_success_prob = 1.0;
  for (long i = 0; i < eig.vectors.cols(); ++i) {
    Projection p = qsp_project(v, q.enc, eig.vectors.col(i));
    rep.min_success_prob = std::min(rep.min_success_prob, p.success_prob);
  }
  rep.wall_time = std::chrono::duration<double>(
                      std::chrono::steady_clock::now() - start)
                      .count();
  return rep;
}

std::vector<Fig2Row> bench_fig2() {
  std::vector<Fig2Row> rows;
  const long pts = 64;
  for (long N : {2L, 4L, 8L, 16L, 32L, 64L}) {
    const long q = 1 + N / 2;
    for (long i = 0; i < pts; ++i) {
      const double t = std::pow(10.0, -3.0 + 5.0 * i / (pts - 1));
      rows.push_back({N, t, truncation_error(t, q), upper_bound(t, q)});
    }
  }
  return rows;
}

std::vector<CompareRow> bench_compare(double eps,
                                      const std::vector<double> &ts) {
  std::vector<CompareRow> rows;
  for (double t : ts) {
    JacobiAngerPlan p = plan_queries(t, eps);
    BcksCount b = bcks_queries(t, eps);
    rows.push_back({t, eps, p.N, 2 * p.N, b.total});
  }
  return rows;
}

long min_trotter_steps(const PauliDecomposition &terms, double t, double eps) {
  long lo = 0, hi = 1;
  while (exact_trotter_error(terms, t, hi) > eps) {
    lo = hi;
    if (hi > (1L << 40))
      throw RangeError("min_trotter_steps: no step count below 2^40");
    hi *= 2;
  }
  // error(lo) > eps >= error(hi)
  while (hi - lo > 1) {
    const long mid = lo + (hi - lo) / 2;
    if (exact_trotter_error(terms, t, mid) <= eps)
      hi = mid;
    else
      lo = mid;
  }
  return hi;
}

std::vector<ChemRow> bench_chem(const std::vector<LabeledPauliBlock> &blocks,
                                double eps) {
  if (!(eps > 0 && eps < 1))
    throw RangeError("bench_chem: eps must lie in (0, 1)");
  const double t = 1.0 / eps;
  std::vector<ChemRow> rows;
  for (const auto &blk : blocks) {
    PauliDecomposition terms;
    terms.n = blk.terms.n;
    for (const auto &term : blk.terms.terms)
      if (term.pauli.find_first_not_of('I') != std::string::npos)
        terms.terms.push_back(term);
    if (terms.terms.empty())
      throw ContractError("bench_chem: block '" + blk.label +
                          "' has only identity terms");
    ChemRow r;
    r.label = blk.label;
    r.d = static_cast<long>(terms.terms.size());
    r.alpha = terms.alpha();
    r.t = t;
    r.eps = eps;
    double hmax = 0;
    for (const auto &term : terms.terms)
      hmax = std::max(hmax, std::fabs(term.coef));
    r.n_trotter1 = trotter_first_order_steps(r.d, t, hmax, eps);
    r.N_T_exact = r.d * min_trotter_steps(terms, t, eps);
    r.N_TS_bound = trotter_suzuki_bound(r.d, t, hmax, eps);
    r.N_QSP = qsp_gate_estimate(r.d, r.alpha, t);
    rows.push_back(r);
  }
  return rows;
}

void write_fig2_csv(std::ostream &out, const std::vector<Fig2Row> &rows) {
  out << std::setprecision(17) << "N,t,eps_truncation,eps_upper\n";
  for (const auto &r : rows)
    out << r.N << ',' << r.t << ',' << r.eps_truncation << ',' << r.eps_upper
        << '\n';
}

void write_compare_csv(std::ostream &out, const std::vector<CompareRow> &rows) {
  out << std::setprecision(17)
      << "t,eps,qsp_iterates,qsp_oracle_queries,bcks_total\n";
  for (const auto &r : rows)
    out << r.t << ',' << r.eps << ',' << r.qsp_iterates << ','
        << r.qsp_oracle_queries << ',' << r.bcks_total << '\n';
}

void write_chem_csv(std::ostream &out, const std::vector<ChemRow> &rows) {
  out << std::setprecision(17)
      << "label,d,alpha,t,eps,n_trotter1,N_T_exact,N_TS_bound,N_QSP\n";
  for (const auto &r : rows)
    out << r.label << ',' << r.d << ',' << r.alpha << ',' << r.t << ','
        << r.eps << ',' << r.n_trotter1 << ',' << r.N_T_exact << ','
        << r.N_TS_bound << ',' << r.N_QSP << '\n';
}

namespace {

void add(std::vector<CheckResult> &out, std::string name, double residual,
         double tol, std::string detail = {}) {
  out.push_back({std::move(name), residual <= tol, residual, std::move(detail)});
}

void hermitian_checks(const BlockEncoding &enc, double tol,
                      std::vector<CheckResult> &out) {
  QubitizedIterate q = hermitian_qubitize(enc);
  QubitizationCheck c = check_qubitized(q.enc, q.s_op, tol);
  add(out, "signal_preserved", c.signal_residual, tol);
  add(out, "reflection_squared", c.square_residual, tol);
  if (!c.ok)
    return;
  iterate(q);
  const ComplexMatrix h = signal_operator(q.enc);
  SignalSpectrum spec = spectrum(h);
  double leak = 0, cos_res = 0;
  for (long i = 0; i < spec.lambdas.size(); ++i) {
    SU2Block b = su2_block(q.w, q.enc, spec, i, 1.0);
    leak = std::max(leak, b.leakage);
    cos_res = std::max(cos_res, std::abs(b.block(0, 0) - b.lambda));
  }
  add(out, "invariant_subspace_leakage", leak, tol);
  add(out, "block_cos_component", cos_res, tol);
  // <G|W^L|G> against T_L of the signal, through its spectrum.
  double cheb = 0;
  for (int L = 0; L <= 8; ++L) {
    RealVector tl(spec.lambdas.size());
    for (long i = 0; i < tl.size(); ++i)
      tl[i] = std::cos(L * std::acos(spec.lambdas[i]));
    ComplexMatrix ref =
        spec.vectors * tl.cast<cplx>().asDiagonal() * spec.vectors.adjoint();
    cheb = std::max(cheb, max_entry_diff(chebyshev_block(q, L), ref));
  }
  add(out, "chebyshev_identity", cheb, 1e-8, "L = 0..8");
}

void normal_checks(const BlockEncoding &enc, double tol,
                   std::vector<CheckResult> &out) {
  NormalIterates ni = normal_qubitize(enc, tol);
  const ComplexMatrix h = signal_operator(enc);
  Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(h);
  const std::vector<double> phis = {0.3, -1.1, 2.0, 0.7};
  const ComplexMatrix p = ni.alternating(phis);
  double leak = 0;
  for (long i = 0; i < es.eigenvectors().cols(); ++i) {
    StateVector v = es.eigenvectors().col(i).normalized();
    StateVector gv = kron(ComplexMatrix(enc.flag_state()), ComplexMatrix(v));
    leak = std::max(leak, invariant_leakage(p, gv));
  }
  add(out, "normal_alternating_leakage", leak, tol, "length-4 alternating");
}

} // namespace

std::vector<CheckResult> verify_suite(const BlockEncoding &enc, double tol) {
  std::vector<CheckResult> out;
  add(out, "oracle_unitary", unitarity_residual(enc.u), tol);
  add(out, "flag_normalized", std::fabs(enc.flag_state().norm() - 1.0), tol);
  if (!out[0].pass || !out[1].pass)
    return out;
  const ComplexMatrix h = signal_operator(enc);
  const double herm = hermiticity_residual(h);
  const double comm = (h * h.adjoint() - h.adjoint() * h).cwiseAbs().maxCoeff();
  try {
    if (herm <= tol) {
      add(out, "signal_hermitian", herm, tol);
      hermitian_checks(enc, tol, out);
    } else if (comm <= tol) {
      add(out, "signal_normal", comm, tol);
      normal_checks(enc, tol, out);
    } else {
      out.push_back({"signal_generic", true, herm,
                     "neither Hermitian nor normal; extended encoding checked"});
      hermitian_checks(enc, tol, out);
    }
  } catch (const Error &e) {
    out.push_back({"suite_error", false, 0.0, e.what()});
  }
  return out;
}

std::string checks_to_json(const std::vector<CheckResult> &checks) {
  nlohmann::json j;
  bool all = true;
  j["checks"] = nlohmann::json::array();
  for (const auto &c : checks) {
    j["checks"].push_back({{"name", c.name},
                           {"pass", c.pass},
                           {"residual", c.residual},
                           {"detail", c.detail}});
    all = all && c.pass;
  }
  j["pass"] = all;
  return j.dump(2);
}

} // namespace qsim
