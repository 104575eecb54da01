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

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "qsim/phase_solver.hpp"
#include "qsim/planner.hpp"

namespace qsim {

enum class SourceKind { pauli, dense, purified, sparse };

std::string to_string(SourceKind k);

/** An encoded Hamiltonian H = alpha * <G|u|G> and its provenance. */
struct Source {
  SourceKind kind = SourceKind::pauli;
  BlockEncoding enc;
  ComplexMatrix hamiltonian;
  int system_qubits = 0;
};

Source source_from_pauli(const PauliDecomposition &p);
Source source_from_sparse(const SparseHamiltonianSpec &s);
Source source_from_purified(const PurifiedDensity &p);
Source source_from_dense(const ComplexMatrix &u, long ancilla_dim,
                         double alpha = 1.0);
/** Reads `path` in the format implied by `kind`. */
Source load_source(SourceKind kind, const std::string &path,
                   long ancilla_dim = 0, double alpha = 1.0);

/** CLI flags > environment (QSIM_TOL, QSIM_THETA_GRID, QSIM_SEED) > defaults. */
struct RuntimeConfig {
  double tol = 1e-10;
  long theta_grid = 1024;
  std::uint64_t seed = 1;

  static RuntimeConfig from_env();
};

struct SimulationPlan {
  SourceKind source = SourceKind::pauli;
  double t = 0, eps = 0;
  double tau = 0; // alpha * t
  JacobiAngerPlan plan;
  PhaseSequence phases;
  bool extended = false;
  int total_qubits = 0;
};

struct SimulationReport {
  SimulationPlan plan;
  double distance_to_exact = 0;
  double min_success_prob = 0;
  double phase_error = 0; // scalar-model error of the phases used
  long N = 0;
  long oracle_query_count = 0;
  double wall_time = 0;
};

struct SimulateOptions {
  std::optional<PhaseSequence> phases;
  SolverOptions solver;
};

/** Total (doubled) dimension allowed for full-matrix verification. */
inline constexpr long MAX_SIMULATION_DIM = 1L << 12;

SimulationReport simulate(const Source &src, double t, double eps,
                          const SimulateOptions &opt = {});

struct Fig2Row {
  long N;
  double t, eps_truncation, eps_upper;
};
struct CompareRow {
  double t, eps;
  long qsp_iterates, qsp_oracle_queries, bcks_total;
};
struct ChemRow {
  std::string label;
  long d;
  double alpha, t, eps;
  long n_trotter1;
  long N_T_exact;
  double N_TS_bound;
  double N_QSP;
};

std::vector<Fig2Row> bench_fig2();
std::vector<CompareRow> bench_compare(double eps, const std::vector<double> &ts);
std::vector<ChemRow> bench_chem(const std::vector<LabeledPauliBlock> &blocks,
                                double eps = 1.6e-3);
/** Smallest n with exact_trotter_error(terms, t, n) <= eps. */
long min_trotter_steps(const PauliDecomposition &terms, double t, double eps);

void write_fig2_csv(std::ostream &out, const std::vector<Fig2Row> &rows);
void write_compare_csv(std::ostream &out, const std::vector<CompareRow> &rows);
void write_chem_csv(std::ostream &out, const std::vector<ChemRow> &rows);

struct CheckResult {
  std::string name;
  bool pass = false;
  double residual = 0;
  std::string detail;
};

/** Qubitization and Chebyshev invariants of an encoding (normal signals get
 * the alternating-sign checks instead). */
std::vector<CheckResult> verify_suite(const BlockEncoding &enc,
                                      double tol = 1e-9);
std::string checks_to_json(const std::vector<CheckResult> &checks);

} // namespace qsim
