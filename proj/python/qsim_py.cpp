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

#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "qsim/hamsim.hpp"

namespace py = pybind11;
using namespace qsim;

namespace {

PauliDecomposition to_pauli(int n, const std::vector<std::pair<double, std::string>> &terms) {
  PauliDecomposition p;
  p.n = n;
  for (const auto &[c, s] : terms)
    p.terms.push_back({c, s});
  p.validate();
  return p;
}

py::dict report_dict(const SimulationReport &r) {
  py::dict d;
  d["t"] = r.plan.t;
  d["eps"] = r.plan.eps;
  d["tau"] = r.plan.tau;
  d["N"] = r.N;
  d["oracle_query_count"] = r.oracle_query_count;
  d["distance_to_exact"] = r.distance_to_exact;
  d["min_success_prob"] = r.min_success_prob;
  d["phase_error"] = r.phase_error;
  d["total_qubits"] = r.plan.total_qubits;
  d["extended"] = r.plan.extended;
  d["phases"] = r.plan.phases.phases;
  d["wall_time"] = r.wall_time;
  return d;
}

} // namespace

PYBIND11_MODULE(_qsim, m) {
  m.doc() = "Hamiltonian simulation by qubitization and quantum signal processing";

  auto base = py::register_exception<Error>(m, "Error", PyExc_RuntimeError);
  py::register_exception<ShapeError>(m, "ShapeError", base.ptr());
  py::register_exception<ContractError>(m, "ContractError", base.ptr());
  py::register_exception<CapacityError>(m, "CapacityError", base.ptr());
  py::register_exception<NormalizationError>(m, "NormalizationError", base.ptr());
  py::register_exception<RangeError>(m, "RangeError", base.ptr());
  py::register_exception<DomainError>(m, "DomainError", base.ptr());
  py::register_exception<FormatError>(m, "FormatError", base.ptr());
  py::register_exception<NonConvergenceError>(m, "NonConvergenceError", base.ptr());

  m.def("expm_herm",
        [](const ComplexMatrix &h, double t) { return expm_herm(h, t); },
        py::arg("h"), py::arg("t"),
        "exp(-i h t) for Hermitian h.");
  m.def("operator_distance", &operator_distance, py::arg("a"), py::arg("b"));
  m.def("pauli_matrix",
        [](int n, const std::vector<std::pair<double, std::string>> &terms) {
          return to_pauli(n, terms).matrix();
        },
        py::arg("n"), py::arg("terms"));
  m.def("lcu_signal",
        [](int n, const std::vector<std::pair<double, std::string>> &terms) {
          BlockEncoding e = lcu_encode(to_pauli(n, terms));
          return py::make_tuple(signal_operator(e), e.alpha, e.ancilla_dim);
        },
        py::arg("n"), py::arg("terms"),
        "(<G|U|G>, alpha, ancilla_dim) of the LCU encoding.");

  m.def("bessel_j", &bessel_j, py::arg("k"), py::arg("t"));
  m.def("truncation_error", &truncation_error, py::arg("t"), py::arg("q"));
  m.def("upper_bound", &upper_bound, py::arg("t"), py::arg("q"));
  m.def("plan_queries",
        [](double t, double eps) {
          JacobiAngerPlan p = plan_queries(t, eps);
          py::dict d;
          d["N"] = p.N;
          d["q"] = p.q;
          d["truncation_error"] = p.truncation_error;
          d["upper_bound"] = p.upper_bound;
          d["coefficients"] = p.coefficients;
          return d;
        },
        py::arg("t"), py::arg("eps"));
  m.def("bcks_queries",
        [](double t, double eps) {
          BcksCount c = bcks_queries(t, eps);
          return py::make_tuple(c.K, c.r, c.total);
        },
        py::arg("t"), py::arg("eps"), "(K, r, total).");
  m.def("qsp_gate_estimate", &qsp_gate_estimate, py::arg("d"), py::arg("alpha"),
        py::arg("t"));

  m.def("verify_phases",
        [](const std::vector<double> &phases, double t, long grid) {
          return verify_phases(PhaseSequence{phases}, t, ScalarModel::uniform(grid));
        },
        py::arg("phases"), py::arg("t"), py::arg("grid") = 1024);
  m.def("solve_phases",
        [](double t, double eps, long N, std::uint64_t seed, long restarts) {
          SolverOptions o;
          o.N = N;
          o.seed = seed;
          o.restarts = restarts;
          SolverReport r = solve_phases(t, eps, o);
          py::dict d;
          d["phases"] = r.phases.phases;
          d["N"] = r.N;
          d["max_error"] = r.max_error;
          d["converged"] = r.converged;
          d["seed_kind"] = r.seed_kind;
          return d;
        },
        py::arg("t"), py::arg("eps"), py::arg("N") = 0, py::arg("seed") = 1,
        py::arg("restarts") = 200);
  m.def("reference_phase_rows", [] {
    py::list out;
    for (const auto &r : reference_phase_rows())
      out.append(py::make_tuple(r.N, r.eps, r.t, r.phases));
    return out;
  });

  m.def("simulate_pauli",
        [](int n, const std::vector<std::pair<double, std::string>> &terms, double t,
           double eps) {
          return report_dict(simulate(source_from_pauli(to_pauli(n, terms)), t, eps));
        },
        py::arg("n"), py::arg("terms"), py::arg("t"), py::arg("eps"));
  m.def("simulate_file",
        [](const std::string &kind, const std::string &path, double t, double eps,
           long ancilla_dim, double alpha) {
          SourceKind k;
          if (kind == "pauli")
            k = SourceKind::pauli;
          else if (kind == "dense")
            k = SourceKind::dense;
          else if (kind == "purified")
            k = SourceKind::purified;
          else if (kind == "sparse")
            k = SourceKind::sparse;
          else
            throw FormatError("unknown source kind: " + kind);
          return report_dict(simulate(load_source(k, path, ancilla_dim, alpha), t, eps));
        },
        py::arg("kind"), py::arg("path"), py::arg("t"), py::arg("eps"),
        py::arg("ancilla_dim") = 0, py::arg("alpha") = 1.0);
}
