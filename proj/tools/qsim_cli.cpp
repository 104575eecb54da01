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

// qsim: command-line driver for encoding, phase solving, simulation and
// benchmark CSV emission.

#include <cmath>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "qsim/hamsim.hpp"

using namespace qsim;
using nlohmann::json;

namespace {

enum Exit { ok = 0, fail = 1, capacity = 2, nonconv = 3, format = 4 };

struct SourceFlags {
  std::string pauli, dense, purified, sparse;
  long ancilla_dim = 0;
  double alpha = 1.0;

  void attach(CLI::App *app) {
    auto *g = app->add_option_group("source");
    g->add_option("--pauli", pauli, "Pauli LCU file");
    g->add_option("--dense", dense, "dense oracle unitary file");
    g->add_option("--purified", purified, "purified density file");
    g->add_option("--sparse", sparse, "sparse Hamiltonian file");
    g->require_option(1);
    app->add_option("--ancilla-dim", ancilla_dim, "ancilla dimension (--dense)");
    app->add_option("--alpha", alpha, "normalisation (--dense)");
  }

  Source load() const {
    if (!pauli.empty())
      return load_source(SourceKind::pauli, pauli);
    if (!sparse.empty())
      return load_source(SourceKind::sparse, sparse);
    if (!purified.empty())
      return load_source(SourceKind::purified, purified);
    return load_source(SourceKind::dense, dense, ancilla_dim, alpha);
  }
};

// Writes to --out when given, else stdout.
void emit(const std::string &out, const std::string &text) {
  if (out.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream f(out);
  if (!f)
    throw FormatError("cannot open output file " + out);
  f << text;
}

json number(double x) { return json(x); }

} // namespace

int main(int argc, char **argv) {
  CLI::App app{"qsim: Hamiltonian simulation by qubitization and QSP"};
  app.require_subcommand(1);

  RuntimeConfig cfg;
  try {
    cfg = RuntimeConfig::from_env();
  } catch (const Error &e) {
    std::cerr << "error: " << e.what() << '\n';
    return Exit::format;
  }
  SourceFlags src;
  double t = 0, eps = 1e-3;
  double axis = M_PI / 2, global_phase = -M_PI / 2;
  long N = 0;
  std::string phases_path, out;
  std::uint64_t seed = cfg.seed;
  long theta_grid = cfg.theta_grid;
  double tol = cfg.tol;

  auto common = [&](CLI::App *c) {
    c->add_option("--out", out, "output path (default stdout)");
    c->add_option("--seed", seed, "solver seed");
    c->add_option("--tol", tol, "check tolerance");
    c->add_option("--theta-grid", theta_grid, "scalar-model grid size");
  };
  auto phase_flags = [&](CLI::App *c) {
    c->add_option("--axis", axis, "phased-iterate axis (rad)");
    c->add_option("--global-phase", global_phase, "global phase (rad)");
  };

  auto *encode = app.add_subcommand("encode", "build and print a block encoding");
  src.attach(encode);
  common(encode);

  auto *qubitize = app.add_subcommand("qubitize", "qubitize an encoding");
  src.attach(qubitize);
  common(qubitize);

  auto *plan = app.add_subcommand("plan", "Jacobi-Anger query plan");
  plan->add_option("--time", t, "effective time")->required();
  plan->add_option("--eps", eps, "target error")->required();
  common(plan);

  auto *phases = app.add_subcommand("phases", "solve or verify QSP phases");
  phases->add_option("--time", t, "effective time")->required();
  phases->add_option("--eps", eps, "target error")->required();
  phases->add_option("--N", N, "sequence length (default: planner)");
  phases->add_option("--phases", phases_path, "verify this phase file instead");
  common(phases);
  phase_flags(phases);

  auto *simulate_cmd = app.add_subcommand("simulate", "simulate e^{-iHt}");
  src.attach(simulate_cmd);
  simulate_cmd->add_option("--time", t, "evolution time")->required();
  simulate_cmd->add_option("--eps", eps, "target error")->required();
  simulate_cmd->add_option("--phases", phases_path, "phase file");
  common(simulate_cmd);
  phase_flags(simulate_cmd);

  auto *verify = app.add_subcommand("verify", "run the invariant suite");
  src.attach(verify);
  common(verify);

  auto *bench = app.add_subcommand("bench", "benchmark CSV emission");
  bench->require_subcommand(1);
  auto *fig2 = bench->add_subcommand("fig2", "truncation error curves");
  common(fig2);
  auto *compare = bench->add_subcommand("compare", "queries vs BCCKS");
  std::vector<double> ts;
  compare->add_option("--eps", eps, "target error");
  compare->add_option("--time", ts, "time points (default 1..1e4, log)");
  common(compare);
  auto *chem = bench->add_subcommand("chem", "Trotter vs QSP gate counts");
  std::string chem_file;
  double chem_eps = 1.6e-3;
  chem->add_option("--pauli", chem_file, "labelled coefficient file")->required();
  chem->add_option("--eps", chem_eps, "target error (t = 1/eps)");
  common(chem);

  CLI11_PARSE(app, argc, argv);

  try {
    std::ostringstream o;
    o << std::setprecision(17);
    if (*encode) {
      Source s = src.load();
      write_matrix(o, s.enc.u);
      if (!out.empty())
        emit(out, o.str());
      json j = {{"source", to_string(s.kind)},
                {"alpha", number(s.enc.alpha)},
                {"ancilla_dim", s.enc.ancilla_dim},
                {"system_dim", s.enc.system_dim},
                {"unitarity_residual", unitarity_residual(s.enc.u)}};
      std::cout << j.dump(2) << '\n';
      return Exit::ok;
    }
    if (*qubitize) {
      Source s = src.load();
      QubitizedIterate q = hermitian_qubitize(s.enc, tol);
      QubitizationCheck c = check_qubitized(q.enc, q.s_op, tol);
      if (!out.empty()) {
        iterate(q, tol);
        write_matrix(o, q.w);
        emit(out, o.str());
      }
      json j = {{"extended", q.extended},
                {"total_dim", q.enc.total_dim()},
                {"ok", c.ok},
                {"signal_residual", c.signal_residual},
                {"square_residual", c.square_residual}};
      std::cout << j.dump(2) << '\n';
      return c.ok ? Exit::ok : Exit::fail;
    }
    if (*plan) {
      JacobiAngerPlan p = plan_queries(t, eps);
      json j = {{"t", p.t},
                {"eps", p.eps},
                {"N", p.N},
                {"q", p.q},
                {"truncation_error", p.truncation_error},
                {"upper_bound", p.upper_bound}};
      emit(out, j.dump(2) + "\n");
      return Exit::ok;
    }
    if (*phases) {
      const long grid_n = N > 0 ? N : plan_queries(std::fabs(t), eps).N;
      ScalarModel model = ScalarModel::uniform(
          std::max(theta_grid, 4 * (grid_n + 2)), axis, global_phase);
      if (!phases_path.empty()) {
        PhaseSequence p = read_phases_file(phases_path);
        p.global_phase = global_phase;
        const double err = verify_phases(p, t, model);
        o << "N,t,eps,max_error,pass\n"
          << p.phases.size() << ',' << t << ',' << eps << ',' << err << ','
          << (err <= eps ? 1 : 0) << '\n';
        std::cout << o.str();
        return err <= eps ? Exit::ok : Exit::fail;
      }
      SolverOptions so;
      so.N = N;
      so.seed = seed;
      so.theta_grid = theta_grid;
      so.axis = axis;
      so.Phi = global_phase;
      SolverReport r = solve_phases(t, eps, so);
      std::ostringstream ph;
      write_phases(ph, r.phases);
      emit(out, ph.str());
      std::cerr << solver_report_csv_header() << '\n'
                << solver_report_csv_row(r) << '\n';
      return r.converged ? Exit::ok : Exit::nonconv;
    }
    if (*simulate_cmd) {
      Source s = src.load();
      SimulateOptions so;
      so.solver.seed = seed;
      so.solver.theta_grid = theta_grid;
      so.solver.axis = axis;
      so.solver.Phi = global_phase;
      if (!phases_path.empty()) {
        PhaseSequence p = read_phases_file(phases_path);
        p.global_phase = global_phase;
        so.phases = p;
      }
      SimulationReport r = simulate(s, t, eps, so);
      json j = {{"source", to_string(r.plan.source)},
                {"t", r.plan.t},
                {"eps", r.plan.eps},
                {"tau", r.plan.tau},
                {"N", r.N},
                {"extended", r.plan.extended},
                {"total_qubits", r.plan.total_qubits},
                {"oracle_query_count", r.oracle_query_count},
                {"phase_error", r.phase_error},
                {"distance_to_exact", r.distance_to_exact},
                {"min_success_prob", r.min_success_prob},
                {"wall_time", r.wall_time},
                {"phases", r.plan.phases.phases}};
      emit(out, j.dump(2) + "\n");
      return r.distance_to_exact <= eps ? Exit::ok : Exit::fail;
    }
    if (*verify) {
      Source s = src.load();
      std::vector<CheckResult> checks = verify_suite(s.enc, std::max(tol, 1e-9));
      emit(out, checks_to_json(checks) + "\n");
      bool all = true;
      for (const auto &c : checks)
        all = all && c.pass;
      return all ? Exit::ok : Exit::fail;
    }
    if (*fig2) {
      write_fig2_csv(o, bench_fig2());
      emit(out, o.str());
      return Exit::ok;
    }
    if (*compare) {
      if (ts.empty())
        for (int i = 0; i <= 16; ++i)
          ts.push_back(std::pow(10.0, i / 4.0));
      write_compare_csv(o, bench_compare(eps, ts));
      emit(out, o.str());
      return Exit::ok;
    }
    if (*chem) {
      write_chem_csv(o, bench_chem(read_pauli_blocks_file(chem_file), chem_eps));
      emit(out, o.str());
      return Exit::ok;
    }
  } catch (const CapacityError &e) {
    std::cerr << "capacity error: " << e.what() << '\n';
    return Exit::capacity;
  } catch (const NonConvergenceError &e) {
    std::cerr << "non-convergence: " << e.what() << '\n';
    return Exit::nonconv;
  } catch (const FormatError &e) {
    std::cerr << "format error: " << e.what() << '\n';
    return Exit::format;
  } catch (const std::exception &e) {
    std::cerr << "error: " << e.what() << '\n';
    return Exit::fail;
  }
  return Exit::fail;
}
