# Copyright 2026 The qsim Authors
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#     http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.

"""Python bindings for the qsim Hamiltonian simulation library."""

from qsim._qsim import (  # noqa: F401
    CapacityError,
    ContractError,
    DomainError,
    Error,
    FormatError,
    NonConvergenceError,
    NormalizationError,
    RangeError,
    ShapeError,
    bcks_queries,
    bessel_j,
    expm_herm,
    lcu_signal,
    operator_distance,
    pauli_matrix,
    plan_queries,
    reference_phase_rows,
    qsp_gate_estimate,
    simulate_file,
    simulate_pauli,
    solve_phases,
    truncation_error,
    upper_bound,
    verify_phases,
)
