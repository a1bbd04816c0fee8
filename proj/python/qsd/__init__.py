# Copyright 2026 The qsd developers.
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#    http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.

"""Minimum-error discrimination of quantum sources.

A fixed-point iteration computes the measurement (POVM) maximizing the
average probability of naming the true source, and semidefinite-programming
duality certifies global optimality through an explicit feasible dual witness.
"""

from ._core import (
    Certificate,
    Ensemble,
    GameStats,
    OracleResult,
    Povm,
    QsdError,
    Region,
    SolveReport,
    SweepPoint,
    __version__,
    certify,
    classify_region,
    confusion_matrix,
    coplanar_three_states,
    dual_upper_bound,
    export_sdpa,
    find_threshold_numeric,
    helstrom_residuals,
    iterate_once,
    lagrange_operator,
    load_problem,
    operator_basis,
    projective_oracle_qubit,
    random_povm_search,
    simulate_game,
    solve,
    success_probability,
    sweep_xi,
    threshold_xi_23,
)

__all__ = [
    "Certificate",
    "Ensemble",
    "GameStats",
    "OracleResult",
    "Povm",
    "QsdError",
    "Region",
    "SolveReport",
    "SweepPoint",
    "__version__",
    "certify",
    "classify_region",
    "confusion_matrix",
    "coplanar_three_states",
    "dual_upper_bound",
    "export_sdpa",
    "find_threshold_numeric",
    "helstrom_residuals",
    "iterate_once",
    "lagrange_operator",
    "load_problem",
    "operator_basis",
    "projective_oracle_qubit",
    "random_povm_search",
    "simulate_game",
    "solve",
    "success_probability",
    "sweep_xi",
    "threshold_xi_23",
]
