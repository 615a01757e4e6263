# Copyright 2026 The qsl Authors
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

"""Quantum speed limits for isolated and closed systems."""

from qsl._core import (
    QslError,
    alpha,
    alpha_objective,
    build_coupling,
    choose_theta,
    eigh,
    energy_profile,
    evaluate_bounds,
    fidelity,
    first_passage,
    fubini_study_distance,
    ml_family_mu,
    propagate_exact,
    propagate_numeric,
    run_bd_nonsaturation,
    run_ml_refutation,
)

__all__ = [
    "QslError",
    "alpha",
    "alpha_objective",
    "build_coupling",
    "choose_theta",
    "eigh",
    "energy_profile",
    "evaluate_bounds",
    "fidelity",
    "first_passage",
    "fubini_study_distance",
    "ml_family_mu",
    "propagate_exact",
    "propagate_numeric",
    "run_bd_nonsaturation",
    "run_ml_refutation",
]
