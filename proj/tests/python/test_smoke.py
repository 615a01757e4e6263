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

import math

import numpy as np
import pytest

import qsl


def test_alpha_endpoints():
    assert abs(qsl.alpha(0.0) - math.pi / 2) <= 1e-12
    assert qsl.alpha(1.0) == 0.0
    assert qsl.alpha(0.5) < math.acos(math.sqrt(0.5))


def test_refutation_spot_value():
    r = qsl.run_ml_refutation(0.0, 1.0, 1.0)
    assert r["violated"]
    assert r["tau"] < r["hypothetical_bound"]
    assert r["saturation_gap"] <= 1e-8
    assert r["max_norm_energy_deviation"] <= 1e-9


def test_bd_gap():
    h = np.diag([0.0, 1.0, 2.0]).astype(complex)
    u = np.ones(3, dtype=complex) / math.sqrt(3)
    r = qsl.run_bd_nonsaturation(h, u)
    assert abs(r["mt_closed"] - r["bd_closed"] - (math.pi / 2) * (math.sqrt(1.5) - 1)) <= 1e-6
    assert r["strict_everywhere"]


def test_coupling_and_propagators():
    rng = np.random.default_rng(3)
    m = rng.normal(size=(4, 4)) + 1j * rng.normal(size=(4, 4))
    h = (m + m.conj().T) / 2
    u = rng.normal(size=4) + 1j * rng.normal(size=4)
    u /= np.linalg.norm(u)
    a = qsl.build_coupling(h, u)
    rho = np.outer(u, u.conj())
    assert np.linalg.norm(a @ rho + rho @ a - a) <= 1e-10
    exact = qsl.propagate_exact(h, a, u, 1.3)
    numeric = qsl.propagate_numeric(h, a, u, 1.3)
    assert 1.0 - qsl.fidelity(exact, numeric) <= 1e-12

    r = qsl.evaluate_bounds(h, a, u, 0.5, 10.0)
    assert r["mt_closed"] <= r["tau_actual"] + 1e-9
    assert r["ml"] is None


def test_errors_carry_codes():
    with pytest.raises(qsl.QslError) as info:
        qsl.alpha(2.0)
    assert info.value.code == "DomainError"
    with pytest.raises(qsl.QslError) as info:
        qsl.run_bd_nonsaturation(np.diag([0.0, 1.0]).astype(complex), np.ones(2, dtype=complex))
    assert info.value.code == "InsufficientLevels"
