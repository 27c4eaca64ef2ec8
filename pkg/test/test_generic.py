#!/usr/bin/env python3
#
# Copyright (C) 2026 Kinetica contributors
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
#
# SPDX-License-Identifier: Apache-2.0
'''
    test_generic.py
    Kinetica project, 2026

    Unit tests of the Poisson operator on the slab and of the energy/entropy audit.
'''

import numpy as np
import pytest

from lib.distribution import Maxwellian
from lib.generic import (centered_difference, generic_energy_entropy_audit, momentum_difference, poisson_apply,
                         poisson_checks, poisson_entropy)
from lib.kernels import AngularProfile, KernelSpec, angular_normalize
from lib.quadrature import QuadratureSpec
from lib.solver import MonitorSeries, Solver

##################################################
#                 Test Functions                 #
##################################################

def test_poisson_constant_and_entropy(classical_model):
    '''
        Constants are Casimirs away from the momentum boundary and the entropy differential is annihilated
    '''

    rng = np.random.default_rng(5)
    f = rng.uniform(0.1, 1.0, size=(12, 6, 6))
    L_one = poisson_apply(f, np.ones_like(f), 0.5, 0.4)
    assert np.all(L_one[:, 1:-1] == 0.0)
    assert np.max(np.abs(L_one[:, 0])) > 0.0

    defect = poisson_entropy(f, classical_model, 0.5, 0.4)
    assert np.max(np.abs(defect)) < 1e-12 * 6.0 / (0.5 * 0.4)

def test_momentum_difference_does_not_wrap():
    '''
        Momentum differences see zeros beyond the box; spatial differences wrap around the slab
    '''

    ramp = np.arange(6.0)[None, :] * np.ones((4, 1))
    slope = momentum_difference(ramp, 1, 1.0)
    assert np.all(slope[:, 1:-1] == 1.0)
    assert np.all(slope[:, 0] == 0.5) and np.all(slope[:, -1] == -2.0)

    periodic = centered_difference(np.arange(6.0), 0, 1.0)
    assert periodic[0] == -2.0 and periodic[-1] == -2.0
    assert np.array_equal(centered_difference(np.arange(6.0), 0, 1.0, periodic=False)[1:-1], np.ones(4))

def test_poisson_antisymmetry():
    '''
        <L xi, eta> = -<xi, L eta> on periodic arrays
    '''

    rng = np.random.default_rng(6)
    f = rng.uniform(0.1, 1.0, size=(10, 8))
    xi = rng.normal(size=(10, 8))
    eta = rng.normal(size=(10, 8))

    forward = np.sum(poisson_apply(f, xi, 0.3, 0.2) * eta)
    backward = np.sum(xi * poisson_apply(f, eta, 0.3, 0.2))
    assert forward == pytest.approx(-backward, rel=1e-12, abs=1e-12)

def test_poisson_checks(classical_model, smooth_kernel):
    '''
        A Maxwellian slab passes every structural check
    '''

    quadrature = QuadratureSpec(halfwidth=4.0, box_nodes=8, box_panels=2, theta_panels=2, theta_order=2)
    solver = Solver(classical_model, smooth_kernel, quadrature, nodes=8, collisions=False, slab_nodes=16)
    state = solver.slab_state(Maxwellian(1.0, [0.3, 0.0], 1.0, classical_model), amplitude=0.2)
    result = poisson_checks(state, solver)

    assert result['passed']
    assert result['constant'] == 0.0
    assert result['antisymmetry'] <= 1e-12
    assert result['velocity_stencil_error'] <= 1e-12
    assert result['energy'] <= 1e-12
    assert result['chain_rule_error'] >= 0.0

def test_poisson_energy_relativistic(relativistic_model):
    '''
        L(f)e matches transport with the exact relativistic velocity up to a second-order stencil error
    '''

    spec = KernelSpec(relativistic_model, angular_normalize(AngularProfile('constant', 2)))
    quadrature = QuadratureSpec(halfwidth=4.0, box_nodes=8, box_panels=2, theta_panels=2, theta_order=2)
    errors = []
    for nodes in (16, 32):
        solver = Solver(relativistic_model, spec, quadrature, nodes=nodes, collisions=False, slab_nodes=16)
        state = solver.slab_state(Maxwellian(1.0, [0.3, 0.0], 1.0, relativistic_model), amplitude=0.2)
        result = poisson_checks(state, solver)
        assert result['passed'], result
        assert result['velocity_stencil_error'] > 1e-6
        assert result['energy'] <= result['velocity_stencil_error'] + 1e-12
        errors.append(result['velocity_stencil_error'])
    assert errors[0] / errors[1] > 2.5

def test_energy_entropy_audit():
    '''
        The audit passes decreasing entropy at fixed energy and flags an increase
    '''

    series = MonitorSeries(1)
    for index, entropy in enumerate([-1.0, -1.1, -1.15]):
        series.record(0.1 * index, 1.0, [0.0], 2.0, entropy, 0.5)
    result = generic_energy_entropy_audit(series)
    assert result['passed']
    assert result['energy_drift'] == 0.0
    assert result['min_entropy_production'] == pytest.approx(0.5)

    series.record(0.3, 1.0, [0.0], 2.0, -1.0, 0.1)
    result = generic_energy_entropy_audit(series)
    assert not result['passed']
    assert result['min_scaled_production'] < 0.0
