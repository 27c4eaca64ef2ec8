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
    test_distribution.py
    Kinetica project, 2026

    Unit tests of the equilibrium families, fixtures, grid distributions and moments.
'''

import numpy as np
import pytest

from lib.distribution import (FIXTURES, GridDistribution, Maxwellian, collision_invariants, entropy_functional,
                              equilibrium, fixture, matched_equilibrium, moments)
from lib.entropy import DomainError
from lib.model import ModelError, ModelSpec, PhysicalConstants, model_from_tag
from lib.quadrature import QuadratureSpec

##################################################
#                 Test Functions                 #
##################################################

def test_maxwellian_moments():
    '''
        A Maxwellian carries its density, drift and temperature
    '''

    model = ModelSpec('classical', 'quantum', 0, 2)
    f = Maxwellian(1.5, [0.3, -0.2], 0.8, model)
    quadrature = QuadratureSpec(halfwidth=8.0, box_nodes=48, box_panels=6)
    mass, momentum, total_energy = moments(f, model, quadrature)

    assert mass == pytest.approx(1.5, rel=1e-6)
    assert momentum == pytest.approx(1.5 * np.array([0.3, -0.2]), rel=1e-6)
    # E = rho (d T/2 + |u|^2/2) for m = 1
    assert total_energy == pytest.approx(1.5 * (0.8 + 0.5 * 0.13), rel=1e-6)

def test_gradients_match_differences():
    '''
        Analytic gradients agree with central differences for every family and fixture
    '''

    rng = np.random.default_rng(5)
    points = rng.uniform(-1.5, 1.5, size=(10, 2))
    step = 1e-6
    fields = []
    for tag in ('maxwell', 'bose', 'fermi', 'wave', 'linear'):
        for dynamics in ('classical', 'relativistic'):
            model = model_from_tag(tag, dynamics, 2)
            fields.append(matched_equilibrium(model))
            fields += [fixture(name, model) for name in FIXTURES]

    for field in fields:
        numeric = np.zeros_like(points)
        for j in range(2):
            shift = np.zeros(2)
            shift[j] = step
            numeric[:, j] = (field.value(points + shift) - field.value(points - shift)) / (2.0 * step)
        assert np.allclose(field.gradient(points), numeric, rtol=1e-5, atol=1e-8), field

def test_fixtures_in_domain():
    '''
        Every fixture stays nonnegative, and below 1 for Fermi statistics
    '''

    points = GridDistribution.grid_points(4.0, 12, 2).reshape(-1, 2)
    for tag in ('maxwell', 'bose', 'fermi', 'wave', 'linear'):
        model = model_from_tag(tag, 'classical', 2)
        for name in FIXTURES:
            fixture(name, model).check_domain(points, tag)

    with pytest.raises(ModelError):
        fixture('shifted', model)

def test_equilibrium_families():
    '''
        Family constructors validate their parameters
    '''

    model = ModelSpec('classical', 'quantum', 1, 2)
    assert equilibrium('bose-einstein', {'mu': -1.0}, model).value(np.zeros(2)) == pytest.approx(1.0 / (np.e - 1.0))
    assert equilibrium('constant', {'level': 2.0}, model).value(np.ones((3, 2))) == pytest.approx([2.0] * 3)
    with pytest.raises(ModelError):
        equilibrium('bose-einstein', {'mu': 0.5}, model)
    with pytest.raises(ModelError):
        equilibrium('planck', {}, model)
    with pytest.raises(ModelError):
        Maxwellian(1.0, 0.0, -1.0, model)

def test_juttner_limit():
    '''
        The Juttner profile approaches the Maxwellian profile as c grows
    '''

    p = np.array([[0.5, -0.3], [1.0, 0.2]])
    previous = None
    for c in (5.0, 10.0, 20.0):
        model = ModelSpec('relativistic', 'quantum', 0, 2, PhysicalConstants(1.0, c))
        gap = np.max(np.abs(equilibrium('juttner', {'T': 1.0}, model).value(p) - np.exp(-0.5 * np.sum(p**2, axis=-1))))
        if previous is not None:
            assert gap < 0.3 * previous
        previous = gap

def test_grid_distribution():
    '''
        Grid samples reproduce the field at the nodes, extend by zero and reject bad values
    '''

    model = ModelSpec('classical', 'quantum', 0, 2)
    base = Maxwellian(1.0, 0.0, 1.0, model)
    grid = GridDistribution.from_distribution(base, 4.0, 16, 2)
    nodes = grid.points().reshape(-1, 2)

    assert np.allclose(grid.value(nodes), base.value(nodes), rtol=1e-12)
    assert grid.value(np.array([5.0, 0.0])) == 0.0
    assert grid.cell_volume() == pytest.approx(0.25)

    mass, _, _ = moments(grid, model)
    assert mass == pytest.approx(1.0, rel=1e-2)
    assert entropy_functional(grid, model) < 0.0

    with pytest.raises(DomainError):
        GridDistribution(1.0, -np.ones((4, 4)))
    with pytest.raises(DomainError):
        GridDistribution(1.0, np.full((4, 4), np.nan))
    with pytest.raises(ModelError):
        GridDistribution(1.0, np.ones((4, 5)))

def test_collision_invariants():
    '''
        The invariants are 1, the momentum components and the energy
    '''

    model = ModelSpec('classical', 'quantum', 0, 3)
    fields = collision_invariants(model)
    p = np.array([[1.0, 2.0, 3.0]])
    assert len(fields) == 5
    assert [float(phi.value(p)[0]) for phi in fields] == pytest.approx([1.0, 1.0, 2.0, 3.0, 7.0])
