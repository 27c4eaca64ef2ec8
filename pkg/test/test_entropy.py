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
    test_entropy.py
    Kinetica project, 2026

    Unit tests of the entropy densities, their derivatives, the logarithmic mean
    and the dual dissipation potentials.
'''

import math

import numpy as np
import pytest

from lib.entropy import (TAGS, DissipationPair, DomainError, EntropyModel, entropy_density, entropy_derivative,
                         entropy_flux_potential, entropy_second_derivative, logarithmic_mean, psi_star,
                         psi_star_prime, statistics_tag)
from lib.model import ModelSpec

##################################################
#                 Test Functions                 #
##################################################

def test_entropy_values():
    '''
        Spot values of h for every statistics
    '''

    assert entropy_density(1.0, 'maxwell') == pytest.approx(-1.0)
    assert entropy_density(0.0, 'maxwell') == 0.0
    assert entropy_density(1.0, 'bose') == pytest.approx(-2.0 * math.log(2.0))
    assert entropy_density(0.5, 'fermi') == pytest.approx(math.log(0.5))
    assert entropy_density(math.e, 'wave') == pytest.approx(-1.0)
    assert entropy_density(3.0, 'linear') == pytest.approx(4.5)

def test_entropy_boundaries():
    '''
        The wave entropy is infinite at 0 and the Fermi entropy above 1
    '''

    assert math.isinf(entropy_density(0.0, 'wave'))
    assert math.isinf(entropy_density(1.5, 'fermi'))
    with pytest.raises(DomainError):
        entropy_density(-0.1, 'maxwell')
    with pytest.raises(DomainError):
        entropy_density(float('nan'), 'bose')
    with pytest.raises(DomainError):
        entropy_derivative(1.2, 'fermi')

def test_derivatives_match_differences():
    '''
        h' and h'' agree with central differences of h and h'
    '''

    f = np.array([0.2, 0.45, 0.7])
    step = 1e-6
    for tag in TAGS:
        dh = entropy_derivative(f, tag)
        numeric = (entropy_density(f + step, tag) - entropy_density(f - step, tag)) / (2.0 * step)
        assert np.allclose(dh, numeric, rtol=1e-6, atol=1e-8), tag

        d2h = entropy_second_derivative(f, tag)
        numeric = (entropy_derivative(f + step, tag) - entropy_derivative(f - step, tag)) / (2.0 * step)
        assert np.allclose(d2h, numeric, rtol=1e-6, atol=1e-8), tag
        assert np.all(d2h > 0)

def test_flux_potential():
    '''
        G'(f) = f h''(f) for every statistics
    '''

    f = np.array([0.15, 0.5, 0.8])
    step = 1e-6
    for tag in TAGS:
        numeric = (entropy_flux_potential(f + step, tag) - entropy_flux_potential(f - step, tag)) / (2.0 * step)
        assert np.allclose(numeric, f * entropy_second_derivative(f, tag), rtol=1e-6), tag

def test_statistics_tag():
    '''
        Tags come from strings or ModelSpecs; unknown tags raise
    '''

    assert statistics_tag(ModelSpec('classical', 'quantum', 1)) == 'bose'
    assert statistics_tag('wave') == 'wave'
    with pytest.raises(DomainError):
        statistics_tag('boltzmann')

def test_entropy_model_clip():
    '''
        Clipping keeps h' finite at the boundary of the domain
    '''

    fermi = EntropyModel('fermi')
    clipped = fermi.clip(np.array([0.0, 0.5, 1.0]))
    assert np.all(np.isfinite(fermi.dh(clipped)))
    assert EntropyModel('linear').clip(np.array([-1.0]))[0] == -1.0
    assert EntropyModel('wave').clip(np.array([0.0]))[0] > 0

def test_logarithmic_mean():
    '''
        The logarithmic mean is continuous across the diagonal and lies between its arguments
    '''

    assert logarithmic_mean(2.0, 2.0) == pytest.approx(2.0, rel=1e-15)
    assert logarithmic_mean(math.e, 1.0) == pytest.approx(math.e - 1.0)
    near = logarithmic_mean(1.0 + 1e-9, 1.0)
    assert near == pytest.approx(1.0 + 5e-10, rel=1e-14)

    s = np.array([0.3, 4.0, 1.0])
    t = np.array([2.0, 0.5, 1.0])
    mean = logarithmic_mean(s, t)
    assert np.all(mean >= np.minimum(s, t)) and np.all(mean <= np.maximum(s, t))
    with pytest.raises(DomainError):
        logarithmic_mean(0.0, 1.0)

def test_dissipation_potentials():
    '''
        Both potentials vanish at 0, are even and differentiate to psi_star_prime
    '''

    r = np.linspace(-3.0, 3.0, 13)
    step = 1e-6
    for kind in ('quadratic', 'cosh'):
        assert psi_star(0.0, kind) == 0.0
        assert np.allclose(psi_star(r, kind), psi_star(-r, kind))
        numeric = (psi_star(r + step, kind) - psi_star(r - step, kind)) / (2.0 * step)
        assert np.allclose(numeric, psi_star_prime(r, kind), rtol=1e-6, atol=1e-8)

    pair = DissipationPair('cosh')
    assert pair.psi_star_prime(2.0) == pytest.approx(2.0 * math.sinh(1.0))
    with pytest.raises(DomainError):
        DissipationPair('quartic')
