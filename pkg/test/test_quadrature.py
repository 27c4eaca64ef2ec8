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
    test_quadrature.py
    Kinetica project, 2026

    Unit tests of the box, angular and sphere rules and the counter-based random streams.
'''

import math

import numpy as np
import pytest

from lib.kernels import AngularProfile, angular_normalize
from lib.quadrature import (QuadratureError, QuadratureSpec, box_rule, circle_rule, gauss_legendre,
                            perpendicular_basis, sample_sphere, sphere_area, sphere_rule, stream, theta_rule,
                            uniform_box_rule)

##################################################
#                 Test Functions                 #
##################################################

def test_quadrature_spec_validation():
    '''
        Budgets must be positive and the box nodes a multiple of the panels
    '''

    with pytest.raises(QuadratureError):
        QuadratureSpec(halfwidth=0.0)
    with pytest.raises(QuadratureError):
        QuadratureSpec(box_nodes=10, box_panels=3)
    with pytest.raises(QuadratureError):
        QuadratureSpec(method='sobol')

    refined = QuadratureSpec(box_nodes=12, box_panels=2).refined()
    assert refined.box_nodes == 24 and refined.box_panels == 4
    assert refined.halfwidth == 8.0

def test_gauss_legendre_exactness():
    '''
        An order-n rule integrates polynomials of degree 2n - 1 exactly
    '''

    x, w = gauss_legendre(-1.0, 3.0, 4)
    assert np.sum(w) == pytest.approx(4.0, rel=1e-14)
    assert np.sum(w * x**7) == pytest.approx((3.0**8 - 1.0) / 8.0, rel=1e-13)

def test_box_rules(small_quadrature):
    '''
        Box rules cover the volume of the box and integrate a Gaussian
    '''

    for d in (2, 3):
        points, weights = box_rule(small_quadrature, d)
        assert points.shape == (small_quadrature.box_nodes**d, d)
        assert np.sum(weights) == pytest.approx((2.0 * small_quadrature.halfwidth) ** d, rel=1e-13)

    points, weights = box_rule(QuadratureSpec(halfwidth=8.0, box_nodes=48, box_panels=6), 2)
    gaussian = np.exp(-0.5 * np.sum(points**2, axis=-1))
    assert np.sum(weights * gaussian) == pytest.approx(2.0 * math.pi, rel=1e-6)

    points, weights = uniform_box_rule(2.0, 4, 2)
    assert points.shape == (16, 2)
    assert np.allclose(np.unique(points[:, 0]), [-1.5, -0.5, 0.5, 1.5])
    assert np.sum(weights) == pytest.approx(16.0)

def test_sphere_measures():
    '''
        Surface measures of S^0, S^1, S^2 and the sphere and circle rules that carry them
    '''

    assert sphere_area(0) == pytest.approx(2.0)
    assert sphere_area(1) == pytest.approx(2.0 * math.pi)
    assert sphere_area(2) == pytest.approx(4.0 * math.pi)

    quadrature = QuadratureSpec(circle_nodes=12)
    for d in (2, 3):
        coords, weights = circle_rule(d, quadrature)
        assert coords.shape[1] == d - 1
        assert np.sum(weights) == pytest.approx(sphere_area(d - 2))

        vectors, weights = sphere_rule(d, 64)
        assert np.allclose(np.linalg.norm(vectors, axis=-1), 1.0)
        assert np.sum(weights) == pytest.approx(sphere_area(d - 1), rel=1e-12)

def test_perpendicular_basis():
    '''
        The basis is orthonormal and orthogonal to the axis
    '''

    rng = stream(3, 0)
    for d in (2, 3):
        k = sample_sphere(rng, 20, d)
        basis = perpendicular_basis(k)
        assert basis.shape == (20, d, d - 1)
        assert np.allclose(np.einsum('ni,nij->nj', k, basis), 0.0, atol=1e-14)
        gram = np.einsum('nij,nik->njk', basis, basis)
        assert np.allclose(gram, np.eye(d - 1), atol=1e-14)

def test_theta_rule_moment():
    '''
        The angular rule reproduces the normalized theta^2 moment
    '''

    quadrature = QuadratureSpec(theta_panels=16, theta_order=6)
    profile = angular_normalize(AngularProfile('constant', 2))
    theta, weights = theta_rule(profile, quadrature)
    assert np.all((theta >= 0.0) & (theta <= 0.5 * math.pi))
    assert np.sum(weights * theta**2) == pytest.approx(4.0, rel=1e-12)

    profile = angular_normalize(AngularProfile('bump', 2))
    theta, weights = theta_rule(profile, quadrature)
    assert np.sum(weights * theta**2) == pytest.approx(4.0, rel=1e-3)

def test_streams_reproducible():
    '''
        Equal (seed, counter) pairs give equal streams; other pairs differ
    '''

    first = stream(7, 11).standard_normal(5)
    again = stream(7, 11).standard_normal(5)
    other = stream(7, 12).standard_normal(5)
    assert np.array_equal(first, again)
    assert not np.array_equal(first, other)
