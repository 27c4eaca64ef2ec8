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
    test_kinematics.py
    Kinetica project, 2026

    Unit tests of the classical and relativistic collision parametrizations,
    the centre-of-mass frame and the Landau projections.
'''

import math

import numpy as np
import pytest

from lib.kinematics import (SingularPairError, UndefinedAngleError, boosted_projection, classical_post_collision,
                            collision_event, energy, landau_projection, lorentz_audit, lorentz_frame, mandelstam,
                            p_zero, relativistic_projection, scattering_angle, scattering_angle_from_axis,
                            transport_velocity)
from lib.model import ModelSpec, PhysicalConstants
from lib.quadrature import sample_sphere, stream

##################################################
#                 Test Functions                 #
##################################################

def test_classical_collisions_conserve():
    '''
        Classical post-collision momenta conserve momentum and kinetic energy
    '''

    rng = stream(1, 0)
    p = rng.normal(size=(50, 3))
    ps = rng.normal(size=(50, 3))
    omega = sample_sphere(rng, 50, 3)
    p_out, ps_out = classical_post_collision(p, ps, omega)

    assert np.allclose(p_out + ps_out, p + ps, atol=1e-14)
    e_in = np.sum(p**2, axis=-1) + np.sum(ps**2, axis=-1)
    e_out = np.sum(p_out**2, axis=-1) + np.sum(ps_out**2, axis=-1)
    assert np.allclose(e_out, e_in, rtol=1e-13)

def test_energies_and_velocities():
    '''
        Energy and transport velocity of both dynamics
    '''

    classical = ModelSpec('classical', 'quantum', 0, 2, PhysicalConstants(m=2.0))
    p = np.array([3.0, 4.0])
    assert energy(p, classical) == pytest.approx(6.25)
    assert transport_velocity(p, classical) == pytest.approx([1.5, 2.0])

    relativistic = ModelSpec('relativistic', 'quantum', 0, 2, PhysicalConstants(m=1.0, c=1.0))
    assert p_zero(p, relativistic.constants) == pytest.approx(math.sqrt(26.0))
    assert energy(p, relativistic) == pytest.approx(math.sqrt(26.0))
    assert np.linalg.norm(transport_velocity(p, relativistic)) < relativistic.constants.c

def test_relativistic_collisions_conserve():
    '''
        Relativistic events conserve energy-momentum and keep the outgoing pair on shell
    '''

    constants = PhysicalConstants(m=1.0, c=1.5)
    model = ModelSpec('relativistic', 'quantum', 0, 3, constants)
    rng = stream(2, 0)
    p = 2.0 * rng.normal(size=(40, 3))
    ps = 2.0 * rng.normal(size=(40, 3))
    event = collision_event(p, ps, sample_sphere(rng, 40, 3), model)

    assert np.allclose(event.p_out + event.ps_out, p + ps, atol=1e-12)
    assert np.all(event.energy_defect() < 1e-12)
    assert np.allclose(event.p0_out, p_zero(event.p_out, constants), rtol=1e-12)
    assert np.allclose(event.ps0_out, p_zero(event.ps_out, constants), rtol=1e-12)

def test_frame_invariants():
    '''
        s = 4(mc)^2 + g^2, rho^2 (1 - |v|^2) = 1 and Lambda Lambda^-1 = I
    '''

    constants = PhysicalConstants(m=0.5, c=2.0)
    rng = stream(4, 0)
    p = rng.normal(size=(30, 2))
    ps = rng.normal(size=(30, 2))
    frame = lorentz_frame(p, ps, constants)

    assert np.allclose(frame.s, 4.0 * (constants.m * constants.c) ** 2 + frame.g**2)
    assert np.allclose(frame.rho**2 * (1.0 - np.sum(frame.v**2, axis=-1)), 1.0, rtol=1e-12)
    assert np.allclose(np.einsum('nij,njk->nik', frame.Lambda, frame.Lambda_inv), np.eye(3), atol=1e-12)
    assert np.allclose(np.linalg.norm(frame.k_hat, axis=-1), 1.0)

def test_frame_at_rest():
    '''
        A pair at rest in its centre of mass needs no boost
    '''

    constants = PhysicalConstants()
    frame = lorentz_frame(np.array([1.0, 0.0]), np.array([-1.0, 0.0]), constants)
    assert frame.rho == pytest.approx(1.0)
    assert np.allclose(frame.Lambda_tilde, np.eye(2))
    assert np.allclose(frame.k_hat, [1.0, 0.0])

def test_scattering_angles():
    '''
        The scattering angle is arccos(k . omega) folded to [0, pi/2] in both dynamics, undefined for p = p*
    '''

    rng = stream(6, 0)
    p = rng.normal(size=(25, 2))
    ps = rng.normal(size=(25, 2))
    omega = sample_sphere(rng, 25, 2)
    for dynamics in ('classical', 'relativistic'):
        model = ModelSpec(dynamics, 'quantum', 0, 2)
        event = collision_event(p, ps, omega, model)
        theta = scattering_angle(event)
        assert np.all((theta >= 0.0) & (theta <= 0.5 * math.pi))
        raw = scattering_angle_from_axis(event)
        assert np.allclose(np.abs(np.cos(theta)), np.abs(np.cos(raw)), atol=1e-10)
        assert np.allclose(np.minimum(raw, math.pi - raw), theta, atol=1e-7)

    # omega = -k scatters by pi, which folds to zero
    backward = collision_event(np.array([[1.0, 0.0]]), np.array([[-1.0, 0.0]]), np.array([[-1.0, 0.0]]),
                               ModelSpec())
    assert scattering_angle(backward)[0] == pytest.approx(0.0, abs=1e-7)

    same = collision_event(np.ones((1, 2)), np.ones((1, 2)), np.array([[1.0, 0.0]]), ModelSpec())
    with pytest.raises(UndefinedAngleError):
        scattering_angle(same)

def test_landau_projections():
    '''
        Pi annihilates p - p*, and the closed-form and boosted forms of S agree
    '''

    p = np.array([1.0, 2.0, -0.5])
    ps = np.array([-0.3, 0.4, 1.0])
    projection = landau_projection(p, ps)
    assert np.allclose(projection @ (p - ps), 0.0, atol=1e-14)
    assert np.allclose(projection @ projection, projection)

    constants = PhysicalConstants(m=1.0, c=1.3)
    closed = relativistic_projection(p, ps, constants)
    assert np.allclose(closed, boosted_projection(p, ps, constants), atol=1e-12)
    assert np.allclose(closed, closed.T)
    assert np.all(np.linalg.eigvalsh(closed) > -1e-12)

    with pytest.raises(SingularPairError):
        landau_projection(p, p)
    with pytest.raises(SingularPairError):
        relativistic_projection(p, p, constants)

def test_newtonian_gap():
    '''
        The relativistic relative momentum g approaches |p - p*| as c grows
    '''

    p = np.array([1.0, 0.5])
    ps = np.array([-0.5, 0.25])
    r = np.linalg.norm(p - ps)
    gaps = [abs(mandelstam(p, ps, PhysicalConstants(c=c))[1] - r) for c in (4.0, 8.0, 16.0)]
    assert gaps[1] < 0.3 * gaps[0] and gaps[2] < 0.3 * gaps[1]

def test_lorentz_audit():
    '''
        Every frame and parametrization defect stays at roundoff level
    '''

    for d in (2, 3):
        audit = lorentz_audit(PhysicalConstants(m=0.5, c=2.0), d, samples=500, seed=3)
        assert set(audit) == {'inverse', 'boost_time', 'boost_space', 'momentum', 'energy', 'on_shell',
                              'angle', 'projection'}
        assert max(audit.values()) < 1e-9, audit
