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
    test_landau.py
    Kinetica project, 2026

    Unit tests of the Landau-type operators: projections, brackets, the discrete
    divergence and the Onsager form.
'''

import numpy as np
import pytest

from lib.distribution import collision_invariants, entropy_variation, fixture, gaussian_field, matched_equilibrium
from lib.entropy import entropy_second_derivative
from lib.kernels import KernelSpec
from lib.kinematics import SingularPairError, relativistic_projection
from lib.landau import (evaluate_QL, evaluate_QL_grid, landau_bilinear_form, landau_bracket, landau_dissipation,
                        landau_gradient, landau_strong_pairing, landau_weak_form, landau_weight)
from lib.model import ModelSpec, PhysicalConstants, model_from_tag
from lib.quadrature import QuadratureSpec, box_rule

##################################################
#                 Test Functions                 #
##################################################

def test_bracket_is_entropy_flux():
    '''
        w(f*) grad f - w(f) grad* f* equals Theta_L (grad h'(f) - grad* h'(f*))
    '''

    rng = np.random.default_rng(3)
    p = rng.uniform(-2.0, 2.0, size=(12, 2))
    ps = rng.uniform(-2.0, 2.0, size=(12, 2))
    for tag in ('maxwell', 'bose', 'fermi', 'wave', 'linear'):
        model = model_from_tag(tag, 'classical', 2)
        f = fixture('bimodal', model)
        fp, fs = f.value(p), f.value(ps)
        flux = (entropy_second_derivative(fp, tag)[:, None] * f.gradient(p)
                - entropy_second_derivative(fs, tag)[:, None] * f.gradient(ps))
        expected = landau_weight(fp, fs, tag)[:, None] * flux
        assert np.allclose(landau_bracket(f, p, ps, tag), expected, rtol=1e-10, atol=1e-14), tag

def test_landau_gradient_norm():
    '''
        |Landau gradient|^2 is the quadratic form of S(p, p*) in the relativistic case
    '''

    constants = PhysicalConstants(m=1.0, c=1.5)
    model = ModelSpec('relativistic', 'quantum', 0, 3, constants)
    phi = gaussian_field([0.2, -0.1, 0.3], 0.9)
    p = np.array([0.5, 1.0, -0.2])
    ps = np.array([-0.4, 0.3, 0.9])

    gradient = landau_gradient(phi, p, ps, model)
    a = phi.gradient(p) - phi.gradient(ps)
    assert gradient @ gradient == pytest.approx(a @ relativistic_projection(p, ps, constants) @ a, rel=1e-10)

    with pytest.raises(SingularPairError):
        landau_gradient(phi, p, p, model)
    with pytest.raises(SingularPairError):
        landau_gradient(phi, p, p, model.replace(dynamics='classical'))

def test_weak_form_invariants(classical_model, small_quadrature):
    '''
        Collision invariants give Landau weak-form zeros in both dynamics
    '''

    for model in (classical_model, classical_model.replace(dynamics='relativistic',
                                                           constants=PhysicalConstants(1.0, 2.0))):
        spec = KernelSpec(model)
        f = fixture('bimodal', model)
        scale = landau_dissipation(f, model, spec, small_quadrature)
        assert scale > 0.0
        for phi in collision_invariants(model):
            value = landau_weak_form(f, phi, model, spec, small_quadrature)
            assert abs(value) <= 1e-10 * scale, (model, phi)

def test_bilinear_form_symmetric(classical_model, small_quadrature):
    '''
        The Onsager form is symmetric and negative semidefinite
    '''

    spec = KernelSpec(classical_model)
    f = fixture('two-stream', classical_model)
    phi = gaussian_field([0.5, 0.0], 1.0)
    psi = gaussian_field([-0.3, 0.6], 0.7)

    forward = landau_bilinear_form(f, phi, psi, classical_model, spec, small_quadrature)
    backward = landau_bilinear_form(f, psi, phi, classical_model, spec, small_quadrature)
    assert forward == pytest.approx(backward, rel=1e-9, abs=1e-15)
    assert landau_bilinear_form(f, phi, phi, classical_model, spec, small_quadrature) <= 0.0

def test_projection_forms_agree(small_quadrature):
    '''
        The closed-form and boosted projections give the same relativistic weak form
    '''

    model = ModelSpec('relativistic', 'quantum', 0, 2, PhysicalConstants(1.0, 1.5))
    spec = KernelSpec(model)
    f = fixture('perturbed', model)
    phi = gaussian_field([0.4, 0.0], 1.2)
    closed = landau_weak_form(f, phi, model, spec, small_quadrature, projection='closed')
    boosted = landau_weak_form(f, phi, model, spec, small_quadrature, projection='boosted')
    assert closed == pytest.approx(boosted, rel=1e-8, abs=1e-14)

def test_equilibria_annihilated(small_quadrature):
    '''
        Q_L vanishes pointwise at the matched equilibria
    '''

    nodes = np.array([[0.0, 0.0], [0.6, -0.9]])
    for dynamics in ('classical', 'relativistic'):
        for tag in ('maxwell', 'bose', 'wave'):
            model = model_from_tag(tag, dynamics, 2, PhysicalConstants(1.0, 2.0))
            values = evaluate_QL_grid(matched_equilibrium(model), nodes, model, KernelSpec(model), small_quadrature)
            assert np.max(np.abs(values)) < 1e-9, (dynamics, tag)

def test_operator_off_equilibrium(classical_model, small_quadrature):
    '''
        Q_L is nonzero off equilibrium and independent of the thread count
    '''

    spec = KernelSpec(classical_model)
    f = fixture('two-stream', classical_model)
    nodes = np.array([[0.0, 0.0], [1.2, 0.0], [0.0, 1.0]])
    single = evaluate_QL_grid(f, nodes, classical_model, spec, small_quadrature)
    multi = evaluate_QL_grid(f, nodes, classical_model, spec, small_quadrature, threads=2)
    assert np.array_equal(single, multi)
    assert np.max(np.abs(single)) > 1e-6
    assert single[1] == evaluate_QL(f, nodes[1], classical_model, spec, small_quadrature)

def test_divergence_stencil_converged(classical_model, small_quadrature):
    '''
        Halving the divergence step leaves Q_L unchanged to fourth-order accuracy
    '''

    spec = KernelSpec(classical_model)
    f = fixture('bimodal', classical_model)
    for p in (np.array([0.3, -0.2]), np.array([1.1, 0.7])):
        coarse = evaluate_QL(f, p, classical_model, spec, small_quadrature)
        fine = evaluate_QL(f, p, classical_model, spec, small_quadrature, step=2.5e-3)
        assert coarse == pytest.approx(fine, rel=1e-7, abs=1e-9)

def test_strong_form_matches_weak_form():
    '''
        The strong pairings reproduce the weak form and minus the dissipation on a resolved box
    '''

    model = ModelSpec('classical', 'linear', 0, 2)
    quadrature = QuadratureSpec(halfwidth=8.0, box_nodes=60, box_panels=5)
    spec = KernelSpec(model)
    f = fixture('bimodal', model)
    phi = gaussian_field([0.4, 0.0], 1.2)

    nodes, _ = box_rule(quadrature, model.d)
    values = evaluate_QL_grid(f, nodes, model, spec, quadrature)
    weak = landau_weak_form(f, phi, model, spec, quadrature)
    dissipation = landau_dissipation(f, model, spec, quadrature)
    scale = max(abs(weak), dissipation)

    strong = landau_strong_pairing(f, phi, model, spec, quadrature, values=values)
    pairing = landau_strong_pairing(f, entropy_variation(f, model), model, spec, quadrature, values=values)
    assert abs(strong - weak) <= 1e-5 * scale
    assert abs(pairing + dissipation) <= 1e-5 * scale
