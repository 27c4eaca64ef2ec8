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
    landau.py
    Kinetica project, 2026

    Landau-type operators of the grazing limit, classical and relativistic,
    for quantum, wave and linear statistics: Landau gradients, weights,
    the symmetric bilinear form, weak form, dissipation and the operator itself.
'''

import logging
import math

import numpy as np

from lib.boltzmann import DEFAULT_COUPLING, parallel_map
from lib.distribution import entropy_variation
from lib.entropy import EntropyModel, statistics_tag
from lib.kernels import KernelSpec, kernel_landau
from lib.kinematics import SingularPairError, boosted_projection, landau_projection, lorentz_frame, relativistic_projection
from lib.model import ModelSpec
from lib.quadrature import QuadratureSpec, box_rule, check_finite

logger = logging.getLogger(__name__)

PROJECTIONS = ('closed', 'boosted')

# Default divergence step relative to the box halfwidth
DIVERGENCE_STEP = 1e-3

class LandauFlux:
    '''
        Landau data of stacked pairs (p, p*)
            Attributes:
                kernel - sigma_bar or v_c sigma_bar^c

                projection - Pi_{(p-p*)-perp} or S(p, p*)

                flux - statistics bracket inside the divergence
    '''

    __slots__ = ('kernel', 'projection', 'flux')

    def __init__(self, kernel, projection, flux):
        self.kernel = kernel
        self.projection = projection
        self.flux = flux

    def current(self):
        '''
            kernel * projection . flux
        '''
        return self.kernel[..., None] * np.einsum('...ij,...j->...i', self.projection, self.flux)

##################################################
#            Projections and Gradients           #
##################################################

def landau_matrix(p, ps, model:ModelSpec, projection:str = 'closed'):
    '''
        Projection of the Landau quadratic forms: Pi classically, S(p, p*) relativistically
            Arguments: stacked momenta away from the diagonal, ModelSpec, 'closed' or 'boosted' form of S
            Returns: array (..., d, d)
    '''

    if not model.relativistic:
        return landau_projection(p, ps)
    if projection == 'boosted':
        return boosted_projection(p, ps, model.constants)
    return relativistic_projection(p, ps, model.constants)

def landau_gradient(phi, p, ps, model:ModelSpec):
    '''
        Landau gradient of a test function
            Arguments: Field phi, momenta p != p*, ModelSpec
            Returns: Pi (grad phi - grad* phi*) or Pi_{k_hat-perp} Lambda_tilde (grad phi - grad* phi*)
    '''

    p = np.asarray(p, dtype=float)
    ps = np.asarray(ps, dtype=float)
    a = phi.gradient(p) - phi.gradient(ps)

    if not model.relativistic:
        return np.einsum('...ij,...j->...i', landau_projection(p, ps), a)

    frame = lorentz_frame(p, ps, model.constants)
    if np.any(~frame.defined):
        raise SingularPairError('Landau gradient undefined for p = p*')
    k = frame.k_hat
    boosted = np.einsum('...ij,...j->...i', frame.Lambda_tilde, a)
    return boosted - np.sum(boosted * k, axis=-1, keepdims=True) * k

def landau_weight(f, fs, statistics, coupling:float = None):
    '''
        Weight Theta_L: f f*(1 + a f)(1 + a f*), (f f*)^2 or 1
    '''

    tag = statistics_tag(statistics)
    f = np.asarray(f, dtype=float)
    fs = np.asarray(fs, dtype=float)
    if tag in DEFAULT_COUPLING:
        a = DEFAULT_COUPLING[tag] if coupling is None else coupling
        return f * fs * (1.0 + a * f) * (1.0 + a * fs)
    if tag == 'wave':
        return (f * fs) ** 2
    return np.ones(np.broadcast(f, fs).shape)

def landau_potential(f_values, statistics, coupling:float = None):
    '''
        Factor w(f) with G(p, p*) = w(f*) grad f, so that the bracket is G(p, p*) - G(p*, p)
    '''

    tag = statistics_tag(statistics)
    f_values = np.asarray(f_values, dtype=float)
    if tag in DEFAULT_COUPLING:
        a = DEFAULT_COUPLING[tag] if coupling is None else coupling
        return f_values * (1.0 + a * f_values)
    if tag == 'wave':
        return f_values**2
    return np.ones_like(f_values)

def landau_bracket(f, p, ps, statistics, coupling:float = None):
    '''
        Statistics bracket w(f*) grad f - w(f) grad* f*, equal to Theta_L (grad h'(f) - grad* h'(f*))
    '''

    w_p = landau_potential(f.value(p), statistics, coupling)
    w_ps = landau_potential(f.value(ps), statistics, coupling)
    return w_ps[..., None] * f.gradient(p) - w_p[..., None] * f.gradient(ps)

def landau_tensor(p, ps, spec:KernelSpec, projection:str = 'closed'):
    '''
        kernel * projection for stacked pairs away from the diagonal
    '''
    return kernel_landau(p, ps, spec)[..., None, None] * landau_matrix(p, ps, spec.model, projection)

##################################################
#                Landau Operator                 #
##################################################

def _off_diagonal(p, nodes, radius:float):
    return np.linalg.norm(nodes - p, axis=-1) > radius

def landau_current(G, points, model:ModelSpec, spec:KernelSpec, nodes, weights, projection:str = 'closed'):
    '''
        Inner integral J(x) = sum over p* nodes of w* kernel * Proj (G(x, p*) - G(p*, x))
            Arguments: callable G, points x of shape (m, d), model, kernel, p* rule, projection form
            Returns: array (m, d); coinciding pairs contribute nothing, the limit of the integrand
    '''

    points = np.asarray(points, dtype=float)
    shape = (points.shape[0],) + nodes.shape
    here = np.broadcast_to(points[:, None, :], shape)
    keep = np.linalg.norm(here - nodes, axis=-1) > 0.0
    # Coinciding pairs are moved off the diagonal and weighted by zero
    ps = np.where(keep[..., None], nodes, here + 1.0)

    current = np.einsum('mnij,mnj->mni', landau_tensor(here, ps, spec, projection), G(here, ps) - G(ps, here))
    current = np.where(keep[..., None], current, 0.0)
    check_finite(current, {'ps': ps}, 'Landau current')
    return np.einsum('n,mni->mi', weights, current)

def landau_divergence(G, p, model:ModelSpec, spec:KernelSpec, quadrature:QuadratureSpec,
                      step:float = None, projection:str = 'closed', nodes = None, weights = None):
    '''
        Discrete Landau divergence: grad_p . integral of kernel * Proj (G(p, p*) - G(p*, p)) dp*
            Arguments: callable G(p, p*) returning (..., d) vectors, momentum p, model, kernel,
                       quadrature, difference step (defaults to DIVERGENCE_STEP * L), projection form,
                       optional p* rule
            Returns: scalar; fourth-order central differences of the landau_current
    '''

    d = model.d
    if nodes is None:
        nodes, weights = box_rule(quadrature, d)
    step = step if step is not None else DIVERGENCE_STEP * quadrature.halfwidth
    p = np.asarray(p, dtype=float)

    # Stencil rows: p + h e_j, p - h e_j, p + 2h e_j, p - 2h e_j
    offsets = np.concatenate([scale * step * np.eye(d) for scale in (1.0, -1.0, 2.0, -2.0)])
    current = landau_current(G, p + offsets, model, spec, nodes, weights, projection)
    plus, minus, plus2, minus2 = (np.diagonal(current[k * d:(k + 1) * d]) for k in range(4))
    return float(np.sum(8.0 * (plus - minus) - (plus2 - minus2)) / (12.0 * step))

def evaluate_QL(f, p, model:ModelSpec, spec:KernelSpec, quadrature:QuadratureSpec, coupling:float = None,
                projection:str = 'closed', nodes = None, weights = None, step:float = None):
    '''
        Landau operator Q_L(f)(p) for the model's statistics and dynamics
            Arguments: Distribution with gradient, momentum p, ModelSpec, KernelSpec, QuadratureSpec,
                       optional coupling and projection form, optional p* rule and difference step
            Returns: scalar
    '''

    def G(a, b):
        return landau_potential(f.value(b), model, coupling)[..., None] * f.gradient(a)

    return landau_divergence(G, p, model, spec, quadrature, step, projection, nodes, weights)

def evaluate_QL_grid(f, nodes, model:ModelSpec, spec:KernelSpec, quadrature:QuadratureSpec, threads:int = 1,
                     coupling:float = None, projection:str = 'closed', rule_nodes = None, rule_weights = None,
                     step:float = None):
    '''
        Q_L(f) on many output momenta, parallel over nodes
    '''

    nodes = np.asarray(nodes, dtype=float).reshape(-1, model.d)

    def node_value(index):
        return evaluate_QL(f, nodes[index], model, spec, quadrature, coupling, projection, rule_nodes, rule_weights,
                           step)

    return np.array(parallel_map(node_value, nodes.shape[0], threads))

##################################################
#          Bilinear Form and Dissipation         #
##################################################

def landau_bilinear_form(f, phi, psi, model:ModelSpec, spec:KernelSpec, quadrature:QuadratureSpec,
                         coupling:float = None, threads:int = 1, projection:str = 'closed'):
    '''
        Onsager form -1/2 sum of kernel * Theta_L * (grad phi - grad* phi*) . Proj (grad psi - grad* psi*)
            Arguments: Distribution f, Fields phi and psi, model, kernel, quadrature
            Returns: scalar, symmetric in (phi, psi)
    '''

    nodes, weights = box_rule(quadrature, model.d)
    entropy_model = EntropyModel(model)
    f_nodes = entropy_model.clip(f.value(nodes))
    grad_phi = phi.gradient(nodes)
    grad_psi = psi.gradient(nodes)

    def node_total(index):
        keep = _off_diagonal(nodes[index], nodes, 0.0)
        ps = nodes[keep]
        here = np.broadcast_to(nodes[index], ps.shape)
        theta = landau_weight(f_nodes[index], f_nodes[keep], model, coupling)
        a_phi = grad_phi[index] - grad_phi[keep]
        a_psi = grad_psi[index] - grad_psi[keep]
        form = np.einsum('ni,nij,nj->n', a_phi, landau_tensor(here, ps, spec, projection), a_psi)
        contribution = weights[keep] * theta * form
        check_finite(contribution, {'ps': ps}, 'Landau bilinear form')
        return weights[index] * float(np.sum(contribution))

    return -0.5 * math.fsum(parallel_map(node_total, nodes.shape[0], threads))

def landau_weak_form(f, phi, model:ModelSpec, spec:KernelSpec, quadrature:QuadratureSpec, coupling:float = None,
                     threads:int = 1, projection:str = 'closed'):
    '''
        <Q_L(f), phi> = -1/2 sum of kernel * Theta_L * grad~phi . grad~h'(f)
    '''

    dh = entropy_variation(f, model)
    return landau_bilinear_form(f, phi, dh, model, spec, quadrature, coupling, threads, projection)

def landau_dissipation(f, model:ModelSpec, spec:KernelSpec, quadrature:QuadratureSpec, coupling:float = None,
                       threads:int = 1, projection:str = 'closed'):
    '''
        D_L(f) = 1/2 sum of kernel * Theta_L * |grad~h'(f)|^2, equal to -<Q_L(f), h'(f)>
    '''

    dh = entropy_variation(f, model)
    return -landau_bilinear_form(f, dh, dh, model, spec, quadrature, coupling, threads, projection)

def landau_strong_pairing(f, phi, model:ModelSpec, spec:KernelSpec, quadrature:QuadratureSpec,
                          coupling:float = None, threads:int = 1, values = None):
    '''
        sum over box nodes of w_p Q_L(f)(p) phi(p)
            Arguments: as landau_weak_form; values optionally holds Q_L(f) on the box nodes
                       so that several fields can be paired with one evaluation
    '''

    nodes, weights = box_rule(quadrature, model.d)
    if values is None:
        values = evaluate_QL_grid(f, nodes, model, spec, quadrature, threads, coupling)
    return float(np.sum(weights * values * phi.value(nodes)))
