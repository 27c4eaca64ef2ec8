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
    quadrature.py
    Kinetica project, 2026

    Quadrature rules over the momentum box, the collision angle, the circle
    S^{d-2} orthogonal to the pair axis and the sphere S^{d-1}, plus the
    counter-based random streams used by the Monte Carlo estimators.
'''

import logging
import math

import numpy as np
from scipy.special import roots_legendre, gamma

from lib.model import KineticaError

logger = logging.getLogger(__name__)

class QuadratureError(KineticaError):
    '''
        Raised for an empty or inconsistent quadrature budget
    '''
    pass

class PoisonedResultError(KineticaError):
    '''
        Raised when a quadrature sum picks up NaN; carries the offending events
            Attributes:
                events - dict of arrays describing the first bad events
    '''

    def __init__(self, message:str, events:dict = None):
        super().__init__(message)
        self.events = events if events is not None else {}

class QuadratureSpec:
    '''
        Budgets of every quadrature used by the operators
            Attributes:
                halfwidth - L, the momentum box is [-L, L]^d

                box_nodes - Gauss-Legendre nodes per axis of the box

                box_panels - number of composite panels per axis

                theta_panels - log-spaced panels of the collision-angle rule

                theta_order - Gauss-Legendre nodes per angular panel

                circle_nodes - nodes on the circle S^1 orthogonal to the pair axis (d = 3)

                sphere_nodes - nodes of the full-sphere rule

                method - 'deterministic' or 'montecarlo'

                mc_samples - Monte Carlo samples per output point

                seed - base seed of the counter-based streams
    '''

    __slots__ = ('halfwidth', 'box_nodes', 'box_panels', 'theta_panels', 'theta_order',
                 'circle_nodes', 'sphere_nodes', 'method', 'mc_samples', 'seed')

    def __init__(self, halfwidth:float = 8.0, box_nodes:int = 24, box_panels:int = 3,
                 theta_panels:int = 8, theta_order:int = 4, circle_nodes:int = 16,
                 sphere_nodes:int = 64, method:str = 'deterministic', mc_samples:int = 200000,
                 seed:int = 0):
        if not halfwidth > 0:
            raise QuadratureError(f'quadrature.halfwidth must be positive, got {halfwidth}')
        if box_nodes <= 0 or box_panels <= 0 or box_nodes % box_panels:
            raise QuadratureError('quadrature.box_nodes must be a positive multiple of quadrature.box_panels')
        if theta_panels <= 0 or theta_order <= 0 or circle_nodes <= 0 or sphere_nodes <= 0:
            raise QuadratureError('Quadrature budget must be positive')
        if method not in ('deterministic', 'montecarlo'):
            raise QuadratureError(f'quadrature.method must be deterministic or montecarlo, got {method!r}')
        if method == 'montecarlo' and mc_samples <= 0:
            raise QuadratureError('quadrature.mc_samples must be positive for Monte Carlo')

        self.halfwidth = float(halfwidth)
        self.box_nodes = int(box_nodes)
        self.box_panels = int(box_panels)
        self.theta_panels = int(theta_panels)
        self.theta_order = int(theta_order)
        self.circle_nodes = int(circle_nodes)
        self.sphere_nodes = int(sphere_nodes)
        self.method = method
        self.mc_samples = int(mc_samples)
        self.seed = int(seed)

    def __repr__(self):
        return (f'QuadratureSpec(L={self.halfwidth}, box={self.box_nodes}/{self.box_panels}, '
                f'theta={self.theta_panels}x{self.theta_order}, circle={self.circle_nodes}, '
                f'{self.method})')

    def replace(self, **changes):
        fields = {name: getattr(self, name) for name in self.__slots__}
        fields.update(changes)
        return QuadratureSpec(**fields)

    def refined(self, factor:int = 2):
        '''
            Copy with every deterministic budget multiplied by factor
        '''
        return self.replace(box_nodes=self.box_nodes * factor, box_panels=self.box_panels * factor,
                            theta_panels=self.theta_panels * factor, circle_nodes=self.circle_nodes * factor,
                            sphere_nodes=self.sphere_nodes * factor, mc_samples=self.mc_samples * factor)

##################################################
#                  Line and Box Rules            #
##################################################

def gauss_legendre(a:float, b:float, order:int):
    '''
        Gauss-Legendre rule on [a, b]
            Returns: nodes and weights arrays
    '''

    x, w = roots_legendre(order)
    half = 0.5 * (b - a)
    return 0.5 * (a + b) + half * x, half * w

def composite_gauss_legendre(breaks, order:int):
    '''
        Composite Gauss-Legendre rule over consecutive intervals given by breaks
    '''

    nodes, weights = [], []
    for a, b in zip(breaks[:-1], breaks[1:]):
        x, w = gauss_legendre(a, b, order)
        nodes.append(x)
        weights.append(w)
    return np.concatenate(nodes), np.concatenate(weights)

def box_rule(quadrature:QuadratureSpec, d:int):
    '''
        Tensor composite Gauss-Legendre rule on [-L, L]^d
            Arguments: QuadratureSpec, dimension
            Returns: points array (n, d) and weights array (n,)
    '''

    L = quadrature.halfwidth
    breaks = np.linspace(-L, L, quadrature.box_panels + 1)
    x, w = composite_gauss_legendre(breaks, quadrature.box_nodes // quadrature.box_panels)

    grids = np.meshgrid(*([x] * d), indexing='ij')
    wgrids = np.meshgrid(*([w] * d), indexing='ij')
    points = np.stack([g.ravel() for g in grids], axis=-1)
    weights = np.prod(np.stack([g.ravel() for g in wgrids], axis=-1), axis=-1)
    return points, weights

def uniform_box_rule(L:float, N:int, d:int):
    '''
        Cell-centered midpoint rule with N cells per axis; the nodes of grid distributions
    '''

    h = 2.0 * L / N
    x = -L + h * (np.arange(N) + 0.5)
    grids = np.meshgrid(*([x] * d), indexing='ij')
    points = np.stack([g.ravel() for g in grids], axis=-1)
    return points, np.full(points.shape[0], h**d)

##################################################
#                Angular Rules                   #
##################################################

def sphere_area(k:int):
    '''
        Surface measure |S^k| of the unit k-sphere; |S^0| = 2
    '''
    return 2.0 * math.pi ** ((k + 1) / 2.0) / gamma((k + 1) / 2.0)

def theta_rule(profile, quadrature:QuadratureSpec):
    '''
        Collision-angle rule for integrals against beta(theta) d theta
            Arguments: AngularProfile with a support and a beta evaluator, QuadratureSpec
            Returns: theta nodes and weights with beta folded into the weights
    '''

    lo, hi = profile.support
    if hi <= lo:
        raise QuadratureError(f'Empty angular support [{lo}, {hi}]')

    # Log-spaced panels resolve the small-angle end of the profile
    start = max(lo, hi * 1e-3)
    breaks = np.geomspace(start, hi, quadrature.theta_panels + 1)
    if lo < start:
        breaks = np.concatenate(([lo], breaks))
    theta, w = composite_gauss_legendre(breaks, quadrature.theta_order)
    return theta, w * profile.beta(theta)

def perpendicular_basis(k):
    '''
        Orthonormal basis of the complement of unit vectors k
            Arguments: array (..., d) of unit vectors, d in {2, 3}
            Returns: array (..., d, d-1) whose columns span k-perp
    '''

    k = np.asarray(k, dtype=float)
    if k.shape[-1] == 2:
        return np.stack([-k[..., 1], k[..., 0]], axis=-1)[..., None]

    # Pick the coordinate axis least aligned with k and orthogonalize
    axis_index = np.argmin(np.abs(k), axis=-1)
    axis = np.eye(3)[axis_index]
    e1 = axis - np.sum(axis * k, axis=-1, keepdims=True) * k
    e1 /= np.linalg.norm(e1, axis=-1, keepdims=True)
    e2 = np.cross(k, e1)
    return np.stack([e1, e2], axis=-1)

def circle_rule(d:int, quadrature:QuadratureSpec):
    '''
        Rule on S^{d-2} expressed in perpendicular-basis coordinates
            Returns: coordinates array (n, d-1) and weights (n,) summing to |S^{d-2}|
    '''

    if d == 2:
        # S^0 = {+1, -1} with counting measure
        return np.array([[1.0], [-1.0]]), np.array([1.0, 1.0])

    n = quadrature.circle_nodes
    phi = 2.0 * math.pi * (np.arange(n) + 0.5) / n
    return np.stack([np.cos(phi), np.sin(phi)], axis=-1), np.full(n, 2.0 * math.pi / n)

def sphere_rule(d:int, n:int):
    '''
        Deterministic rule on the full sphere S^{d-1}
            Arguments: dimension, node budget
            Returns: unit vectors (m, d) and weights summing to |S^{d-1}|
    '''

    if d == 2:
        phi = 2.0 * math.pi * (np.arange(n) + 0.5) / n
        return np.stack([np.cos(phi), np.sin(phi)], axis=-1), np.full(n, 2.0 * math.pi / n)

    # Gauss-Legendre in the polar cosine times uniform azimuth
    n_polar = max(2, int(round(math.sqrt(n / 2.0))))
    n_azimuth = 2 * n_polar
    mu, w_mu = gauss_legendre(-1.0, 1.0, n_polar)
    phi = 2.0 * math.pi * (np.arange(n_azimuth) + 0.5) / n_azimuth
    mu_grid, phi_grid = np.meshgrid(mu, phi, indexing='ij')
    sin_t = np.sqrt(1.0 - mu_grid**2)
    vectors = np.stack([sin_t * np.cos(phi_grid), sin_t * np.sin(phi_grid), mu_grid], axis=-1).reshape(-1, 3)
    weights = np.outer(w_mu, np.full(n_azimuth, 2.0 * math.pi / n_azimuth)).ravel()
    return vectors, weights

##################################################
#                  Random Streams                #
##################################################

def stream(seed:int, counter:int):
    '''
        Independent random generator for one (seed, counter) pair
            Arguments: base seed, counter such as an output-node index
            Returns: numpy Generator on a Philox stream keyed by both values
    '''

    key = (int(seed) % 2**64) * 2**64 + int(counter) % 2**64
    return np.random.Generator(np.random.Philox(key=key))

def sample_sphere(rng, n:int, d:int):
    '''
        Uniform samples on S^{d-1} by normalizing Gaussian vectors
    '''

    x = rng.standard_normal((n, d))
    return x / np.linalg.norm(x, axis=-1, keepdims=True)

def sample_box(rng, n:int, quadrature:QuadratureSpec, d:int):
    '''
        Uniform samples in the momentum box with their equal weights
    '''

    L = quadrature.halfwidth
    points = rng.uniform(-L, L, size=(n, d))
    return points, np.full(n, (2.0 * L) ** d / n)

def sample_circle(rng, n:int, d:int):
    '''
        Uniform samples on S^{d-2} in perpendicular-basis coordinates, weights |S^{d-2}|
    '''

    if d == 2:
        return rng.choice([-1.0, 1.0], size=(n, 1)), np.full(n, 2.0)
    phi = rng.uniform(0.0, 2.0 * math.pi, size=n)
    return np.stack([np.cos(phi), np.sin(phi)], axis=-1), np.full(n, 2.0 * math.pi)

def check_finite(values, events:dict, what:str):
    '''
        Raises PoisonedResultError if values contain NaN, quoting the first bad events
    '''

    bad = np.isnan(values)
    if np.any(bad):
        index = np.flatnonzero(bad.ravel())[:5]
        diagnostics = {name: np.asarray(array).reshape(bad.size, -1)[index].tolist()
                       for name, array in events.items() if np.asarray(array).size % bad.size == 0}
        raise PoisonedResultError(f'NaN encountered in {what} at {int(bad.sum())} events', diagnostics)
