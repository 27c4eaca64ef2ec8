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
    distribution.py
    Kinetica project, 2026

    The unknown f and the test functions phi: analytic families, equilibria of
    every statistics, grid samples with multilinear interpolation, named test
    fixtures, and the moment/entropy observables of a distribution.
'''

from abc import ABC, abstractmethod
import math

import numpy as np
from scipy.interpolate import RegularGridInterpolator

from lib.entropy import DomainError, EntropyModel
from lib.kinematics import energy, energy_gradient
from lib.model import ModelError, ModelSpec
from lib.quadrature import QuadratureSpec, box_rule

def _points(p):
    return np.asarray(p, dtype=float)

#######################################
#   Field and Distribution Interfaces  #
#######################################

class Field(ABC):
    '''
        Scalar function of momentum with its gradient; used for f and for test functions phi
    '''

    name = 'field'

    @abstractmethod
    def value(self, p):
        '''
            Evaluates the field at momenta p of shape (..., d)
        '''
        pass

    @abstractmethod
    def gradient(self, p):
        '''
            Gradient of the field at momenta p, shape (..., d)
        '''
        pass

    def __call__(self, p):
        return self.value(p)

    def __repr__(self):
        return f'{type(self).__name__}({self.name})'

class FunctionField(Field):
    '''
        Field built from two callables
            Attributes:
                name - label used in reports

                value_fn, gradient_fn - callables of p
    '''

    def __init__(self, value_fn, gradient_fn, name:str = 'phi'):
        self.value_fn = value_fn
        self.gradient_fn = gradient_fn
        self.name = name

    def value(self, p):
        return self.value_fn(_points(p))

    def gradient(self, p):
        return self.gradient_fn(_points(p))

class Distribution(Field):
    '''
        Nonnegative density f(p)
            Attributes:
                kind - 'analytic' or 'grid'
    '''

    kind = 'analytic'

    def check_domain(self, p, statistics:str):
        '''
            Raises DomainError unless 0 <= f (and f <= 1 for Fermi statistics) at p
        '''

        values = self.value(p)
        if np.any(values < 0) or not np.all(np.isfinite(values)):
            raise DomainError(f'{self!r} is negative or non-finite on the sample')
        if statistics == 'fermi' and np.any(values > 1.0):
            raise DomainError(f'{self!r} exceeds 1 under Fermi statistics')
        return values

##################################################
#                Analytic Families               #
##################################################

class Maxwellian(Distribution):
    '''
        rho (2 pi m T)^{-d/2} exp(-|p - u|^2/(2 m T))
    '''

    def __init__(self, rho:float, u, T:float, model:ModelSpec):
        if not T > 0 or not rho >= 0:
            raise ModelError(f'Maxwellian needs T > 0 and rho >= 0, got rho={rho}, T={T}')
        self.rho = float(rho)
        self.u = np.zeros(model.d) + np.asarray(u, dtype=float)
        self.T = float(T)
        self.mT = model.constants.m * self.T
        self.norm = self.rho * (2.0 * math.pi * self.mT) ** (-0.5 * model.d)
        self.name = f'maxwellian(rho={rho}, T={T})'

    def value(self, p):
        diff = _points(p) - self.u
        return self.norm * np.exp(-np.sum(diff * diff, axis=-1) / (2.0 * self.mT))

    def gradient(self, p):
        diff = _points(p) - self.u
        return -self.value(p)[..., None] * diff / self.mT

class _EnergyFamily(Distribution):
    '''
        Equilibria depending on p only through the energy e(p)
    '''

    def __init__(self, mu:float, T:float, model:ModelSpec):
        if not T > 0:
            raise ModelError(f'{type(self).__name__} needs T > 0, got {T}')
        self.mu = float(mu)
        self.T = float(T)
        self.model = model
        self.name = f'{type(self).__name__.lower()}(mu={mu}, T={T})'

    def minimum_energy(self):
        return energy(np.zeros(self.model.d), self.model)

    @abstractmethod
    def profile(self, e):
        pass

    @abstractmethod
    def profile_derivative(self, e, f):
        pass

    def value(self, p):
        return self.profile(energy(p, self.model))

    def gradient(self, p):
        p = _points(p)
        e = energy(p, self.model)
        f = self.profile(e)
        return self.profile_derivative(e, f)[..., None] * energy_gradient(p, self.model)

class BoseEinstein(_EnergyFamily):
    '''
        1/(exp((e(p) - mu)/T) - 1)
    '''

    def __init__(self, mu:float, T:float, model:ModelSpec):
        super().__init__(mu, T, model)
        if not self.minimum_energy() - self.mu > 0:
            raise ModelError(f'Bose-Einstein pole inside the momentum box: mu={mu} >= min e')

    def profile(self, e):
        with np.errstate(over='ignore'):
            return 1.0 / np.expm1((e - self.mu) / self.T)

    def profile_derivative(self, e, f):
        return -f * (1.0 + f) / self.T

class FermiDirac(_EnergyFamily):
    '''
        1/(exp((e(p) - mu)/T) + 1)
    '''

    def profile(self, e):
        with np.errstate(over='ignore'):
            return 1.0 / (np.exp((e - self.mu) / self.T) + 1.0)

    def profile_derivative(self, e, f):
        return -f * (1.0 - f) / self.T

class RayleighJeans(_EnergyFamily):
    '''
        T/(e(p) + mu)
    '''

    def __init__(self, mu:float, T:float, model:ModelSpec):
        super().__init__(mu, T, model)
        if not self.minimum_energy() + self.mu > 0:
            raise ModelError(f'Rayleigh-Jeans pole inside the momentum box: mu={mu}')

    def profile(self, e):
        return self.T / (e + self.mu)

    def profile_derivative(self, e, f):
        return -f * f / self.T

class Juttner(_EnergyFamily):
    '''
        amplitude exp(-(c p0 - m c^2)/T); reduces to a Maxwellian profile as c grows
    '''

    def __init__(self, T:float, model:ModelSpec, amplitude:float = 1.0):
        super().__init__(0.0, T, model)
        self.amplitude = float(amplitude)
        self.name = f'juttner(T={T})'

    def profile(self, e):
        rest = self.minimum_energy()
        return self.amplitude * np.exp(-(e - rest) / self.T)

    def profile_derivative(self, e, f):
        return -f / self.T

class ConstantDistribution(Distribution):
    def __init__(self, level:float):
        if level < 0:
            raise ModelError(f'Constant distribution must be nonnegative, got {level}')
        self.level = float(level)
        self.name = f'constant({level})'

    def value(self, p):
        return np.full(_points(p).shape[:-1], self.level)

    def gradient(self, p):
        return np.zeros_like(_points(p))

class GaussianMixture(Distribution):
    '''
        Sum of isotropic Gaussians
            Attributes:
                weights - component masses

                centers - component centres, shape (k, d)

                widths - component standard deviations
    '''

    def __init__(self, weights, centers, widths):
        self.weights = np.asarray(weights, dtype=float)
        self.centers = np.atleast_2d(np.asarray(centers, dtype=float))
        self.widths = np.asarray(widths, dtype=float)
        if np.any(self.weights < 0) or np.any(self.widths <= 0):
            raise ModelError('Gaussian mixture needs nonnegative weights and positive widths')
        d = self.centers.shape[-1]
        self.norms = self.weights * (2.0 * math.pi * self.widths**2) ** (-0.5 * d)
        self.name = f'mixture({len(self.weights)})'

    def _components(self, p):
        diff = _points(p)[..., None, :] - self.centers
        var = self.widths**2
        return diff, self.norms * np.exp(-np.sum(diff * diff, axis=-1) / (2.0 * var)), var

    def value(self, p):
        _, comps, _ = self._components(p)
        return np.sum(comps, axis=-1)

    def gradient(self, p):
        diff, comps, var = self._components(p)
        return -np.sum((comps / var)[..., None] * diff, axis=-2)

class PerturbedDistribution(Distribution):
    '''
        base(p) (1 + amplitude exp(-|p - center|^2/(2 width^2)))
    '''

    def __init__(self, base:Distribution, amplitude:float, center, width:float):
        if amplitude <= -1.0 or width <= 0:
            raise ModelError('Perturbation must keep the distribution positive')
        self.base = base
        self.amplitude = float(amplitude)
        self.center = np.asarray(center, dtype=float)
        self.width = float(width)
        self.name = f'perturbed({base.name})'

    def _bump(self, p):
        diff = _points(p) - self.center
        return diff, np.exp(-np.sum(diff * diff, axis=-1) / (2.0 * self.width**2))

    def value(self, p):
        _, bump = self._bump(p)
        return self.base.value(p) * (1.0 + self.amplitude * bump)

    def gradient(self, p):
        diff, bump = self._bump(p)
        factor = 1.0 + self.amplitude * bump
        dbump = -(self.amplitude * bump)[..., None] * diff / self.width**2
        return self.base.gradient(p) * factor[..., None] + self.base.value(p)[..., None] * dbump

class AffineDistribution(Distribution):
    '''
        shift + scale base(p); used for perturbations around a constant state
    '''

    def __init__(self, base:Field, shift:float, scale:float):
        self.base = base
        self.shift = float(shift)
        self.scale = float(scale)
        self.name = f'{shift}+{scale}*{base.name}'

    def value(self, p):
        return self.shift + self.scale * self.base.value(p)

    def gradient(self, p):
        return self.scale * self.base.gradient(p)

##################################################
#                Grid Distributions              #
##################################################

class GridDistribution(Distribution):
    '''
        Samples on a cell-centred N^d grid over [-L, L]^d with multilinear
        interpolation, zero extension outside the grid and central-difference gradients
            Attributes:
                halfwidth - L

                nodes - N, nodes per axis

                values - array of shape (N,)*d, finite and nonnegative
    '''

    kind = 'grid'

    def __init__(self, halfwidth:float, values):
        values = np.asarray(values, dtype=float)
        if not halfwidth > 0:
            raise ModelError(f'Grid halfwidth must be positive, got {halfwidth}')
        if not np.all(np.isfinite(values)):
            raise DomainError('Grid values must be finite')
        if np.any(values < 0):
            raise DomainError('Grid values must be nonnegative')
        if len(set(values.shape)) != 1:
            raise ModelError(f'Grid must have the same node count per axis, got {values.shape}')

        self.halfwidth = float(halfwidth)
        self.nodes = values.shape[0]
        self.d = values.ndim
        self.values = values
        self.spacing = 2.0 * self.halfwidth / self.nodes
        self.axis = -self.halfwidth + self.spacing * (np.arange(self.nodes) + 0.5)
        self.name = f'grid(N={self.nodes}, L={halfwidth})'

        axes = (self.axis,) * self.d
        self._interp = RegularGridInterpolator(axes, values, method='linear', bounds_error=False, fill_value=0.0)
        gradients = np.gradient(values, self.spacing) if self.d > 1 else [np.gradient(values, self.spacing)]
        self._grad_interp = [RegularGridInterpolator(axes, g, method='linear', bounds_error=False, fill_value=0.0)
                             for g in gradients]

    @classmethod
    def from_distribution(cls, dist:Field, halfwidth:float, nodes:int, d:int):
        '''
            Samples a distribution on a fresh grid
        '''

        grid = cls.grid_points(halfwidth, nodes, d)
        return cls(halfwidth, np.maximum(dist.value(grid), 0.0))

    @staticmethod
    def grid_points(halfwidth:float, nodes:int, d:int):
        h = 2.0 * halfwidth / nodes
        axis = -halfwidth + h * (np.arange(nodes) + 0.5)
        return np.stack(np.meshgrid(*([axis] * d), indexing='ij'), axis=-1)

    def points(self):
        return self.grid_points(self.halfwidth, self.nodes, self.d)

    def cell_volume(self):
        return self.spacing ** self.d

    def with_values(self, values):
        return GridDistribution(self.halfwidth, values)

    def value(self, p):
        p = _points(p)
        return self._interp(p.reshape(-1, self.d)).reshape(p.shape[:-1])

    def gradient(self, p):
        p = _points(p)
        flat = p.reshape(-1, self.d)
        return np.stack([g(flat) for g in self._grad_interp], axis=-1).reshape(p.shape)

##################################################
#              Equilibria and Fixtures           #
##################################################

FAMILIES = ('maxwellian', 'bose-einstein', 'fermi-dirac', 'rayleigh-jeans', 'juttner', 'constant')

def equilibrium(family:str, params:dict, model:ModelSpec):
    '''
        Builds an equilibrium family member
            Arguments: family name, dict of parameters, ModelSpec
            Returns: analytic Distribution with exact gradient
    '''

    params = dict(params)
    if family == 'maxwellian':
        return Maxwellian(params.get('rho', 1.0), params.get('u', 0.0), params.get('T', 1.0), model)
    if family == 'bose-einstein':
        return BoseEinstein(params['mu'], params.get('T', 1.0), model)
    if family == 'fermi-dirac':
        return FermiDirac(params['mu'], params.get('T', 1.0), model)
    if family == 'rayleigh-jeans':
        return RayleighJeans(params['mu'], params.get('T', 1.0), model)
    if family == 'juttner':
        return Juttner(params.get('T', 1.0), model, params.get('amplitude', 1.0))
    if family == 'constant':
        return ConstantDistribution(params.get('level', 1.0))
    raise ModelError(f'Unknown equilibrium family {family!r}; expected one of {FAMILIES}')

def matched_equilibrium(model:ModelSpec, T:float = 1.0):
    '''
        Default equilibrium annihilated by the operator of the model
    '''

    rest = energy(np.zeros(model.d), model)
    tag = model.tag
    if tag == 'maxwell':
        if model.relativistic:
            return Juttner(T, model)
        return Maxwellian(1.0, 0.0, T, model)
    if tag == 'bose':
        return BoseEinstein(rest - 1.0, T, model)
    if tag == 'fermi':
        return FermiDirac(rest, T, model)
    if tag == 'wave':
        return RayleighJeans(1.0 - rest, T, model) if model.relativistic else RayleighJeans(1.0, T, model)
    return ConstantDistribution(1.0)

FIXTURES = ('bimodal', 'two-stream', 'perturbed', 'equilibrium')

def fixture(name:str, model:ModelSpec):
    '''
        Named non-equilibrium (or equilibrium) test states valid for the model's statistics
            Arguments: fixture name, ModelSpec
            Returns: Distribution
    '''

    d = model.d
    if name == 'equilibrium':
        return matched_equilibrium(model)
    if name == 'bimodal':
        # Isotropic, two temperatures
        return GaussianMixture([0.5, 0.5], np.zeros((2, d)), [0.6, 1.2])
    if name == 'two-stream':
        shift = np.zeros(d)
        shift[0] = 1.2
        return GaussianMixture([0.5, 0.5], np.stack([shift, -shift]), [0.7, 0.7])
    if name == 'perturbed':
        center = np.zeros(d)
        center[0] = 0.5
        base = matched_equilibrium(model)
        amplitude = 0.4 if model.tag == 'fermi' else 0.6
        return PerturbedDistribution(base, amplitude, center, 0.8)
    raise ModelError(f'Unknown fixture {name!r}; expected one of {FIXTURES}')

def default_fixture(model:ModelSpec):
    '''
        Non-equilibrium state kept strictly inside the statistics domain
    '''

    if model.tag in ('maxwell', 'linear') and not model.relativistic:
        return fixture('bimodal', model)
    return fixture('perturbed', model)

##################################################
#                 Test Functions                 #
##################################################

def constant_field(level:float = 1.0):
    return FunctionField(lambda p: np.full(p.shape[:-1], float(level)),
                         lambda p: np.zeros_like(p), f'const({level})')

def momentum_field(j:int):
    def grad(p):
        g = np.zeros_like(p)
        g[..., j] = 1.0
        return g
    return FunctionField(lambda p: p[..., j].copy(), grad, f'p{j}')

def energy_field(model:ModelSpec):
    return FunctionField(lambda p: energy(p, model), lambda p: energy_gradient(p, model), 'energy')

def gaussian_field(center, width:float, amplitude:float = 1.0):
    center = np.asarray(center, dtype=float)

    def value(p):
        diff = p - center
        return amplitude * np.exp(-np.sum(diff * diff, axis=-1) / (2.0 * width**2))

    def grad(p):
        return -value(p)[..., None] * (p - center) / width**2

    return FunctionField(value, grad, f'gaussian(w={width})')

def entropy_variation(dist:Distribution, model:ModelSpec, delta:float = 1e-9):
    '''
        Test function h'(f(p)) with values clipped into the open statistics domain
    '''

    entropy_model = EntropyModel(model)

    def value(p):
        return entropy_model.dh(entropy_model.clip(dist.value(p), delta))

    def grad(p):
        f = entropy_model.clip(dist.value(p), delta)
        return entropy_model.d2h(f)[..., None] * dist.gradient(p)

    return FunctionField(value, grad, 'dh(f)')

def collision_invariants(model:ModelSpec):
    '''
        The test functions 1, p_1..p_d and e(p)
    '''
    return [constant_field()] + [momentum_field(j) for j in range(model.d)] + [energy_field(model)]

##################################################
#                   Observables                  #
##################################################

def _sample(dist:Distribution, quadrature:QuadratureSpec, d:int):
    if quadrature is None:
        if dist.kind != 'grid':
            raise ModelError('A quadrature is required for analytic distributions')
        points = dist.points().reshape(-1, d)
        return points, np.full(points.shape[0], dist.cell_volume())
    return box_rule(quadrature, d)

def moments(dist:Distribution, model:ModelSpec, quadrature:QuadratureSpec = None):
    '''
        Mass, momentum and energy of a distribution over the momentum box
            Arguments: Distribution, ModelSpec, QuadratureSpec (grid nodes if None)
            Returns: tuple (mass, momentum vector, energy)
    '''

    points, weights = _sample(dist, quadrature, model.d)
    f = dist.value(points)
    mass = float(np.sum(weights * f))
    momentum = np.sum((weights * f)[:, None] * points, axis=0)
    total_energy = float(np.sum(weights * f * energy(points, model)))
    return mass, momentum, total_energy

def entropy_functional(dist:Distribution, model:ModelSpec, quadrature:QuadratureSpec = None):
    '''
        H(f) = integral of h(f) over the momentum box
    '''

    points, weights = _sample(dist, quadrature, model.d)
    return float(np.sum(weights * EntropyModel(model).h(dist.value(points))))

def energy_functional(dist:Distribution, model:ModelSpec, quadrature:QuadratureSpec = None):
    return moments(dist, model, quadrature)[2]
