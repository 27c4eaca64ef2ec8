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
    kernels.py
    Kinetica project, 2026

    Collision kernels: angular profiles with their normalization and grazing
    rescaling, the classical kernel B, the relativistic kernel B^c with the
    Moller velocity, the delta-reduced kernels and the Landau kernels.
'''

import logging
import math
import warnings

import numpy as np
from scipy.integrate import quad, IntegrationWarning

from lib.kinematics import CollisionEvent, mandelstam
from lib.model import KineticaError, ModelSpec
from lib.quadrature import sphere_area

logger = logging.getLogger(__name__)

ANGULAR_FAMILIES = ('power', 'bump', 'constant')
SIGMA_FAMILIES = ('constant', 'power')

class NormalizationError(KineticaError):
    '''
        Raised when the theta^2 moment of an angular profile is not finite and positive
    '''
    pass

def normalization_target(d:int):
    '''
        Required value of the theta^2 moment of beta: 8(d-1)/|S^{d-2}|
    '''
    return 8.0 * (d - 1) / sphere_area(d - 2)

##################################################
#               Angular Profiles                 #
##################################################

class AngularProfile:
    '''
        Angular part of a kernel, written through beta(theta) = sin^{d-2}(theta) b(theta)
            Attributes:
                family - 'power', 'bump' or 'constant'

                d - momentum dimension

                nu - singularity strength of the power family, in (0, 2)

                theta0 - lower cutoff of the power family

                scale - multiplicative constant K of beta

                epsilon - grazing parameter; None for the unscaled profile
    '''

    __slots__ = ('family', 'd', 'nu', 'theta0', 'scale', 'epsilon')

    def __init__(self, family:str = 'power', d:int = 2, nu:float = 1.0, theta0:float = 1e-3,
                 scale:float = 1.0, epsilon:float = None):
        if family not in ANGULAR_FAMILIES:
            raise NormalizationError(f'kernel.angular must be one of {ANGULAR_FAMILIES}, got {family!r}')
        if family == 'power' and not 0 < nu < 2:
            raise NormalizationError(f'kernel.nu must lie in (0, 2), got {nu}')
        if family == 'power' and not 0 <= theta0 < 0.5 * math.pi:
            raise NormalizationError(f'kernel.theta0 must lie in [0, pi/2), got {theta0}')
        if epsilon is not None and not 0 < epsilon <= math.pi:
            raise NormalizationError(f'kernel.epsilon must lie in (0, pi], got {epsilon}')

        self.family = family
        self.d = int(d)
        self.nu = float(nu)
        self.theta0 = float(theta0)
        self.scale = float(scale)
        self.epsilon = None if epsilon is None else float(epsilon)

    def __repr__(self):
        return (f'AngularProfile({self.family}, d={self.d}, nu={self.nu}, theta0={self.theta0}, '
                f'K={self.scale:.6g}, eps={self.epsilon})')

    def replace(self, **changes):
        fields = {name: getattr(self, name) for name in self.__slots__}
        fields.update(changes)
        return AngularProfile(**fields)

    @property
    def base_support(self):
        if self.family == 'power':
            return self.theta0, 0.5 * math.pi
        return 0.0, 0.5 * math.pi

    @property
    def support(self):
        '''
            Support of the (rescaled) profile; shrinks to [.., eps/2] under rescaling
        '''

        lo, hi = self.base_support
        if self.epsilon is None:
            return lo, hi
        factor = self.epsilon / math.pi
        return lo * factor, hi * factor

    def base_beta(self, theta):
        theta = np.asarray(theta, dtype=float)
        lo, hi = self.base_support
        inside = (theta >= lo) & (theta <= hi)
        with np.errstate(divide='ignore', invalid='ignore', over='ignore'):
            if self.family == 'power':
                values = self.scale * np.power(np.where(inside, theta, 1.0), -1.0 - self.nu)
            elif self.family == 'bump':
                x = 4.0 * theta / math.pi - 1.0
                values = self.scale * np.exp(-1.0 / np.maximum(1.0 - x * x, 1e-300))
            else:
                values = self.scale * np.sin(theta) ** (self.d - 2)
        return np.where(inside, values, 0.0)

    def beta(self, theta):
        '''
            beta(theta), or its grazing rescaling (pi^3/eps^3) beta(pi theta/eps)
        '''

        if self.epsilon is None:
            return self.base_beta(theta)
        ratio = math.pi / self.epsilon
        return ratio**3 * self.base_beta(ratio * np.asarray(theta, dtype=float))

    def b(self, theta):
        '''
            b(theta) = beta(theta)/sin^{d-2}(theta), zero outside the support
        '''

        theta = np.asarray(theta, dtype=float)
        if self.d == 2:
            return self.beta(theta)
        with np.errstate(divide='ignore', invalid='ignore'):
            values = self.beta(theta) / np.sin(theta) ** (self.d - 2)
        return np.where(np.isfinite(values), values, 0.0)

    def theta2_moment(self):
        '''
            Integral of beta(theta) theta^2 over the support
        '''

        lo, hi = self.support
        with warnings.catch_warnings():
            warnings.simplefilter('error', IntegrationWarning)
            try:
                value, _ = quad(lambda t: float(self.beta(t)) * t * t, lo, hi, limit=200,
                                epsabs=0.0, epsrel=1e-12)
            except (IntegrationWarning, ZeroDivisionError, OverflowError) as err:
                raise NormalizationError(f'Angular normalization integral diverges: {err}')
        return value

def angular_normalize(profile:AngularProfile, d:int = None):
    '''
        Rescales beta so that its theta^2 moment equals 8(d-1)/|S^{d-2}|
            Arguments: AngularProfile, dimension (defaults to the profile's)
            Returns: normalized AngularProfile
    '''

    d = profile.d if d is None else d
    if d != profile.d:
        profile = profile.replace(d=d)

    moment = profile.theta2_moment()
    if not math.isfinite(moment) or moment <= 0:
        raise NormalizationError(f'Angular normalization integral is {moment}')

    target = normalization_target(d)
    if abs(moment / target - 1.0) < 1e-13:
        return profile
    logger.debug('Normalizing %s: moment %.6g -> %.6g', profile, moment, target)
    return profile.replace(scale=profile.scale * target / moment)

def rescale_angular(profile:AngularProfile, epsilon:float):
    '''
        Grazing rescaling of the profile; the theta^2 moment is unchanged
    '''
    return profile.replace(epsilon=epsilon)

def symmetrize_angular(b_full, theta):
    '''
        Folds a kernel given on [0, pi] onto [0, pi/2]: b(theta) + b(pi - theta)
            Arguments: callable b on [0, pi], angles in [0, pi/2]
            Returns: folded values
    '''

    theta = np.asarray(theta, dtype=float)
    return b_full(theta) + b_full(math.pi - theta)

##################################################
#                 Kernel Families                #
##################################################

class KernelSpec:
    '''
        Collision kernel of one model
            Attributes:
                sigma - 'constant' or 'power' family of the pair factor

                sigma0 - amplitude of sigma

                gamma - exponent of the power family, sigma = sigma0 r^gamma

                angular - AngularProfile

                model - ModelSpec

                newtonian - if True the relativistic sigma^c is m sigma(g)/(2 g)
    '''

    __slots__ = ('sigma', 'sigma0', 'gamma', 'angular', 'model', 'newtonian')

    def __init__(self, model:ModelSpec, angular:AngularProfile = None, sigma:str = 'constant',
                 sigma0:float = 1.0, gamma:float = 0.0, newtonian:bool = False):
        if sigma not in SIGMA_FAMILIES:
            raise NormalizationError(f'kernel.sigma must be one of {SIGMA_FAMILIES}, got {sigma!r}')
        if sigma0 < 0:
            raise NormalizationError(f'kernel.sigma0 must be nonnegative, got {sigma0}')

        self.model = model
        self.angular = angular if angular is not None else angular_normalize(AngularProfile(d=model.d))
        self.sigma = sigma
        self.sigma0 = float(sigma0)
        self.gamma = float(gamma) if sigma == 'power' else 0.0
        self.newtonian = bool(newtonian)

    def __repr__(self):
        return f'KernelSpec({self.sigma}, sigma0={self.sigma0}, gamma={self.gamma}, {self.angular})'

    def replace(self, **changes):
        fields = {name: getattr(self, name) for name in self.__slots__}
        fields.update(changes)
        return KernelSpec(**fields)

    def with_epsilon(self, epsilon:float):
        return self.replace(angular=rescale_angular(self.angular, epsilon))

    def sigma_of(self, r):
        '''
            sigma(r) of the classical kernel
        '''

        r = np.asarray(r, dtype=float)
        if self.sigma == 'constant':
            return np.full(r.shape, self.sigma0)
        with np.errstate(divide='ignore', invalid='ignore'):
            return self.sigma0 * np.where(r > 0, np.power(np.where(r > 0, r, 1.0), self.gamma),
                                          0.0 if self.gamma > 0 else (1.0 if self.gamma == 0 else np.inf))

    def sigma_c_of(self, g):
        '''
            sigma^c(g) of the relativistic kernel
        '''

        g = np.asarray(g, dtype=float)
        if self.newtonian:
            return newtonian_sigma_c(self.sigma_of, g, self.model.constants.m)
        return self.sigma_of(g)

def newtonian_sigma_c(sigma, g, m:float):
    '''
        sigma^c(g) = m sigma(g)/(2 g), the relativistic factor whose Newtonian limit is sigma
    '''

    g = np.asarray(g, dtype=float)
    with np.errstate(divide='ignore', invalid='ignore'):
        return np.where(g > 0, m * sigma(g) / (2.0 * np.where(g > 0, g, 1.0)), 0.0)

def moller_velocity(p, ps, constants):
    '''
        v_c = c g sqrt(s)/(p0 p0*)
    '''

    s, g, p0, ps0 = mandelstam(p, ps, constants)
    return constants.c * g * np.sqrt(s) / (p0 * ps0)

def pair_rate(p, ps, spec:KernelSpec):
    '''
        Pair factor multiplying b(theta): sigma(|p - p*|) or v_c sigma^c(g)
    '''

    p = np.asarray(p, dtype=float)
    ps = np.asarray(ps, dtype=float)
    if spec.model.relativistic:
        s, g, p0, ps0 = mandelstam(p, ps, spec.model.constants)
        return spec.model.constants.c * g * np.sqrt(s) / (p0 * ps0) * spec.sigma_c_of(g)
    return spec.sigma_of(np.linalg.norm(p - ps, axis=-1))

def _event(p, ps, omega, spec):
    return CollisionEvent(p, ps, omega, spec.model)

def kernel_classical(p, ps, omega, spec:KernelSpec):
    '''
        B = sigma(|p - p*|) b(theta), zero outside the angular support
            Arguments: momenta p, p*, unit vector omega, KernelSpec
            Returns: kernel value
    '''

    event = _event(p, ps, omega, spec.replace(model=spec.model.replace(dynamics='classical')))
    r = np.linalg.norm(event.p - event.ps, axis=-1)
    theta = np.where(r > 0, event.theta, 0.0)
    return spec.sigma_of(r) * spec.angular.b(theta)

def modified_kernel_classical(p, ps, omega, spec:KernelSpec):
    '''
        Delta-reduced kernel 2^d |p - p*|^{2-d} B
    '''

    d = spec.model.d
    r = np.linalg.norm(np.asarray(p, dtype=float) - np.asarray(ps, dtype=float), axis=-1)
    return 2.0**d * r ** (2 - d) * kernel_classical(p, ps, omega, spec)

def kernel_relativistic(p, ps, omega, spec:KernelSpec):
    '''
        B^c = v_c sigma^c(g) b(theta hat)
            Arguments: momenta p, p*, unit vector omega, KernelSpec with relativistic model
            Returns: kernel value (0 when p = p*)
    '''

    model = spec.model.replace(dynamics='relativistic')
    event = CollisionEvent(p, ps, omega, model)
    g = event.frame.g
    theta = np.where(g > 0, event.theta, 0.0)
    v_c = model.constants.c * g * np.sqrt(event.frame.s) / (event.frame.p0 * event.frame.ps0)
    return v_c * spec.sigma_c_of(g) * spec.angular.b(theta)

def modified_kernel_relativistic(p, ps, omega, spec:KernelSpec):
    '''
        Swap-symmetric kernel 2^{d-2} sqrt(s) g^{2-d} B^c/(p0' p0*')
    '''

    model = spec.model.replace(dynamics='relativistic')
    event = CollisionEvent(p, ps, omega, model)
    d = model.d
    g = event.frame.g
    with np.errstate(divide='ignore', invalid='ignore'):
        factor = 2.0 ** (d - 2) * np.sqrt(event.frame.s) * np.where(g > 0, g, 1.0) ** (2 - d)
        factor = factor / (event.p0_out * event.ps0_out)
    return np.where(g > 0, factor * kernel_relativistic(p, ps, omega, spec), 0.0)

def kernel_landau(p, ps, spec:KernelSpec):
    '''
        Landau kernel: sigma(|p - p*|)|p - p*|^2 or v_c sigma^c(g) g^2
    '''

    p = np.asarray(p, dtype=float)
    ps = np.asarray(ps, dtype=float)
    if spec.model.relativistic:
        s, g, p0, ps0 = mandelstam(p, ps, spec.model.constants)
        return spec.model.constants.c * g * np.sqrt(s) / (p0 * ps0) * spec.sigma_c_of(g) * g * g
    r = np.linalg.norm(p - ps, axis=-1)
    return spec.sigma_of(r) * r * r
