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
    entropy.py
    Kinetica project, 2026

    Entropy densities of the five statistics, the logarithmic mean and the
    dissipation potentials used by the gradient-flow form of the operators.
'''

import numpy as np

from lib.model import KineticaError, ModelSpec

TAGS = ('maxwell', 'bose', 'fermi', 'wave', 'linear')
LOGMEAN_RTOL = 1e-8

class DomainError(KineticaError):
    '''
        Raised when a value lies outside the domain of an entropy or statistics
    '''
    pass

def statistics_tag(statistics):
    '''
        Normalizes a ModelSpec or a tag string to a statistics tag
    '''

    tag = statistics.tag if isinstance(statistics, ModelSpec) else statistics
    if tag not in TAGS:
        raise DomainError(f'Unknown statistics {statistics!r}')
    return tag

def _as_nonneg(f_val):
    f = np.asarray(f_val, dtype=float)
    if np.any(f < 0) or np.any(np.isnan(f)):
        raise DomainError(f'Entropy evaluated at a negative or NaN value (min {np.nanmin(f)})')
    return f

def _xlogx(f):
    # 0 log 0 := 0
    with np.errstate(divide='ignore', invalid='ignore'):
        return np.where(f > 0, f * np.log(np.where(f > 0, f, 1.0)), 0.0)

def _scalar_or_array(value):
    return value.item() if np.ndim(value) == 0 else value

##################################################
#                Entropy Densities               #
##################################################

def entropy_density(f_val, statistics):
    '''
        Entropy density h(f) of the selected statistics
            Arguments: nonnegative scalar or array of f values, statistics tag or ModelSpec
            Returns: h(f), with +inf for Fermi values above 1 and for the wave entropy at 0
    '''

    tag = statistics_tag(statistics)
    f = _as_nonneg(f_val)

    with np.errstate(divide='ignore', invalid='ignore'):
        if tag == 'maxwell':
            h = _xlogx(f) - f
        elif tag == 'bose':
            h = _xlogx(f) - _xlogx(1.0 + f)
        elif tag == 'fermi':
            inside = f <= 1.0
            g = np.where(inside, 1.0 - f, 0.0)
            h = np.where(inside, _xlogx(np.where(inside, f, 0.0)) + _xlogx(g), np.inf)
        elif tag == 'wave':
            h = np.where(f > 0, -np.log(np.where(f > 0, f, 1.0)), np.inf)
        else:
            h = 0.5 * f * f

    return _scalar_or_array(h)

def entropy_derivative(f_val, statistics):
    '''
        First derivative h'(f); infinite at the boundary of the domain
    '''

    tag = statistics_tag(statistics)
    f = _as_nonneg(f_val)

    with np.errstate(divide='ignore', invalid='ignore'):
        if tag == 'maxwell':
            dh = np.log(f)
        elif tag == 'bose':
            dh = np.log(f / (1.0 + f))
        elif tag == 'fermi':
            if np.any(f > 1.0):
                raise DomainError('Fermi entropy derivative evaluated above 1')
            dh = np.log(f / (1.0 - f))
        elif tag == 'wave':
            dh = -1.0 / f
        else:
            dh = f.copy()

    return _scalar_or_array(dh)

def entropy_second_derivative(f_val, statistics):
    '''
        Second derivative h''(f) > 0 on the interior of the domain
    '''

    tag = statistics_tag(statistics)
    f = _as_nonneg(f_val)

    with np.errstate(divide='ignore', invalid='ignore'):
        if tag == 'maxwell':
            d2h = 1.0 / f
        elif tag == 'bose':
            d2h = 1.0 / (f * (1.0 + f))
        elif tag == 'fermi':
            d2h = 1.0 / (f * (1.0 - f))
        elif tag == 'wave':
            d2h = 1.0 / (f * f)
        else:
            d2h = np.ones_like(f)

    return _scalar_or_array(d2h)

def entropy_flux_potential(f_val, statistics):
    '''
        Potential G with G'(f) = f h''(f), so that f grad h'(f) = grad G(f)
            Arguments: f values, statistics tag or ModelSpec
            Returns: G(f)
    '''

    tag = statistics_tag(statistics)
    f = _as_nonneg(f_val)

    with np.errstate(divide='ignore', invalid='ignore'):
        if tag == 'maxwell':
            g = f.copy()
        elif tag == 'bose':
            g = np.log1p(f)
        elif tag == 'fermi':
            g = -np.log1p(-f)
        elif tag == 'wave':
            g = np.log(f)
        else:
            g = 0.5 * f * f

    return _scalar_or_array(g)

class EntropyModel:
    '''
        Bundles h, h' and h'' of one statistics
            Attributes:
                tag - statistics tag
    '''

    __slots__ = ('tag',)

    def __init__(self, statistics):
        self.tag = statistics_tag(statistics)

    def __repr__(self):
        return f'EntropyModel({self.tag})'

    def h(self, f_val):
        return entropy_density(f_val, self.tag)

    def dh(self, f_val):
        return entropy_derivative(f_val, self.tag)

    def d2h(self, f_val):
        return entropy_second_derivative(f_val, self.tag)

    def flux_potential(self, f_val):
        return entropy_flux_potential(f_val, self.tag)

    def clip(self, f_val, delta:float = 1e-9):
        '''
            Clips values into the open domain before h' is evaluated
        '''

        f = np.asarray(f_val, dtype=float)
        if self.tag == 'fermi':
            return np.clip(f, delta, 1.0 - delta)
        if self.tag in ('maxwell', 'bose', 'wave'):
            return np.maximum(f, delta)
        return f

##################################################
#        Logarithmic Mean and Dissipation        #
##################################################

def logarithmic_mean(s, t):
    '''
        Logarithmic mean (s - t)/(log s - log t), continuous across s = t
            Arguments: positive scalars or arrays s and t
            Returns: the logarithmic mean, between min(s, t) and max(s, t)
    '''

    s = np.asarray(s, dtype=float)
    t = np.asarray(t, dtype=float)
    if np.any(s <= 0) or np.any(t <= 0):
        raise DomainError('Logarithmic mean needs positive arguments')

    # Series in x = (s - t)/(s + t) about the arithmetic mean near the diagonal
    close = np.abs(s - t) <= LOGMEAN_RTOL * np.maximum(s, t)
    x = (s - t) / (s + t)
    series = 0.5 * (s + t) * (1.0 - x * x / 3.0 - 4.0 * x**4 / 45.0)
    with np.errstate(divide='ignore', invalid='ignore'):
        direct = (s - t) / (np.log(s) - np.log(t))
    return _scalar_or_array(np.where(close, series, direct))

def psi_star(r, kind:str):
    '''
        Dual dissipation potential: quadratic r^2/2 or 4(cosh(r/2) - 1)
    '''

    r = np.asarray(r, dtype=float)
    if kind == 'quadratic':
        value = 0.5 * r * r
    elif kind == 'cosh':
        value = 4.0 * (np.cosh(0.5 * r) - 1.0)
    else:
        raise DomainError(f'Unknown dissipation potential {kind!r}')
    return _scalar_or_array(value)

def psi_star_prime(r, kind:str):
    '''
        Derivative of psi_star: r or 2 sinh(r/2)
    '''

    r = np.asarray(r, dtype=float)
    if kind == 'quadratic':
        value = r.copy()
    elif kind == 'cosh':
        value = 2.0 * np.sinh(0.5 * r)
    else:
        raise DomainError(f'Unknown dissipation potential {kind!r}')
    return _scalar_or_array(value)

class DissipationPair:
    '''
        Dual dissipation potential together with its derivative
            Attributes:
                kind - 'quadratic' or 'cosh'
    '''

    __slots__ = ('kind',)

    def __init__(self, kind:str):
        if kind not in ('quadratic', 'cosh'):
            raise DomainError(f'Unknown dissipation potential {kind!r}')
        self.kind = kind

    def __repr__(self):
        return f'DissipationPair({self.kind})'

    def psi_star(self, r):
        return psi_star(r, self.kind)

    def psi_star_prime(self, r):
        return psi_star_prime(r, self.kind)
