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
    model.py
    Kinetica project, 2026

    Shared model description for the collision operators: physical constants,
    the dynamics/statistics selection and the base exception of the library.
'''

import math

DYNAMICS = ('classical', 'relativistic')
STATISTICS = ('quantum', 'wave', 'linear')

class KineticaError(Exception):
    '''
        Base class of every error raised by the library
    '''
    pass

class ModelError(KineticaError):
    pass

class PhysicalConstants:
    '''
        Physical constants shared by every operator
            Attributes:
                m - particle mass, m > 0

                c - speed of light, c > 0

                hbar - semiclassical parameter in (0, 1], only read by limit sweeps
    '''

    __slots__ = ('m', 'c', 'hbar')

    def __init__(self, m:float = 1.0, c:float = 1.0, hbar:float = 1.0):
        # Reject nonphysical values before anything is built on them
        if not m > 0 or not math.isfinite(m):
            raise ModelError(f'model.m: mass must be positive, got {m}')
        if not c > 0 or not math.isfinite(c):
            raise ModelError(f'model.c: speed of light must be positive, got {c}')
        if not 0 < hbar <= 1:
            raise ModelError(f'model.hbar: must lie in (0, 1], got {hbar}')

        self.m = float(m)
        self.c = float(c)
        self.hbar = float(hbar)

    def __repr__(self):
        return f'PhysicalConstants(m={self.m}, c={self.c}, hbar={self.hbar})'

    def with_c(self, c:float):
        '''
            Copy of the constants with a different speed of light
        '''
        return PhysicalConstants(self.m, c, self.hbar)

class ModelSpec:
    '''
        Selects the equation being solved
            Attributes:
                dynamics - 'classical' or 'relativistic'

                statistics - 'quantum' (with alpha), 'wave' or 'linear'

                alpha - -1 (Fermi), 0 (Boltzmann), +1 (Bose); 0 for wave and linear

                d - momentum dimension, 2 or 3

                constants - PhysicalConstants of the model
    '''

    __slots__ = ('dynamics', 'statistics', 'alpha', 'd', 'constants')

    def __init__(self, dynamics:str = 'classical', statistics:str = 'quantum', alpha:int = 0,
                 d:int = 2, constants:PhysicalConstants = None):
        if dynamics not in DYNAMICS:
            raise ModelError(f'model.dynamics: expected one of {DYNAMICS}, got {dynamics!r}')
        if statistics not in STATISTICS:
            raise ModelError(f'statistics: expected one of {STATISTICS}, got {statistics!r}')
        if alpha not in (-1, 0, 1) or (statistics != 'quantum' and alpha != 0):
            raise ModelError(f'statistics: alpha must be -1, 0 or +1 for quantum statistics, got {alpha}')
        if d not in (2, 3):
            raise ModelError(f'model.d: momentum dimension must be 2 or 3, got {d}')

        self.dynamics = dynamics
        self.statistics = statistics
        self.alpha = int(alpha)
        self.d = int(d)
        self.constants = constants if constants is not None else PhysicalConstants()

    def __repr__(self):
        return (f'ModelSpec({self.dynamics}, {self.tag}, d={self.d}, '
                f'm={self.constants.m}, c={self.constants.c})')

    @property
    def tag(self):
        '''
            Short statistics tag: maxwell, bose, fermi, wave or linear
        '''
        if self.statistics == 'quantum':
            return {0: 'maxwell', 1: 'bose', -1: 'fermi'}[self.alpha]
        return self.statistics

    @property
    def relativistic(self):
        return self.dynamics == 'relativistic'

    def replace(self, **changes):
        '''
            Copy of the model with some fields replaced
                Arguments: keyword values for dynamics, statistics, alpha, d or constants
                Returns: new ModelSpec
        '''

        fields = {'dynamics': self.dynamics, 'statistics': self.statistics, 'alpha': self.alpha,
                  'd': self.d, 'constants': self.constants}
        fields.update(changes)
        return ModelSpec(**fields)

def model_from_tag(tag:str, dynamics:str = 'classical', d:int = 2, constants:PhysicalConstants = None):
    '''
        Builds a ModelSpec from a statistics tag
            Arguments: tag in {maxwell, bose, fermi, wave, linear}, dynamics, dimension, constants
            Returns: ModelSpec
    '''

    table = {'maxwell': ('quantum', 0), 'bose': ('quantum', 1), 'fermi': ('quantum', -1),
             'wave': ('wave', 0), 'linear': ('linear', 0)}
    if tag not in table:
        raise ModelError(f'statistics: unknown statistics tag {tag!r}')
    statistics, alpha = table[tag]
    return ModelSpec(dynamics, statistics, alpha, d, constants)
