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
    solver.py
    Kinetica project, 2026

    Explicit time evolution of the kinetic equation on a momentum grid: the
    spatially homogeneous problem d_t f = Q(f) and a periodic 1-D slab with
    free transport, together with the per-step conservation and entropy monitors.
'''

import logging
import math

import numpy as np

from lib.boltzmann import CollisionRule, evaluate_Q_grid
from lib.distribution import GridDistribution
from lib.entropy import EntropyModel
from lib.kernels import KernelSpec
from lib.kinematics import energy, transport_velocity
from lib.landau import evaluate_QL_grid
from lib.model import KineticaError, ModelError, ModelSpec
from lib.quadrature import QuadratureSpec

logger = logging.getLogger(__name__)

OPERATORS = ('boltzmann', 'landau')
MODES = ('homogeneous', 'slab')

class CFLError(KineticaError):
    '''
        Raised when a step size violates the stability bound
            Attributes:
                suggested_dt - largest step satisfying the bound
    '''

    def __init__(self, message:str, suggested_dt:float):
        super().__init__(message)
        self.suggested_dt = suggested_dt

class MonitorError(KineticaError):
    '''
        Raised when a monitored quantity leaves its tolerance during a run
            Attributes:
                diagnostics - dict describing the offending step
    '''

    def __init__(self, message:str, diagnostics:dict = None):
        super().__init__(message)
        self.diagnostics = diagnostics if diagnostics is not None else {}

##################################################
#                 State and Monitors             #
##################################################

class State:
    '''
        Distribution values at one instant
            Attributes:
                time - current time

                values - array (N,)*d in homogeneous mode, (Nq,) + (N,)*d in slab mode

                mode - 'homogeneous' or 'slab'

                clip - mass removed by clipping in the step that produced this state
    '''

    __slots__ = ('time', 'values', 'mode', 'clip')

    def __init__(self, time:float, values, mode:str = 'homogeneous', clip:float = 0.0):
        values = np.asarray(values, dtype=float)
        if mode not in MODES:
            raise ModelError(f'State mode must be one of {MODES}, got {mode!r}')
        if not np.all(np.isfinite(values)):
            raise MonitorError(f'Non-finite distribution values at t = {time}', {'time': time})

        self.time = float(time)
        self.values = values
        self.mode = mode
        self.clip = float(clip)

    def __repr__(self):
        return f'State(t={self.time}, mode={self.mode}, shape={self.values.shape})'

    def replace(self, **changes):
        fields = {'time': self.time, 'values': self.values, 'mode': self.mode, 'clip': self.clip}
        fields.update(changes)
        return State(**fields)

class MonitorSeries:
    '''
        Per-step records of the conserved moments, the entropy and its dissipation
            Attributes:
                d - momentum dimension

                records - list of dicts, one per recorded step
    '''

    def __init__(self, d:int):
        self.d = d
        self.records = []

    def __len__(self):
        return len(self.records)

    @property
    def columns(self):
        return (['step', 'time', 'mass'] + [f'momentum_{j + 1}' for j in range(self.d)]
                + ['energy', 'entropy', 'dissipation', 'clip'])

    def record(self, time:float, mass:float, momentum, total_energy:float, entropy:float,
               dissipation:float, clip:float = 0.0):
        '''
            Appends one record; timestamps must increase strictly
        '''

        if self.records and not time > self.records[-1]['time']:
            raise MonitorError(f'Monitor time {time} does not follow {self.records[-1]["time"]}',
                               {'time': time})

        entry = {'step': len(self.records), 'time': float(time), 'mass': float(mass)}
        for j, value in enumerate(np.atleast_1d(momentum)):
            entry[f'momentum_{j + 1}'] = float(value)
        entry.update({'energy': float(total_energy), 'entropy': float(entropy),
                      'dissipation': float(dissipation), 'clip': float(clip)})
        self.records.append(entry)

    def column(self, name:str):
        return np.array([entry[name] for entry in self.records])

    def momentum(self):
        return np.stack([self.column(f'momentum_{j + 1}') for j in range(self.d)], axis=-1)

    def rows(self):
        return [[entry[name] for name in self.columns] for entry in self.records]

##################################################
#                 Grid Operations                #
##################################################

def moment_correction(Q, f, points, weights, model:ModelSpec):
    '''
        Least-squares correction Q - f * sum_k lambda_k phi_k with phi in {1, p, e}
            Arguments: operator values Q and distribution values f on the nodes (any shape of
                       m entries), node array (m, d), node weights (m,), ModelSpec
            Returns: corrected values (shape of Q) whose discrete moments vanish
    '''

    shape = np.shape(Q)
    Q = np.asarray(Q, dtype=float).ravel()
    f = np.asarray(f, dtype=float).ravel()
    basis = np.vstack([np.ones(points.shape[0]), points.T, energy(points, model)])

    matrix = (basis * (weights * f)) @ basis.T
    moments = basis @ (weights * Q)
    coefficients = np.linalg.lstsq(matrix, moments, rcond=None)[0]
    return (Q - f * (coefficients @ basis)).reshape(shape)

def transport_shift(values, dt:float, velocity, length:float):
    '''
        Exact periodic shift f(q, p) -> f(q - v(p) dt, p) by spectral interpolation along q
            Arguments: array (Nq,) + momentum shape, step, velocity array of the momentum shape,
                       period length
            Returns: shifted values
    '''

    values = np.asarray(values, dtype=float)
    count = values.shape[0]
    wavenumber = 2.0 * np.pi * np.fft.rfftfreq(count, d=length / count)
    wavenumber = wavenumber.reshape((-1,) + (1,) * (values.ndim - 1))
    spectrum = np.fft.rfft(values, axis=0)
    spectrum *= np.exp(-1j * wavenumber * np.asarray(velocity)[None] * dt)
    return np.fft.irfft(spectrum, n=count, axis=0)

##################################################
#                     Solver                     #
##################################################

class Solver:
    '''
        Explicit RK4 stepper for d_t f = Q(f), with Strang splitting of free transport in slab mode
            Attributes:
                model, spec, quadrature - operator definition; quadrature.halfwidth is the grid halfwidth

                operator - 'boltzmann' or 'landau'

                nodes - grid nodes per momentum axis

                threads - worker threads for operator evaluation

                conservative - apply the least-squares moment correction to every operator evaluation

                collisions - evaluate the collision step in slab mode

                slab_nodes, slab_length - spatial grid of the slab

                cfl - bound on dt * max|Q| / max f

                drift_tol, entropy_rtol, clip_tol - monitor tolerances of run()
    '''

    def __init__(self, model:ModelSpec, spec:KernelSpec, quadrature:QuadratureSpec, operator:str = 'boltzmann',
                 nodes:int = 16, threads:int = 1, conservative:bool = False, collisions:bool = True,
                 slab_nodes:int = 64, slab_length:float = 2.0 * np.pi, cfl:float = 0.5,
                 drift_tol:float = 1e-6, entropy_rtol:float = 1e-10, clip_tol:float = 1e-8):
        if operator not in OPERATORS:
            raise ModelError(f'run.operator: expected one of {OPERATORS}, got {operator!r}')
        if nodes < 2 or slab_nodes < 2:
            raise ModelError(f'run.nodes: at least two nodes per axis are required, got {nodes}, {slab_nodes}')

        self.model = model
        self.spec = spec
        self.quadrature = quadrature
        self.operator = operator
        self.nodes = int(nodes)
        self.threads = max(1, int(threads))
        self.conservative = conservative
        self.collisions = collisions
        self.slab_nodes = int(slab_nodes)
        self.slab_length = float(slab_length)
        self.cfl = cfl
        self.drift_tol = drift_tol
        self.entropy_rtol = entropy_rtol
        self.clip_tol = clip_tol

        d = model.d
        self.halfwidth = quadrature.halfwidth
        self.shape = (self.nodes,) * d
        self.spacing = 2.0 * self.halfwidth / self.nodes
        self.cell = self.spacing ** d
        self.dq = self.slab_length / self.slab_nodes
        self.points = GridDistribution.grid_points(self.halfwidth, self.nodes, d).reshape(-1, d)
        self.weights = np.full(self.points.shape[0], self.cell)
        self.velocity = transport_velocity(self.points, model)[:, 0].reshape(self.shape)
        self.energies = energy(self.points, model)
        self.entropy_model = EntropyModel(model)
        self.rule = CollisionRule(model, spec, quadrature, self.points, self.weights) if operator == 'boltzmann' else None

    def __repr__(self):
        return f'Solver({self.operator}, {self.model}, N={self.nodes}, L={self.halfwidth})'

    def initial_state(self, dist):
        '''
            Samples a distribution onto the momentum grid
        '''
        values = GridDistribution.from_distribution(dist, self.halfwidth, self.nodes, self.model.d).values
        return State(0.0, self._domain(values))

    def slab_state(self, dist, amplitude:float = 0.1, mode:int = 1):
        '''
            Slab initial data f(q, p) = f0(p) (1 + amplitude cos(2 pi mode q / X))
        '''

        base = self.initial_state(dist).values
        q = self.dq * np.arange(self.slab_nodes)
        modulation = 1.0 + amplitude * np.cos(2.0 * np.pi * mode * q / self.slab_length)
        values = modulation.reshape((-1,) + (1,) * self.model.d) * base[None]
        return State(0.0, self._domain(values), 'slab')

    def _domain(self, values):
        if self.model.tag == 'fermi':
            return np.clip(values, 0.0, 1.0)
        return np.maximum(values, 0.0)

    def _clip(self, values, measure:float):
        clipped = self._domain(values)
        return clipped, float(np.sum(np.abs(clipped - values)) * measure)

    ##################################################
    #               Operator and Steps               #
    ##################################################

    def collision(self, values):
        '''
            Collision operator on the grid nodes
                Arguments: array (N,)*d of distribution values
                Returns: array (N,)*d of Q(f) values, moment-corrected when conservative
        '''

        grid = GridDistribution(self.halfwidth, self._domain(values))
        if self.operator == 'boltzmann':
            Q = evaluate_Q_grid(grid, self.points, self.model, self.spec, self.quadrature, self.threads,
                                rule=self.rule)[0]
        else:
            Q = evaluate_QL_grid(grid, self.points, self.model, self.spec, self.quadrature, self.threads,
                                 rule_nodes=self.points, rule_weights=self.weights, step=self.spacing / 4.0)
        Q = Q.reshape(self.shape)
        if self.conservative:
            Q = moment_correction(Q, grid.values, self.points, self.weights, self.model)
        return Q

    def _check_cfl(self, values, rate, dt:float):
        top = float(np.max(values))
        speed = float(np.max(np.abs(rate)))
        if top > 0 and speed > 0 and dt * speed / top > self.cfl:
            suggested = self.cfl * top / speed
            raise CFLError(f'dt = {dt} violates dt * max|Q| / max f <= {self.cfl}; use dt <= {suggested:.6g}',
                           suggested)

    def _rk4(self, values, dt:float, rate = None):
        k1 = self.collision(values) if rate is None else rate
        self._check_cfl(values, k1, dt)
        k2 = self.collision(values + 0.5 * dt * k1)
        k3 = self.collision(values + 0.5 * dt * k2)
        k4 = self.collision(values + dt * k3)
        return values + dt / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4)

    def step(self, state:State, dt:float, rate = None):
        '''
            Advances a state by one step
                Arguments: State, step dt > 0, optional Q(f) of the homogeneous state
                Returns: new State; homogeneous mode takes one RK4 step, slab mode a Strang
                         split of half transport, collision and half transport
        '''

        if not dt > 0:
            raise ModelError(f'run.dt: step must be positive, got {dt}')

        if state.mode == 'homogeneous':
            values, clip = self._clip(self._rk4(state.values, dt, rate), self.cell)
        else:
            speed = float(np.max(np.abs(self.velocity)))
            if dt * speed > self.dq:
                raise CFLError(f'dt = {dt} violates dt * max|v| / dq <= 1', self.dq / speed)
            values = transport_shift(state.values, 0.5 * dt, self.velocity, self.slab_length)
            if self.collisions:
                values = np.stack([self._rk4(values[j], dt) for j in range(self.slab_nodes)])
            values = transport_shift(values, 0.5 * dt, self.velocity, self.slab_length)
            values, clip = self._clip(values, self.cell * self.dq)

        if clip > 0:
            logger.debug('Clipped mass %.3e at t = %.6g', clip, state.time + dt)
        return State(state.time + dt, values, state.mode, clip)

    ##################################################
    #                  Observables                   #
    ##################################################

    def rate(self, state:State):
        '''
            Q(f) of a state: array of the state's shape, zero for collisionless slabs
        '''

        if state.mode == 'homogeneous':
            return self.collision(state.values)
        if not self.collisions:
            return np.zeros_like(state.values)
        return np.stack([self.collision(state.values[j]) for j in range(self.slab_nodes)])

    def observables(self, state:State, rate = None):
        '''
            Mass, momentum, energy, entropy and dissipation of a state
                Arguments: State, optional Q(f) of the state (dissipation is zero without it)
                Returns: dict of the monitored quantities
        '''

        values = state.values
        measure = self.cell * (self.dq if state.mode == 'slab' else 1.0)
        marginal = values.sum(axis=0) if state.mode == 'slab' else values
        marginal = marginal.ravel() * measure

        dissipation = 0.0
        if rate is not None:
            dh = self.entropy_model.dh(self.entropy_model.clip(values))
            dissipation = -float(np.sum(rate * dh)) * measure

        return {'mass': float(np.sum(marginal)),
                'momentum': marginal @ self.points,
                'energy': float(marginal @ self.energies),
                'entropy': float(np.sum(self.entropy_model.h(values))) * measure,
                'dissipation': dissipation,
                'speed': float(marginal @ np.linalg.norm(self.points, axis=-1))}

    def _record(self, series:MonitorSeries, state:State, rate):
        observed = self.observables(state, rate)
        series.record(state.time, observed['mass'], observed['momentum'], observed['energy'],
                      observed['entropy'], observed['dissipation'], state.clip)
        return observed

    def _audit(self, series:MonitorSeries, reference:dict, step:int):
        current = series.records[-1]
        previous = series.records[-2]
        diagnostics = {'step': step, 'time': current['time']}

        mass0 = reference['mass']
        if abs(current['mass'] - mass0) > self.drift_tol * abs(mass0):
            raise MonitorError(f'Mass drift {abs(current["mass"] - mass0):.3e} exceeds {self.drift_tol} relative '
                               f'at step {step}', dict(diagnostics, mass=current['mass'], reference=mass0))

        drift = float(np.max(np.abs(series.momentum()[-1] - reference['momentum'])))
        scale = max(float(np.linalg.norm(reference['momentum'])), reference['speed'])
        if drift > self.drift_tol * scale:
            raise MonitorError(f'Momentum drift {drift:.3e} exceeds {self.drift_tol} relative at step {step}',
                               dict(diagnostics, momentum_drift=drift, scale=scale))

        increase = current['entropy'] - previous['entropy']
        if increase > self.entropy_rtol * abs(previous['entropy']):
            raise MonitorError(f'Entropy increased by {increase:.3e} at step {step}',
                               dict(diagnostics, entropy=current['entropy'], previous=previous['entropy']))

        if current['clip'] > self.clip_tol * abs(mass0):
            raise MonitorError(f'Clipped mass {current["clip"]:.3e} exceeds {self.clip_tol} relative at step {step}',
                               dict(diagnostics, clip=current['clip']))

    def run(self, initial, t_end:float, dt:float, audit:bool = True, progress = None):
        '''
            Integrates to t_end with uniform steps, recording the monitors after every step
                Arguments: State or Distribution, final time, nominal step (shortened so the
                           steps end exactly at t_end), monitor assertions on/off, optional
                           tqdm bar
                Returns: tuple (final State, MonitorSeries)
        '''

        state = initial if isinstance(initial, State) else self.initial_state(initial)
        if not t_end > state.time:
            raise ModelError(f'run.t_end: must exceed the initial time {state.time}, got {t_end}')

        steps = max(1, math.ceil((t_end - state.time) / dt - 1e-9))
        dt = (t_end - state.time) / steps
        logger.info('Running %d steps of dt = %.6g with %s', steps, dt, self)

        series = MonitorSeries(self.model.d)
        rate = self.rate(state)
        reference = self._record(series, state, rate)

        for index in range(steps):
            state = self.step(state, dt, rate if state.mode == 'homogeneous' else None)
            rate = self.rate(state)
            self._record(series, state, rate)
            if audit:
                self._audit(series, reference, index + 1)
            if progress is not None:
                progress.update(1)

        return state, series

    def richardson_ratio(self, state:State, dt:float, steps:int = 4):
        '''
            Step-doubling ratio of RK4 on a homogeneous state
                Arguments: State, coarse step, number of coarse steps
                Returns: |u(dt) - u(dt/2)| / |u(dt/2) - u(dt/4)| at t = steps * dt; about 16 for RK4
        '''

        def integrate(h, count):
            values = state.values
            for _ in range(count):
                values = self._rk4(values, h)
            return values

        coarse = integrate(dt, steps)
        middle = integrate(0.5 * dt, 2 * steps)
        fine = integrate(0.25 * dt, 4 * steps)
        return float(np.linalg.norm(coarse - middle) / np.linalg.norm(middle - fine))

    def l1_distance(self, first:State, second:State):
        measure = self.cell * (self.dq if first.mode == 'slab' else 1.0)
        return float(np.sum(np.abs(first.values - second.values)) * measure)

##################################################
#                Module Interface                #
##################################################

def step(state:State, dt:float, model:ModelSpec, spec:KernelSpec, quadrature:QuadratureSpec, **options):
    '''
        One step with a solver built from the given options (see Solver)
    '''
    options.setdefault('nodes', state.values.shape[-1])
    if state.mode == 'slab':
        options.setdefault('slab_nodes', state.values.shape[0])
    return Solver(model, spec, quadrature, **options).step(state, dt)

def run(initial, model:ModelSpec, spec:KernelSpec, quadrature:QuadratureSpec, t_end:float, dt:float, **options):
    '''
        Full run with a solver built from the given options
            Returns: tuple (final State, MonitorSeries)
    '''

    progress = options.pop('progress', None)
    audit = options.pop('audit', True)
    return Solver(model, spec, quadrature, **options).run(initial, t_end, dt, audit, progress)

def richardson_ratio(state:State, dt:float, model:ModelSpec, spec:KernelSpec, quadrature:QuadratureSpec,
                     steps:int = 4, **options):
    options.setdefault('nodes', state.values.shape[-1])
    return Solver(model, spec, quadrature, **options).richardson_ratio(state, dt, steps)
