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
    generic.py
    Kinetica project, 2026

    Structural checks of the reversible/irreversible split on the periodic
    slab: the Poisson operator L(f), its antisymmetry and degeneracies, and the
    energy/entropy audit of completed runs.
'''

import numpy as np

from lib.entropy import EntropyModel
from lib.model import ModelSpec
from lib.solver import MonitorSeries, Solver, State

def centered_difference(values, axis:int, spacing:float, periodic:bool = True):
    '''
        Centered difference along one axis; periodic, or with zero values beyond both ends
    '''

    values = np.asarray(values, dtype=float)
    if periodic:
        return (np.roll(values, -1, axis) - np.roll(values, 1, axis)) / (2.0 * spacing)
    n = values.shape[axis]
    pad = [(0, 0)] * values.ndim
    pad[axis] = (1, 1)
    padded = np.pad(values, pad)
    upper = np.take(padded, np.arange(2, n + 2), axis=axis)
    lower = np.take(padded, np.arange(n), axis=axis)
    return (upper - lower) / (2.0 * spacing)

def momentum_difference(values, axis:int, spacing:float):
    # The momentum box is not periodic
    return centered_difference(values, axis, spacing, periodic=False)

def poisson_apply(f, xi, dq:float, dp:float):
    '''
        Poisson operator L(f)xi = -D_q(f D_p1 xi) + D_p1(f D_q xi) on slab arrays
            Arguments: distribution f and test function xi of shape (Nq,) + momentum shape,
                       spatial and momentum spacings
            Returns: array of the same shape; D_q is periodic and values beyond the momentum box are zero
    '''

    f = np.asarray(f, dtype=float)
    xi = np.broadcast_to(np.asarray(xi, dtype=float), f.shape)
    reversible = -centered_difference(f * momentum_difference(xi, 1, dp), 0, dq)
    return reversible + momentum_difference(f * centered_difference(xi, 0, dq), 1, dp)

def poisson_entropy(f, model:ModelSpec, dq:float, dp:float):
    '''
        L(f)dS for S = -H, written with the discrete chain rule f D h'(f) = D G(f)
            Returns: D_q D_p1 G(f) - D_p1 D_q G(f), zero up to roundoff
    '''

    G = EntropyModel(model).flux_potential(f)
    return (centered_difference(momentum_difference(G, 1, dp), 0, dq)
            - momentum_difference(centered_difference(G, 0, dq), 1, dp))

def _inner(a, b, measure:float):
    return float(np.sum(a * b)) * measure

def _test_fields(solver:Solver):
    q = solver.dq * np.arange(solver.slab_nodes)
    phase = 2.0 * np.pi * q / solver.slab_length
    points = solver.points.reshape(solver.shape + (solver.model.d,))
    envelope = np.exp(-0.25 * np.sum(points ** 2, axis=-1))

    expand = (-1,) + (1,) * solver.model.d
    xi = np.cos(phase).reshape(expand) * (envelope * points[..., 0])[None]
    eta = np.sin(2.0 * phase).reshape(expand) * (envelope * (1.0 + points[..., -1]))[None]
    return xi, eta

def poisson_checks(state:State, solver:Solver, tolerance:float = 1e-12, stencil_tolerance:float = 0.1):
    '''
        Antisymmetry and degeneracy checks of L(f) on a slab state
            Arguments: slab State, Solver holding the grid, tolerance of the exact identities,
                       bound on the relative error of the discrete velocity D_p1 e
            Returns: dict of normalized defects, stencil errors and the pass flag; the constant
                     and energy defects are taken on the interior momentum rows
    '''

    f = state.values
    dq, dp = solver.dq, solver.spacing
    measure = solver.cell * dq
    xi, eta = _test_fields(solver)
    interior = slice(1, -1)

    L_xi = poisson_apply(f, xi, dq, dp)
    L_eta = poisson_apply(f, eta, dq, dp)
    antisymmetry = abs(_inner(L_xi, eta, measure) + _inner(xi, L_eta, measure))
    antisymmetry /= max(np.linalg.norm(L_xi) * np.linalg.norm(eta) * measure, np.finfo(float).tiny)

    constant = float(np.max(np.abs(poisson_apply(f, np.ones_like(f), dq, dp)[:, interior])))

    # L(f)e against transport with the exact velocity
    energies = solver.energies.reshape(solver.shape)
    velocity = solver.velocity[interior]
    discrete_velocity = momentum_difference(energies, 0, dp)[interior]
    speed = max(float(np.max(np.abs(velocity))), np.finfo(float).tiny)
    velocity_error = float(np.max(np.abs(discrete_velocity - velocity))) / speed

    gradient = centered_difference(f, 0, dq)[:, interior]
    transport = -velocity[None] * gradient
    L_energy = poisson_apply(f, energies[None], dq, dp)[:, interior]
    energy = float(np.max(np.abs(L_energy - transport)))
    energy /= max(speed * float(np.max(np.abs(gradient))), np.finfo(float).tiny)

    G = EntropyModel(solver.model).flux_potential(f)
    entropy = float(np.max(np.abs(poisson_entropy(f, solver.model, dq, dp))))
    entropy /= max(float(np.max(np.abs(G))) / (dq * dp), np.finfo(float).tiny)

    dh = EntropyModel(solver.model).dh(EntropyModel(solver.model).clip(f))
    naive = poisson_apply(f, -dh, dq, dp)
    chain_rule_error = float(np.max(np.abs(naive[:, interior]))) * dq * dp / max(float(np.max(np.abs(G))), 1e-300)

    passed = (max(antisymmetry, entropy) <= tolerance and constant == 0.0
              and velocity_error <= stencil_tolerance and energy <= velocity_error + tolerance)
    return {'antisymmetry': float(antisymmetry), 'constant': constant, 'energy': energy, 'entropy': entropy,
            'velocity_stencil_error': velocity_error, 'chain_rule_error': chain_rule_error,
            'tolerance': tolerance, 'stencil_tolerance': stencil_tolerance, 'passed': bool(passed)}

def generic_energy_entropy_audit(series:MonitorSeries, energy_tol:float = 1e-6, entropy_rtol:float = 1e-10):
    '''
        First and second law audit of a completed run
            Arguments: MonitorSeries, energy drift tolerance, per-step entropy tolerance
            Returns: dict with energy drift, entropy production (raw and scaled by |H|),
                     entropy variation and the pass flag
    '''

    time = series.column('time')
    E = series.column('energy')
    H = series.column('entropy')

    energy_drift = float(np.max(np.abs(E - E[0])) / abs(E[0])) if E[0] != 0 else float(np.max(np.abs(E)))
    variation = float(np.max(np.abs(H - H[0])) / abs(H[0])) if H[0] != 0 else float(np.max(np.abs(H)))
    if len(series) > 1:
        decrease = -np.diff(H)
        production = float(np.min(decrease / np.diff(time)))
        scaled = float(np.min(decrease / np.maximum(np.abs(H[:-1]), np.finfo(float).tiny)))
    else:
        production = scaled = 0.0

    return {'energy_drift': energy_drift, 'min_entropy_production': production,
            'min_scaled_production': scaled, 'entropy_variation': variation,
            'energy_tol': energy_tol, 'entropy_rtol': entropy_rtol,
            'passed': bool(energy_drift <= energy_tol and scaled >= -entropy_rtol)}
