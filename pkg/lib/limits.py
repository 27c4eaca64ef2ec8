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
    limits.py
    Kinetica project, 2026

    Convergence sweeps for the grazing, Newtonian, semiclassical, kinetic
    and linear limits, the pointwise grazing lemma and the algebraic
    expansion oracles of the scaled brackets.
'''

import logging
import math

import numpy as np

from lib.boltzmann import operator_integrand, weak_form
from lib.distribution import AffineDistribution
from lib.kernels import KernelSpec, moller_velocity
from lib.kinematics import (classical_post_collision, lorentz_frame, mandelstam, relativistic_post_collision,
                            rest_momentum, transport_velocity)
from lib.landau import landau_weak_form
from lib.model import ModelSpec
from lib.quadrature import QuadratureSpec, circle_rule, perpendicular_basis, sample_sphere, sphere_area, stream

logger = logging.getLogger(__name__)

##################################################
#                 Sweep Reports                  #
##################################################

def observed_orders(params, errors, floor:float = 0.0):
    '''
        Pairwise convergence orders log(e_i/e_{i+1})/log(x_i/x_{i+1})
            Arguments: decreasing small parameters x, errors, noise floor
            Returns: list with None where either error is not above the floor
    '''

    orders = []
    for i in range(len(params) - 1):
        e0, e1 = errors[i], errors[i + 1]
        if e0 > floor and e1 > floor and params[i] != params[i + 1]:
            orders.append(math.log(e0 / e1) / math.log(params[i] / params[i + 1]))
        else:
            orders.append(None)
    return orders

def median_order(orders):
    defined = [o for o in orders if o is not None]
    return float(np.median(defined)) if defined else None

class SweepReport:
    '''
        Errors of one limit sweep with their observed orders
            Attributes:
                parameter - name of the swept parameter

                values - parameter values in sweep order

                series - ordered dict of error name -> list of errors

                inverse - True when orders are measured in 1/parameter (e.g. 1/c)

                min_order - acceptance bar on the median order

                floor - errors at or below it count as converged

                noise_floor - error change under doubled quadrature at the last point, if measured

                seed - seed of the random samples, if any
    '''

    __slots__ = ('parameter', 'values', 'series', 'inverse', 'min_order', 'floor', 'noise_floor', 'seed')

    def __init__(self, parameter:str, values, series:dict, min_order:float, inverse:bool = False,
                 floor:float = 0.0, noise_floor:float = None, seed:int = None):
        self.parameter = parameter
        self.values = [float(v) for v in values]
        self.series = {name: [float(e) for e in errors] for name, errors in series.items()}
        self.inverse = inverse
        self.min_order = min_order
        self.floor = floor
        self.noise_floor = noise_floor
        self.seed = seed

        for name, errors in self.series.items():
            if len(errors) != len(self.values):
                raise ValueError(f'Series {name} has {len(errors)} errors for {len(self.values)} values')

    def __repr__(self):
        return f'SweepReport({self.parameter}, {list(self.series)}, passed={self.passed})'

    def small_parameters(self):
        return [1.0 / v for v in self.values] if self.inverse else list(self.values)

    def orders(self, name:str):
        return observed_orders(self.small_parameters(), self.series[name], self.floor)

    def order(self, name:str):
        return median_order(self.orders(name))

    def converged(self, name:str):
        return max(self.series[name]) <= self.floor

    def series_passed(self, name:str):
        if self.converged(name):
            return True
        order = self.order(name)
        return order is not None and order >= self.min_order

    @property
    def passed(self):
        return all(self.series_passed(name) for name in self.series)

    def rows(self):
        '''
            One dict per parameter value: parameter, errors and the order from the previous point
        '''

        orders = {name: [None] + self.orders(name) for name in self.series}
        rows = []
        for i, value in enumerate(self.values):
            row = {self.parameter: value}
            for name in self.series:
                row[name] = self.series[name][i]
                row[f'observed_order_{name}'] = orders[name][i]
            rows.append(row)
        return rows

    def summary(self):
        return {'parameter': self.parameter, 'values': self.values, 'min_order': self.min_order,
                'floor': self.floor, 'noise_floor': self.noise_floor, 'seed': self.seed,
                'orders': {name: self.order(name) for name in self.series},
                'passed': {name: self.series_passed(name) for name in self.series}}

def _floor(*values, rtol:float = 1e-10):
    return rtol * (1.0 + max(abs(v) for v in values))

##################################################
#                 Grazing Limit                  #
##################################################

def grazing_sweep(f, phi, model:ModelSpec, spec:KernelSpec, quadrature:QuadratureSpec, eps_list,
                  min_order:float = 0.8, threads:int = 1, noise:bool = False, progress = None):
    '''
        |<Q_eps(f), phi> - <Q_L(f), phi>| over decreasing eps
            Arguments: Distribution, Field, model, kernel (unscaled profile), quadrature, eps values,
                       acceptance order, threads, whether to measure the noise floor, optional tqdm bar
            Returns: SweepReport with series error_weak_form
    '''

    eps_list = [float(e) for e in eps_list]
    if any(b >= a for a, b in zip(eps_list, eps_list[1:])) or not 0 < eps_list[-1] <= eps_list[0] <= 1:
        raise ValueError('eps_list must be strictly decreasing in (0, 1]')

    landau_value = landau_weak_form(f, phi, model, spec, quadrature, threads=threads)
    errors, values = [], []
    # Iterate through the grazing parameters
    for eps in eps_list:
        boltzmann_value = weak_form(f, phi, model, spec.with_epsilon(eps), quadrature, threads=threads)
        values.append(boltzmann_value)
        errors.append(abs(boltzmann_value - landau_value))
        logger.debug('grazing eps=%g: boltzmann %.12g landau %.12g', eps, boltzmann_value, landau_value)
        if progress is not None:
            progress.update(1)

    noise_floor = None
    if noise:
        finer = quadrature.replace(theta_panels=2 * quadrature.theta_panels)
        refined = weak_form(f, phi, model, spec.with_epsilon(eps_list[-1]), finer, threads=threads)
        noise_floor = abs(refined - values[-1])

    return SweepReport('epsilon', eps_list, {'error_weak_form': errors}, min_order,
                       floor=_floor(landau_value, *values), noise_floor=noise_floor)

def _lemma_chart(p, ps, model:ModelSpec):
    '''
        Coordinates in which the collision map reads x' = x + r (omega - k), x*' = x* - r (omega - k)
            Returns: tuple (x, x*, to_lab, pullback); pullback(y, grad) is the chart gradient at y of a
                     field whose momentum gradient at to_lab(y) is grad
    '''

    if not model.relativistic:
        return p, ps, (lambda y: y), (lambda y, grad: grad)

    frame = lorentz_frame(p, ps, model.constants)
    half_g = 0.5 * float(frame.g)
    mc2 = rest_momentum(model.constants) ** 2
    rho_v = float(frame.rho) * frame.v
    Lt = frame.Lambda_tilde

    # Inverse boost on the mass shell, frozen at the incoming pair
    def to_lab(y):
        return Lt @ y + rho_v * math.sqrt(mc2 + float(y @ y))

    def pullback(y, grad):
        return Lt @ grad + float(rho_v @ grad) * y / math.sqrt(mc2 + float(y @ y))

    return half_g * frame.k_hat, -half_g * frame.k_hat, to_lab, pullback

def grazing_lemma_pointwise(kappa, f, phi, p, ps, theta_list, model:ModelSpec, quadrature:QuadratureSpec = None,
                            min_order:float = 1.8):
    '''
        theta^-2 times the circle integral of kappa(f') kappa(f*') grad phi against its small-angle limit
            Arguments: kappa coefficients (a, alpha) of kappa(f) = a + alpha f, Distribution f, Field phi,
                       momenta p != p*, decreasing angles, ModelSpec, QuadratureSpec for the circle rule
            Returns: SweepReport with series ratio_defect = |LHS/RHS - 1| (absolute defect if RHS = 0)
    '''

    quadrature = quadrature if quadrature is not None else QuadratureSpec()
    a, alpha = kappa
    p = np.asarray(p, dtype=float)
    ps = np.asarray(ps, dtype=float)
    d = model.d

    def kappa_of(x):
        return a + alpha * f.value(x)

    # Axis and post-collision map of the dynamics
    if model.relativistic:
        frame = lorentz_frame(p, ps, model.constants)
        k = frame.k_hat

        def post(omega):
            p_out, ps_out, _, _ = relativistic_post_collision(np.broadcast_to(p, omega.shape),
                                                              np.broadcast_to(ps, omega.shape), omega,
                                                              model.constants)
            return p_out, ps_out
    else:
        k = (p - ps) / np.linalg.norm(p - ps)

        def post(omega):
            return classical_post_collision(np.broadcast_to(p, omega.shape), np.broadcast_to(ps, omega.shape), omega)

    gamma, gamma_weights = circle_rule(d, quadrature)
    perp = gamma @ perpendicular_basis(k).T

    lhs = []
    # Iterate through the angles
    for theta in theta_list:
        omega = k * math.cos(theta) + perp * math.sin(theta)
        p_out, ps_out = post(omega)
        gradient = phi.value(p_out) + phi.value(ps_out) - phi.value(p) - phi.value(ps)
        lhs.append(float(np.sum(gamma_weights * kappa_of(p_out) * kappa_of(ps_out) * gradient)) / theta**2)

    # Closed form in the chart, with M(z) = |z|^2 I - z z:
    # |S^{d-2}|/(8(d-1)) [2 (grad - grad*)(kappa kappa*) . M a + kappa kappa* (grad - grad*) . (M a)]
    # For relativistic pairs M = g^2 Pi_{k_hat-perp}, the boosted form of g^2 S(p, p*)
    x, xs, to_lab, pullback = _lemma_chart(p, ps, model)

    def chart_gradient(field, y):
        return pullback(y, field.gradient(to_lab(y)))

    def flux(y, ys):
        z = y - ys
        return (float(z @ z) * np.eye(d) - np.outer(z, z)) @ (chart_gradient(phi, y) - chart_gradient(phi, ys))

    K = float(kappa_of(p) * kappa_of(ps))
    b = alpha * (chart_gradient(f, x) * kappa_of(ps) - kappa_of(p) * chart_gradient(f, xs))
    h = 1e-4 * max(1.0, float(np.linalg.norm(x - xs)))
    divergence = 0.0
    for j in range(d):
        e = np.zeros(d)
        e[j] = h
        divergence += (flux(x + e, xs)[j] - flux(x - e, xs)[j]) / (2.0 * h)
        divergence -= (flux(x, xs + e)[j] - flux(x, xs - e)[j]) / (2.0 * h)
    rhs = sphere_area(d - 2) / (8.0 * (d - 1)) * (2.0 * float(b @ flux(x, xs)) + K * divergence)

    if rhs == 0.0:
        defects = [abs(v) for v in lhs]
    else:
        defects = [abs(v / rhs - 1.0) for v in lhs]
    return SweepReport('theta', theta_list, {'ratio_defect': defects}, min_order, floor=1e-12)

##################################################
#                Newtonian Limit                 #
##################################################

def newtonian_sweep(f, phi, model:ModelSpec, spec:KernelSpec, quadrature:QuadratureSpec, c_list,
                    pairs:int = 64, min_order:float = 1.8, threads:int = 1, seed:int = 0, progress = None):
    '''
        Kinematic and operator gaps between relativistic and classical dynamics as c grows
            Arguments: Distribution, Field, classical or relativistic ModelSpec (constants give m),
                       KernelSpec with a classical sigma, quadrature, increasing c values,
                       number of random pairs, acceptance order, threads, seed, optional tqdm bar
            Returns: SweepReport over c with orders in 1/c
    '''

    c_list = [float(c) for c in c_list]
    if any(b <= a for a, b in zip(c_list, c_list[1:])):
        raise ValueError('c_list must be increasing')

    d = model.d
    m = model.constants.m
    rng = stream(seed, 0)
    p = rng.uniform(-2.0, 2.0, size=(pairs, d))
    ps = rng.uniform(-2.0, 2.0, size=(pairs, d))
    omega = sample_sphere(rng, pairs, d)
    r = np.linalg.norm(p - ps, axis=-1)

    classical = model.replace(dynamics='classical')
    classical_value = weak_form(f, phi, classical, spec.replace(model=classical, newtonian=False), quadrature,
                                threads=threads)
    p_cl, ps_cl = classical_post_collision(p, ps, omega)
    v_cl = transport_velocity(p, classical)

    series = {'error_g': [], 'error_moller': [], 'error_post_collision': [], 'error_transport': [],
              'error_weak_form': []}
    # Iterate through the speeds of light
    for c in c_list:
        relativistic = model.replace(dynamics='relativistic', constants=model.constants.with_c(c))
        _, g, _, _ = mandelstam(p, ps, relativistic.constants)
        series['error_g'].append(float(np.max(np.abs(g - r))))
        v_c = moller_velocity(p, ps, relativistic.constants)
        series['error_moller'].append(float(np.max(np.abs(v_c - 2.0 * r / m))) * m / 2.0)
        p_rel, ps_rel, _, _ = relativistic_post_collision(p, ps, omega, relativistic.constants)
        series['error_post_collision'].append(float(np.max(np.linalg.norm(p_rel - p_cl, axis=-1))))
        series['error_transport'].append(float(np.max(np.linalg.norm(transport_velocity(p, relativistic) - v_cl, axis=-1))))
        relativistic_value = weak_form(f, phi, relativistic, spec.replace(model=relativistic, newtonian=True),
                                       quadrature, threads=threads)
        series['error_weak_form'].append(abs(relativistic_value - classical_value))
        if progress is not None:
            progress.update(1)

    return SweepReport('c', c_list, series, min_order, inverse=True,
                       floor=_floor(classical_value, rtol=1e-13), seed=seed)

##################################################
#        Semiclassical, Kinetic, Linear          #
##################################################

def semiclassical_sweep(f, phi, model:ModelSpec, spec:KernelSpec, quadrature:QuadratureSpec, hbar_list,
                        min_order:float = 0.9, threads:int = 1, progress = None):
    '''
        |<Q_{hbar alpha}(f), phi> - <Q_0(f), phi>| over decreasing hbar
            Arguments: Distribution, Field, quantum ModelSpec with alpha = +-1, kernel, quadrature, hbar values
            Returns: SweepReport with series error_weak_form
    '''

    alpha = model.alpha
    reference = weak_form(f, phi, model, spec, quadrature, coupling=0.0, threads=threads)
    errors = []
    for hbar in hbar_list:
        scaled = weak_form(f, phi, model, spec, quadrature, coupling=hbar * alpha, threads=threads)
        errors.append(abs(scaled - reference))
        if progress is not None:
            progress.update(1)
    return SweepReport('hbar', hbar_list, {'error_weak_form': errors}, min_order, floor=_floor(reference, rtol=1e-13))

def kinetic_limit_check(f, phi, model:ModelSpec, spec:KernelSpec, quadrature:QuadratureSpec, eps_list,
                        min_order:float = 0.9, threads:int = 1, progress = None):
    '''
        |eps <Q_Bose,eps(f), phi> - <Q_wave(f), phi>| with (1 + f/eps) factors, n = 2
            Returns: SweepReport with series error_weak_form
    '''

    bose = model.replace(statistics='quantum', alpha=1)
    wave = model.replace(statistics='wave', alpha=0)
    reference = weak_form(f, phi, wave, spec.replace(model=wave), quadrature, threads=threads)
    errors = []
    for eps in eps_list:
        scaled = weak_form(f, phi, bose, spec.replace(model=bose), quadrature, coupling=1.0 / eps, threads=threads)
        errors.append(abs(eps * scaled - reference))
        if progress is not None:
            progress.update(1)
    return SweepReport('epsilon', eps_list, {'error_weak_form': errors}, min_order, floor=_floor(reference, rtol=1e-13))

def linear_limit_check(f_pert, phi, model:ModelSpec, spec:KernelSpec, quadrature:QuadratureSpec, eps_list,
                       min_order:float = 0.9, threads:int = 1, progress = None):
    '''
        |eps^-1 <Q(1 + eps f), phi> - <Q_linear(f), phi>| for Maxwell and wave brackets
            Returns: SweepReport with series error_maxwell and error_wave
    '''

    linear = model.replace(statistics='linear', alpha=0)
    maxwell = model.replace(statistics='quantum', alpha=0)
    wave = model.replace(statistics='wave', alpha=0)
    reference = weak_form(f_pert, phi, linear, spec.replace(model=linear), quadrature, threads=threads)

    series = {'error_maxwell': [], 'error_wave': []}
    for eps in eps_list:
        g_eps = AffineDistribution(f_pert, 1.0, eps)
        for name, variant in (('error_maxwell', maxwell), ('error_wave', wave)):
            value = weak_form(g_eps, phi, variant, spec.replace(model=variant), quadrature, threads=threads)
            series[name].append(abs(value / eps - reference))
        if progress is not None:
            progress.update(1)
    return SweepReport('epsilon', eps_list, series, min_order, floor=_floor(reference, rtol=1e-13))

##################################################
#               Expansion Oracles                #
##################################################

def _quad(values, tag, coupling = None):
    return operator_integrand(values[..., 0], values[..., 1], values[..., 2], values[..., 3], tag, coupling)

def semiclassical_expansion_defect(values, alpha:int, hbar:float):
    '''
        |q_hbar - q_0 - hbar alpha q_wave| relative to |q_hbar| + |q_0| + 1
    '''

    values = np.asarray(values, dtype=float)
    q_hbar = _quad(values, 'maxwell', hbar * alpha)
    q_zero = _quad(values, 'maxwell', 0.0)
    defect = q_hbar - q_zero - hbar * alpha * _quad(values, 'wave')
    return np.abs(defect) / (np.abs(q_hbar) + np.abs(q_zero) + 1.0)

def kinetic_expansion_defect(values, eps:float):
    '''
        |eps q_Bose,eps - q_wave - eps q_Maxwell| relative to the terms
    '''

    values = np.asarray(values, dtype=float)
    scaled = eps * _quad(values, 'bose', 1.0 / eps)
    wave = _quad(values, 'wave')
    defect = scaled - wave - eps * _quad(values, 'maxwell')
    return np.abs(defect) / (np.abs(scaled) + np.abs(wave) + 1.0)

def linear_expansion_defect(values, eps:float):
    '''
        |q_Maxwell(1 + eps f) - eps q_linear(f) - eps^2 q_Maxwell(f)| relative to eps
    '''

    values = np.asarray(values, dtype=float)
    shifted = _quad(1.0 + eps * values, 'maxwell')
    defect = shifted - eps * _quad(values, 'linear') - eps**2 * _quad(values, 'maxwell')
    return np.abs(defect) / (np.abs(shifted) + eps)
