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
    boltzmann.py
    Kinetica project, 2026

    Two-body Boltzmann-type collision operators for every statistics and both
    dynamics: discrete gradients, the per-statistics gain-loss brackets, weight triples and
    the compatibility checker (general n), quadrature of the operator, its weak
    form, entropy dissipation and the discrete divergence.
'''

import logging
import math
from concurrent.futures import ThreadPoolExecutor

import numpy as np

from lib.entropy import DissipationPair, DomainError, EntropyModel, logarithmic_mean, statistics_tag
from lib.kernels import KernelSpec, pair_rate
from lib.kinematics import CollisionEvent, lorentz_frame
from lib.model import KineticaError, ModelSpec
from lib.quadrature import (QuadratureSpec, box_rule, check_finite, circle_rule, perpendicular_basis,
                            sample_box, sample_circle, stream, theta_rule)

logger = logging.getLogger(__name__)

# Upper bound on events held in memory at once
EVENT_CHUNK = 200000

class IncompatibilityError(KineticaError):
    '''
        Raised when a weight triple cannot reproduce the bracket of a row
    '''
    pass

##################################################
#               Gain-Loss Brackets               #
##################################################

# (a_0, alpha_0), (a_i, alpha_i), (abar_0, alphabar_0), (abar_i, alphabar_i)
ROW_TABLE = {
    'bose': ((0, 1), (0, 1), (1, 1), (1, 1)),
    'maxwell': ((0, 1), (0, 1), (1, 0), (1, 0)),
    'fermi': ((0, 1), (0, 1), (1, -1), (1, -1)),
    'wave': ((0, 1), (0, 1), (1, 0), (0, 1)),
    'linear': ((0, 1), (1, 0), (1, 0), (1, 0)),
}

class GammaRow:
    '''
        Per-leg parameters of gamma_i(f) = a_i + alpha_i f and gammabar_i(f) = abar_i + alphabar_i f
            Attributes:
                name - row label

                a, alpha, a_bar, alpha_bar - integer arrays of length n
    '''

    __slots__ = ('name', 'a', 'alpha', 'a_bar', 'alpha_bar')

    def __init__(self, a, alpha, a_bar, alpha_bar, name:str = 'custom'):
        self.a = np.asarray(a, dtype=int)
        self.alpha = np.asarray(alpha, dtype=int)
        self.a_bar = np.asarray(a_bar, dtype=int)
        self.alpha_bar = np.asarray(alpha_bar, dtype=int)
        self.name = name

        n = self.a.size
        if n < 2 or any(array.size != n for array in (self.alpha, self.a_bar, self.alpha_bar)):
            raise IncompatibilityError(f'Row {name} needs n >= 2 legs of equal length')
        if not (np.isin(self.a, (0, 1)).all() and np.isin(self.a_bar, (0, 1)).all()):
            raise IncompatibilityError(f'Row {name}: a_i and abar_i must lie in {{0, 1}}')
        if not (np.isin(self.alpha, (-1, 0, 1)).all() and np.isin(self.alpha_bar, (-1, 0, 1)).all()):
            raise IncompatibilityError(f'Row {name}: alpha_i and alphabar_i must lie in {{-1, 0, 1}}')

    def __repr__(self):
        return f'GammaRow({self.name}, n={self.n})'

    @property
    def n(self):
        return self.a.size

    def bracket(self, values):
        '''
            Sum over the transpositions tau_k (0 <-> k) of the gain minus loss products
                Arguments: array (..., 2n) ordered (f_0..f_{n-1}, f_0'..f_{n-1}')
                Returns: array (...)
        '''

        values = np.asarray(values, dtype=float)
        n = self.n
        pre, post = values[..., :n], values[..., n:]
        total = np.zeros(values.shape[:-1])

        # Iterate through the transpositions tau_k
        for k in range(n):
            order = np.arange(n)
            order[0], order[k] = k, 0
            f, fp = pre[..., order], post[..., order]
            gain = np.prod((self.a + self.alpha * fp) * (self.a_bar + self.alpha_bar * f), axis=-1)
            loss = np.prod((self.a_bar + self.alpha_bar * fp) * (self.a + self.alpha * f), axis=-1)
            total = total + gain - loss
        return total

def named_row(name:str, n:int = 2):
    '''
        Row of the model table for a statistics tag and n legs
    '''

    if name not in ROW_TABLE:
        raise IncompatibilityError(f'Unknown row {name!r}; expected one of {tuple(ROW_TABLE)}')
    first, rest, first_bar, rest_bar = ROW_TABLE[name]
    a = [first[0]] + [rest[0]] * (n - 1)
    alpha = [first[1]] + [rest[1]] * (n - 1)
    a_bar = [first_bar[0]] + [rest_bar[0]] * (n - 1)
    alpha_bar = [first_bar[1]] + [rest_bar[1]] * (n - 1)
    return GammaRow(a, alpha, a_bar, alpha_bar, name)

def collision_integrand(f_values, row:GammaRow):
    '''
        Bracket of the two-body operator for a 4-tuple (f, f*, f', f*')
            Arguments: array (..., 4), GammaRow with n = 2
            Returns: sum over tau_0, tau_1 of the gain minus loss products
    '''

    values = np.asarray(f_values, dtype=float)
    if row.n != 2 or values.shape[-1] != 4:
        raise IncompatibilityError('collision_integrand takes n = 2 rows and 4-tuples')
    if np.any(values < 0) or np.any(np.isnan(values)):
        raise DomainError('Collision integrand evaluated at negative or NaN values')
    if np.any(row.alpha_bar < 0) and np.any(values > 1.0):
        raise DomainError('Fermi collision integrand evaluated above 1')
    result = row.bracket(values)
    return result.item() if result.ndim == 0 else result

##################################################
#                 Weight Triples                 #
##################################################

DEFAULT_COUPLING = {'maxwell': 0.0, 'bose': 1.0, 'fermi': -1.0}

class WeightTriple:
    '''
        Admissible (Psi*, Theta, h) triple of one statistics
            Attributes:
                name - triple label

                statistics - statistics tag

                coupling - a in the quantum factors (1 + a f); alpha, or scaled alpha in limits

                dissipation - DissipationPair

                kappa - proportionality constant, fixed by the first compatibility call
    '''

    __slots__ = ('name', 'statistics', 'coupling', 'dissipation', 'kappa')

    def __init__(self, statistics:str, kind:str, coupling:float = None, name:str = None):
        self.statistics = statistics_tag(statistics)
        if self.statistics in ('wave', 'linear') and kind != 'quadratic':
            raise IncompatibilityError(f'{self.statistics} statistics only admit the quadratic potential')
        self.dissipation = DissipationPair(kind)
        if coupling is None:
            coupling = DEFAULT_COUPLING.get(self.statistics, 0.0)
        self.coupling = float(coupling)
        self.name = name if name is not None else f'{self.statistics}-{kind}'
        self.kappa = None

    def __repr__(self):
        return f'WeightTriple({self.name}, a={self.coupling}, kappa={self.kappa})'

    @property
    def kind(self):
        return self.dissipation.kind

    @property
    def quantum(self):
        return self.statistics in DEFAULT_COUPLING

    def gain_loss(self, values):
        '''
            Gain and loss products of the quantum bracket for a 2n-tuple
        '''

        values = np.asarray(values, dtype=float)
        n = values.shape[-1] // 2
        pre, post = values[..., :n], values[..., n:]
        a = self.coupling
        gain = np.prod(post * (1.0 + a * pre), axis=-1)
        loss = np.prod(pre * (1.0 + a * post), axis=-1)
        return gain, loss

    def theta(self, values):
        '''
            Weight Theta(f) of a 2n-tuple
        '''

        values = np.asarray(values, dtype=float)
        if self.quantum:
            gain, loss = self.gain_loss(values)
            if self.kind == 'cosh':
                return np.sqrt(gain * loss)
            return logarithmic_mean(gain, loss)
        if self.statistics == 'wave':
            return np.prod(values, axis=-1)
        return np.ones(values.shape[:-1])

    def dh(self, values):
        '''
            Entropy variation h'(f) matching the coupling of the triple
        '''

        f = np.asarray(values, dtype=float)
        with np.errstate(divide='ignore', invalid='ignore'):
            if self.quantum:
                return np.log(f) - np.log1p(self.coupling * f)
            if self.statistics == 'wave':
                return -1.0 / f
        return f

    def psi_star_prime(self, r):
        return self.dissipation.psi_star_prime(r)

    def psi_star(self, r):
        return self.dissipation.psi_star(r)

TRIPLES = ('maxwell-cosh', 'maxwell-logmean', 'bose-cosh', 'bose-logmean', 'fermi-cosh', 'fermi-logmean',
           'wave-quadratic', 'linear-quadratic')

def named_triple(name:str):
    '''
        Builds a weight triple by name, e.g. 'maxwell-cosh' or 'wave-quadratic'
    '''

    if name not in TRIPLES:
        raise IncompatibilityError(f'Unknown triple {name!r}; expected one of {TRIPLES}')
    statistics, kind = name.split('-')
    return WeightTriple(statistics, 'cosh' if kind == 'cosh' else 'quadratic', name=name)

def default_triple(statistics, coupling:float = None):
    '''
        Triple used by the operators: cosh for quantum statistics, quadratic otherwise
    '''

    tag = statistics_tag(statistics)
    return WeightTriple(tag, 'cosh' if tag in DEFAULT_COUPLING else 'quadratic', coupling)

##################################################
#            Gradients and Integrands            #
##################################################

def free_gradient(xi_values):
    '''
        Free discrete gradient sum_i xi(f_i') - xi(f_i) of a 2n-tuple of values
    '''

    xi_values = np.asarray(xi_values, dtype=float)
    n = xi_values.shape[-1] // 2
    return np.sum(xi_values[..., n:], axis=-1) - np.sum(xi_values[..., :n], axis=-1)

def discrete_gradient(phi, event:CollisionEvent):
    '''
        phi' + phi*' - phi - phi* on the momenta of an event
            Arguments: Field or callable of p, CollisionEvent
            Returns: scalar or array over stacked events
    '''

    value = phi.value if hasattr(phi, 'value') else phi
    result = value(event.p_out) + value(event.ps_out) - value(event.p) - value(event.ps)
    return result.item() if np.ndim(result) == 0 else result

def operator_integrand(f, fs, fp, fsp, statistics, coupling:float = None):
    '''
        Integrand q of the two-body operator
            Arguments: values of f at p, p*, p', p*'; statistics tag or ModelSpec;
                       quantum coupling a in (1 + a f) (defaults to alpha)
            Returns: q, with q = Theta (Psi*)'(grad h'(f)) for the statistics' triple
    '''

    tag = statistics_tag(statistics)
    f, fs, fp, fsp = (np.asarray(x, dtype=float) for x in (f, fs, fp, fsp))

    if tag in DEFAULT_COUPLING:
        a = DEFAULT_COUPLING[tag] if coupling is None else coupling
        return fp * fsp * (1.0 + a * f) * (1.0 + a * fs) - f * fs * (1.0 + a * fp) * (1.0 + a * fsp)
    if tag == 'wave':
        return fp * fsp * (f + fs) - f * fs * (fp + fsp)
    return fp + fsp - f - fs

##################################################
#                Compatibility                   #
##################################################

def compatibility_residual(f_tuple, row:GammaRow, triple:WeightTriple):
    '''
        Compares R = sum_k bracket(tau_k) with L = n (Psi*)'(grad h'(f)) Theta(f)
            Arguments: 2n values strictly inside the domain, GammaRow, WeightTriple
            Returns: tuple (residual, kappa); the first call with L != 0 calibrates kappa = R/L
    '''

    values = np.asarray(f_tuple, dtype=float)
    n = row.n
    if values.shape != (2 * n,):
        raise IncompatibilityError(f'Expected {2 * n} values for row {row.name}, got {values.shape}')
    if np.any(values <= 0):
        raise DomainError('Compatibility tuples must lie strictly inside the domain')

    R = float(row.bracket(values))
    L = float(n * triple.psi_star_prime(free_gradient(triple.dh(values))) * triple.theta(values))

    if L == 0.0:
        if R != 0.0:
            raise IncompatibilityError(f'{triple.name} gives L = 0 where {row.name} gives R = {R}')
        return 0.0, triple.kappa

    if triple.kappa is None:
        triple.kappa = R / L
        logger.debug('Calibrated kappa = %.12g for %s against %s', triple.kappa, triple.name, row.name)

    residual = abs(R - triple.kappa * L) / (abs(R) + abs(L) + 1.0)
    return residual, triple.kappa

def random_tuples(rng, count:int, n:int, statistics:str):
    '''
        Random 2n-tuples inside the domain of the statistics
    '''

    if statistics_tag(statistics) == 'fermi':
        return rng.uniform(0.05, 0.95, size=(count, 2 * n))
    return rng.uniform(0.1, 5.0, size=(count, 2 * n))

def compatibility_sweep(row:GammaRow, triple:WeightTriple, samples:int = 1000, seed:int = 0):
    '''
        Calibrates kappa on one random tuple and records residuals on the rest
            Returns: dict with kappa, max residual and max kappa deviation
    '''

    rng = stream(seed, 0)
    tuples = random_tuples(rng, samples + 1, row.n, triple.statistics)
    triple.kappa = None
    compatibility_residual(tuples[0], row, triple)

    residuals, deviations = [], []
    # Iterate through the remaining tuples
    for values in tuples[1:]:
        residual, kappa = compatibility_residual(values, row, triple)
        residuals.append(residual)
        R = float(row.bracket(values))
        L = float(row.n * triple.psi_star_prime(free_gradient(triple.dh(values))) * triple.theta(values))
        deviations.append(abs(R / L - kappa) if L else 0.0)

    return {'row': row.name, 'triple': triple.name, 'n': row.n, 'kappa': triple.kappa,
            'max_residual': max(residuals), 'max_kappa_deviation': max(deviations)}

##################################################
#                 Event Generation               #
##################################################

class EventBatch:
    '''
        Flattened collision events with their quadrature weights
            Attributes:
                event - CollisionEvent over all rows

                weight - product of p*, angular (beta folded in) and circle weights

                rate - pair factor sigma or v_c sigma^c

                source - index of the p* node (deterministic) or sample (Monte Carlo)
    '''

    __slots__ = ('event', 'weight', 'rate', 'source')

    def __init__(self, event:CollisionEvent, weight, rate, source):
        self.event = event
        self.weight = weight
        self.rate = rate
        self.source = source

    def __len__(self):
        return self.weight.size

    @property
    def theta(self):
        return self.event.theta

class CollisionRule:
    '''
        Generates the events of the omega, p* integrals around the pair axis:
        omega = k cos(theta) + gamma sin(theta) with gamma on the circle orthogonal to k
            Attributes:
                model, spec, quadrature - the operator being discretized

                nodes, weights - p* rule (box rule unless given)

                theta, theta_weights - angular rule with beta folded into the weights

                gamma, gamma_weights - circle rule in perpendicular-basis coordinates
    '''

    def __init__(self, model:ModelSpec, spec:KernelSpec, quadrature:QuadratureSpec, nodes = None, weights = None):
        self.model = model
        self.spec = spec
        self.quadrature = quadrature

        self.theta, self.theta_weights = theta_rule(spec.angular, quadrature)
        self.gamma, self.gamma_weights = circle_rule(model.d, quadrature)
        if nodes is None:
            nodes, weights = box_rule(quadrature, model.d)
        self.nodes = np.asarray(nodes, dtype=float)
        self.weights = np.asarray(weights, dtype=float)
        if self.nodes.shape[0] == 0 or self.theta.size == 0:
            raise KineticaError('Collision quadrature has an empty budget')

        per_node = self.theta.size * self.gamma_weights.size
        self.chunk = max(1, EVENT_CHUNK // per_node)
        logger.debug('Collision rule: %d p* nodes x %d angles x %d circle nodes', self.nodes.shape[0],
                     self.theta.size, self.gamma_weights.size)

    def axis(self, p, ps):
        '''
            Pair axis k, (p - p*)/|p - p*| or k_hat; an arbitrary unit vector on the diagonal
        '''

        if self.model.relativistic:
            k = lorentz_frame(np.broadcast_to(p, ps.shape), ps, self.model.constants).k_hat
        else:
            diff = p - ps
            norm = np.linalg.norm(diff, axis=-1, keepdims=True)
            with np.errstate(divide='ignore', invalid='ignore'):
                k = diff / norm
        bad = ~np.all(np.isfinite(k), axis=-1)
        if np.any(bad):
            k = np.where(bad[:, None], np.eye(ps.shape[-1])[0], k)
        return k

    def _build(self, p, ps, ps_weights, source, gamma, gamma_weights, shared:bool):
        count, d = ps.shape
        n_theta = self.theta.size
        k = self.axis(p, ps)
        basis = perpendicular_basis(k)

        if shared:
            perp = np.einsum('pij,gj->pgi', basis, gamma)
            n_gamma = gamma.shape[0]
            weight = ps_weights[:, None, None] * self.theta_weights[None, :, None] * gamma_weights[None, None, :]
        else:
            perp = np.einsum('pij,pj->pi', basis, gamma)[:, None, :]
            n_gamma = 1
            weight = (ps_weights * gamma_weights)[:, None, None] * self.theta_weights[None, :, None]

        cos_t = np.cos(self.theta)[None, :, None, None]
        sin_t = np.sin(self.theta)[None, :, None, None]
        omega = k[:, None, None, :] * cos_t + perp[:, None, :, :] * sin_t
        omega = omega.reshape(-1, d)

        repeat = n_theta * n_gamma
        ps_rep = np.repeat(ps, repeat, axis=0)
        p_rep = np.broadcast_to(np.asarray(p, dtype=float), ps_rep.shape)
        event = CollisionEvent(p_rep, ps_rep, omega, self.model)
        rate = np.repeat(pair_rate(np.broadcast_to(p, ps.shape), ps, self.spec), repeat)
        return EventBatch(event, weight.ravel(), rate, np.repeat(source, repeat))

    def batches(self, p, nodes = None, weights = None):
        '''
            Deterministic event batches for output momentum p
        '''

        nodes = self.nodes if nodes is None else nodes
        weights = self.weights if weights is None else weights
        p = np.asarray(p, dtype=float)
        for start in range(0, nodes.shape[0], self.chunk):
            stop = min(start + self.chunk, nodes.shape[0])
            yield self._build(p, nodes[start:stop], weights[start:stop], np.arange(start, stop),
                              self.gamma, self.gamma_weights, shared=True)

    def sample_batches(self, p, rng, samples:int):
        '''
            Monte Carlo batches: uniform p* in the box and a random circle point per sample
        '''

        d = self.model.d
        p = np.asarray(p, dtype=float)
        volume = (2.0 * self.quadrature.halfwidth) ** d
        chunk = max(1, EVENT_CHUNK // self.theta.size)
        for start in range(0, samples, chunk):
            size = min(chunk, samples - start)
            ps, _ = sample_box(rng, size, self.quadrature, d)
            gamma, gamma_weights = sample_circle(rng, size, d)
            yield self._build(p, ps, np.full(size, volume / samples), np.arange(start, start + size),
                              gamma, gamma_weights, shared=False)

def _values(f, batch:EventBatch, f_p = None):
    event = batch.event
    f_p = f.value(event.p) if f_p is None else np.broadcast_to(f_p, batch.weight.shape)
    return f_p, f.value(event.ps), f.value(event.p_out), f.value(event.ps_out)

def _diagnostics(batch:EventBatch):
    event = batch.event
    return {'p': event.p, 'ps': event.ps, 'p_out': event.p_out, 'ps_out': event.ps_out, 'theta': event.theta}

##################################################
#               Operator Evaluation              #
##################################################

def _q_sum(f, p, rule:CollisionRule, statistics, coupling):
    f_p = float(f.value(p))
    total = 0.0
    for batch in rule.batches(p):
        q = operator_integrand(*_values(f, batch, f_p), statistics, coupling)
        contribution = batch.weight * batch.rate * q
        check_finite(contribution, _diagnostics(batch), 'collision integrand')
        total += float(np.sum(contribution))
    return total

def _q_monte_carlo(f, p, rule:CollisionRule, statistics, coupling, counter:int):
    samples = rule.quadrature.mc_samples
    rng = stream(rule.quadrature.seed, counter)
    f_p = float(f.value(p))
    per_sample = np.zeros(samples)
    for batch in rule.sample_batches(p, rng, samples):
        q = operator_integrand(*_values(f, batch, f_p), statistics, coupling)
        contribution = batch.weight * batch.rate * q
        check_finite(contribution, _diagnostics(batch), 'collision integrand')
        per_sample += np.bincount(batch.source, weights=contribution, minlength=samples)

    estimates = per_sample * samples
    mean = float(np.mean(estimates))
    error = float(np.std(estimates, ddof=1) / math.sqrt(samples)) if samples > 1 else math.inf
    return mean, error

def evaluate_Q(f, p, model:ModelSpec, spec:KernelSpec, quadrature:QuadratureSpec, coupling:float = None,
               rule:CollisionRule = None, counter:int = 0):
    '''
        Collision operator Q(f)(p) = integral of kernel * q over omega and p*
            Arguments: Distribution, momentum p, ModelSpec, KernelSpec, QuadratureSpec,
                       optional quantum coupling, prebuilt CollisionRule, Monte Carlo counter
            Returns: Q(f)(p); the Monte Carlo estimate when quadrature.method is montecarlo
    '''

    rule = rule if rule is not None else CollisionRule(model, spec, quadrature)
    if quadrature.method == 'montecarlo':
        return _q_monte_carlo(f, p, rule, model, coupling, counter)[0]
    return _q_sum(f, p, rule, model, coupling)

def evaluate_Q_mc(f, p, model:ModelSpec, spec:KernelSpec, quadrature:QuadratureSpec, coupling:float = None,
                  counter:int = 0):
    '''
        Monte Carlo estimate of Q(f)(p)
            Returns: tuple (mean, standard error)
    '''

    rule = CollisionRule(model, spec, quadrature)
    return _q_monte_carlo(f, p, rule, model, coupling, counter)

def parallel_map(function, count:int, threads:int = 1):
    '''
        Applies function to range(count); results ordered by index for any thread count
    '''

    if threads <= 1 or count <= 1:
        return [function(index) for index in range(count)]
    with ThreadPoolExecutor(max_workers=threads) as pool:
        return list(pool.map(function, range(count)))

def evaluate_Q_grid(f, nodes, model:ModelSpec, spec:KernelSpec, quadrature:QuadratureSpec, threads:int = 1,
                    coupling:float = None, rule:CollisionRule = None):
    '''
        Q(f) on many output momenta, parallel over nodes
            Arguments: Distribution, array (m, d) of output momenta, ModelSpec, KernelSpec,
                       QuadratureSpec, thread count, optional coupling and CollisionRule
            Returns: tuple (values, standard errors); errors are zero for deterministic rules
    '''

    nodes = np.asarray(nodes, dtype=float).reshape(-1, model.d)
    rule = rule if rule is not None else CollisionRule(model, spec, quadrature)

    def node_value(index):
        if quadrature.method == 'montecarlo':
            return _q_monte_carlo(f, nodes[index], rule, model, coupling, index)
        return _q_sum(f, nodes[index], rule, model, coupling), 0.0

    results = parallel_map(node_value, nodes.shape[0], threads)
    return np.array([r[0] for r in results]), np.array([r[1] for r in results])

##################################################
#          Weak Forms and Dissipation            #
##################################################

def _pair_sum(f, model, spec, quadrature, event_term, threads:int = 1):
    '''
        Double sum over output nodes p and events (p*, theta, gamma) of weight * rate * term
    '''

    rule = CollisionRule(model, spec, quadrature)
    nodes, weights = rule.nodes, rule.weights

    def node_total(index):
        p = nodes[index]
        total = 0.0
        for batch in rule.batches(p):
            values = _values(f, batch)
            contribution = batch.weight * batch.rate * event_term(values, batch)
            check_finite(contribution, _diagnostics(batch), 'weak form')
            total += float(np.sum(contribution))
        return weights[index] * total

    return math.fsum(parallel_map(node_total, nodes.shape[0], threads))

def weak_form(f, phi, model:ModelSpec, spec:KernelSpec, quadrature:QuadratureSpec, coupling:float = None,
              threads:int = 1):
    '''
        Weak form <Q(f), phi> = -1/4 sum of kernel * q * grad phi over the symmetric event measure
            Arguments: Distribution, Field phi, ModelSpec, KernelSpec, QuadratureSpec
            Returns: scalar; collision invariants give zeros up to roundoff
    '''

    def term(values, batch):
        return operator_integrand(*values, model, coupling) * discrete_gradient(phi, batch.event)

    return -0.25 * _pair_sum(f, model, spec, quadrature, term, threads)

def weak_form_scale(f, model:ModelSpec, spec:KernelSpec, quadrature:QuadratureSpec, coupling:float = None,
                    threads:int = 1):
    '''
        Reference magnitude 1/4 sum of kernel * |q| used to judge weak-form zeros
    '''

    def term(values, batch):
        return np.abs(operator_integrand(*values, model, coupling))

    return 0.25 * _pair_sum(f, model, spec, quadrature, term, threads)

def _clipped_dh(values, entropy_model:EntropyModel):
    clipped = [entropy_model.clip(v) for v in values]
    dh = [entropy_model.dh(v) for v in clipped]
    for v in dh:
        if not np.all(np.isfinite(v)):
            raise DomainError(f"h'(f) is not finite on the sample for {entropy_model}")
    return clipped, dh

def entropy_dissipation(f, model:ModelSpec, spec:KernelSpec, quadrature:QuadratureSpec, threads:int = 1):
    '''
        D(f) = 1/4 sum of kernel * Theta(f) * r (Psi*)'(r) with r = grad h'(f)
            Returns: nonnegative scalar
    '''

    entropy_model = EntropyModel(model)
    triple = default_triple(model)

    def term(values, batch):
        clipped, dh = _clipped_dh(values, entropy_model)
        r = dh[2] + dh[3] - dh[0] - dh[1]
        theta = triple.theta(np.stack(clipped, axis=-1))
        return theta * r * triple.psi_star_prime(r)

    return 0.25 * _pair_sum(f, model, spec, quadrature, term, threads)

def dissipation_potential(f, v, model:ModelSpec, spec:KernelSpec, quadrature:QuadratureSpec,
                          triple:WeightTriple = None, threads:int = 1):
    '''
        R*(f, v) = 1/4 sum of kernel * Theta(f) * Psi*(grad v)
    '''

    triple = triple if triple is not None else default_triple(model)
    entropy_model = EntropyModel(model)

    def term(values, batch):
        clipped = [entropy_model.clip(x) for x in values]
        return triple.theta(np.stack(clipped, axis=-1)) * triple.psi_star(discrete_gradient(v, batch.event))

    return 0.25 * _pair_sum(f, model, spec, quadrature, term, threads)

def strong_pairing(f, phi, model:ModelSpec, spec:KernelSpec, quadrature:QuadratureSpec, coupling:float = None,
                   threads:int = 1):
    '''
        sum over box nodes of w_p Q(f)(p) phi(p), the strong-form counterpart of weak_form
    '''

    nodes, weights = box_rule(quadrature, model.d)
    values, _ = evaluate_Q_grid(f, nodes, model, spec, quadrature, threads, coupling)
    return float(np.sum(weights * values * phi.value(nodes)))

##################################################
#          Divergence and Dissipation Derivative #
##################################################

def discrete_divergence(G, p, model:ModelSpec, spec:KernelSpec, quadrature:QuadratureSpec, rule:CollisionRule = None):
    '''
        Discrete divergence of a tuple field G at p:
        integral of G(p,p*,p',p*') + G(p*,p,p*',p') - J (G(p',p*',p,p*) + G(p*',p',p*,p))
            Arguments: callable G(p, ps, p_out, ps_out) evaluated without the angular factor b,
                       which the angular rule carries; momentum p; model, kernel and quadrature
            Returns: scalar
    '''

    rule = rule if rule is not None else CollisionRule(model, spec, quadrature)
    total = 0.0
    for batch in rule.batches(p):
        event = batch.event
        a, b, c, e = event.p, event.ps, event.p_out, event.ps_out
        values = G(a, b, c, e) + G(b, a, e, c) - event.jacobian() * (G(c, e, a, b) + G(e, c, b, a))
        contribution = batch.weight * values
        check_finite(contribution, _diagnostics(batch), 'discrete divergence')
        total += float(np.sum(contribution))
    return total

def generalized_dissipation_derivative(f, xi, model:ModelSpec, spec:KernelSpec, quadrature:QuadratureSpec,
                                       triple:WeightTriple = None):
    '''
        p -> -(1/2n) dR*(f, xi) with dR*(f, xi) = -div(kernel Theta(f) (Psi*)'(grad xi)), n = 2
            Arguments: Distribution, Field xi, ModelSpec, KernelSpec, QuadratureSpec, optional triple
            Returns: callable of p; at xi = h'(f) it reproduces Q(f)
    '''

    triple = triple if triple is not None else default_triple(model)
    rule = CollisionRule(model, spec, quadrature)
    entropy_model = EntropyModel(model)

    def G(a, b, c, e):
        values = np.stack([entropy_model.clip(f.value(x)) for x in (a, b, c, e)], axis=-1)
        gradient = xi.value(c) + xi.value(e) - xi.value(a) - xi.value(b)
        return pair_rate(a, b, spec) * triple.theta(values) * triple.psi_star_prime(gradient)

    def derivative(p):
        return discrete_divergence(G, p, model, spec, quadrature, rule) / 4.0

    return derivative
