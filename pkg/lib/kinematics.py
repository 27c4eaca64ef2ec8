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
    kinematics.py
    Kinetica project, 2026

    Energies, post-collision parametrizations, the centre-of-mass Lorentz frame,
    scattering angles and the projection matrices of the Landau operators.
    Every function accepts single vectors of shape (d,) or stacks of shape (..., d).
'''

import numpy as np

from lib.model import KineticaError, ModelSpec, PhysicalConstants
from lib.quadrature import stream

class SingularPairError(KineticaError):
    '''
        Raised when an operation needs p != p*
    '''
    pass

class UndefinedAngleError(KineticaError):
    '''
        Raised when the scattering angle of a pair with zero relative momentum is requested
    '''
    pass

def _dot(a, b):
    return np.sum(a * b, axis=-1)

def _outer(a, b):
    return a[..., :, None] * b[..., None, :]

##################################################
#                    Energies                    #
##################################################

def rest_momentum(constants:PhysicalConstants):
    return constants.m * constants.c

def p_zero(p, constants:PhysicalConstants):
    '''
        Time component p0 = sqrt((mc)^2 + |p|^2) of the energy-momentum vector
    '''

    p = np.asarray(p, dtype=float)
    return np.sqrt(rest_momentum(constants) ** 2 + _dot(p, p))

def energy(p, model:ModelSpec):
    '''
        Particle energy: |p|^2/(2m) (classical) or c p0 (relativistic)
    '''

    p = np.asarray(p, dtype=float)
    if model.relativistic:
        return model.constants.c * p_zero(p, model.constants)
    return _dot(p, p) / (2.0 * model.constants.m)

def transport_velocity(p, model:ModelSpec):
    '''
        Gradient of the energy: p/m (classical) or c p/p0 (relativistic)
    '''

    p = np.asarray(p, dtype=float)
    if model.relativistic:
        return model.constants.c * p / p_zero(p, model.constants)[..., None]
    return p / model.constants.m

def energy_gradient(p, model:ModelSpec):
    return transport_velocity(p, model)

##################################################
#               Classical Collisions             #
##################################################

def classical_post_collision(p, ps, omega):
    '''
        Post-collision momenta of the classical parametrization
            Arguments: incoming momenta p, p* and unit vector omega
            Returns: tuple (p', p*')
    '''

    p = np.asarray(p, dtype=float)
    ps = np.asarray(ps, dtype=float)
    omega = np.asarray(omega, dtype=float)

    centre = 0.5 * (p + ps)
    radius = 0.5 * np.linalg.norm(p - ps, axis=-1)[..., None]
    return centre + radius * omega, centre - radius * omega

##################################################
#                 Lorentz Frame                  #
##################################################

class LorentzFrame:
    '''
        Centre-of-mass frame of a relativistic pair
            Attributes:
                s - centre-of-mass energy squared

                g - relative momentum, s = 4(mc)^2 + g^2

                v - boost velocity (p + p*)/(p0 + p0*)

                rho - Lorentz factor, 1 - |v|^2 = rho^-2

                Lambda, Lambda_inv - (d+1)x(d+1) boost and inverse

                Lambda_tilde - spatial d x d block

                k_hat - unit relative direction in the centre-of-mass frame (NaN if g = 0)

                p0, ps0 - time components of the incoming pair
    '''

    __slots__ = ('s', 'g', 'v', 'rho', 'Lambda', 'Lambda_inv', 'Lambda_tilde', 'k_hat', 'p0', 'ps0')

    def __init__(self, s, g, v, rho, Lambda, Lambda_inv, Lambda_tilde, k_hat, p0, ps0):
        self.s = s
        self.g = g
        self.v = v
        self.rho = rho
        self.Lambda = Lambda
        self.Lambda_inv = Lambda_inv
        self.Lambda_tilde = Lambda_tilde
        self.k_hat = k_hat
        self.p0 = p0
        self.ps0 = ps0

    @property
    def defined(self):
        '''
            True where k_hat is defined (g > 0)
        '''
        return np.asarray(self.g) > 0

    def boost(self, p4):
        '''
            Applies Lambda to (d+1)-vectors
        '''
        return np.einsum('...ij,...j->...i', self.Lambda, np.asarray(p4, dtype=float))

    def unboost(self, p4):
        '''
            Applies Lambda^-1 to (d+1)-vectors
        '''
        return np.einsum('...ij,...j->...i', self.Lambda_inv, np.asarray(p4, dtype=float))

def four_vector(p, constants:PhysicalConstants):
    '''
        Energy-momentum vector (p0, p)
    '''

    p = np.asarray(p, dtype=float)
    return np.concatenate([p_zero(p, constants)[..., None], p], axis=-1)

def mandelstam(p, ps, constants:PhysicalConstants):
    '''
        Centre-of-mass invariants of a pair
            Returns: tuple (s, g, p0, ps0)
    '''

    p = np.asarray(p, dtype=float)
    ps = np.asarray(ps, dtype=float)
    p0 = p_zero(p, constants)
    ps0 = p_zero(ps, constants)

    # p0 - ps0 written without cancellation
    energy_gap = (_dot(p, p) - _dot(ps, ps)) / (p0 + ps0)
    diff = p - ps
    g2 = np.maximum(_dot(diff, diff) - energy_gap**2, 0.0)
    s = 4.0 * rest_momentum(constants) ** 2 + g2
    return s, np.sqrt(g2), p0, ps0

def lorentz_frame(p, ps, constants:PhysicalConstants):
    '''
        Builds the centre-of-mass LorentzFrame of the pair (p, p*)
            Arguments: momenta p, p* of shape (..., d), PhysicalConstants
            Returns: LorentzFrame (array valued for stacked inputs)
    '''

    p = np.asarray(p, dtype=float)
    ps = np.asarray(ps, dtype=float)
    d = p.shape[-1]

    s, g, p0, ps0 = mandelstam(p, ps, constants)
    total = p + ps
    v = total / (p0 + ps0)[..., None]
    rho = (p0 + ps0) / np.sqrt(s)

    # (rho - 1)/|v|^2 = rho^2/(rho + 1), smooth through v = 0
    coefficient = rho**2 / (rho + 1.0)
    Lambda_tilde = np.eye(d) + coefficient[..., None, None] * _outer(v, v)

    shape = p.shape[:-1] + (d + 1, d + 1)
    Lambda = np.empty(shape)
    Lambda[..., 0, 0] = rho
    Lambda[..., 0, 1:] = -rho[..., None] * v
    Lambda[..., 1:, 0] = -rho[..., None] * v
    Lambda[..., 1:, 1:] = Lambda_tilde
    Lambda_inv = Lambda.copy()
    Lambda_inv[..., 0, 1:] *= -1.0
    Lambda_inv[..., 1:, 0] *= -1.0

    # Boosted p is (sqrt(s)/2, g k_hat/2)
    p_tilde = np.einsum('...ij,...j->...i', Lambda_tilde, p) - rho[..., None] * v * p0[..., None]
    norm = np.linalg.norm(p_tilde, axis=-1)
    with np.errstate(divide='ignore', invalid='ignore'):
        k_hat = np.where((g > 0)[..., None], p_tilde / norm[..., None], np.nan)

    return LorentzFrame(s, g, v, rho, Lambda, Lambda_inv, Lambda_tilde, k_hat, p0, ps0)

def relativistic_post_collision(p, ps, omega, constants:PhysicalConstants, frame:LorentzFrame = None):
    '''
        Post-collision momenta and energies of the relativistic parametrization
            Arguments: incoming momenta, unit vector omega, PhysicalConstants, optional precomputed frame
            Returns: tuple (p', p*', p0', p0*')
    '''

    p = np.asarray(p, dtype=float)
    ps = np.asarray(ps, dtype=float)
    omega = np.asarray(omega, dtype=float)
    if frame is None:
        frame = lorentz_frame(p, ps, constants)

    half_g = 0.5 * frame.g
    total = p + ps
    spread = half_g[..., None] * np.einsum('...ij,...j->...i', frame.Lambda_tilde, omega)
    centre0 = 0.5 * (frame.p0 + frame.ps0)
    spread0 = half_g * _dot(total, omega) / np.sqrt(frame.s)

    return 0.5 * total + spread, 0.5 * total - spread, centre0 + spread0, centre0 - spread0

##################################################
#                Collision Events                #
##################################################

class CollisionEvent:
    '''
        One collision (or a stack of collisions) with its post-collision state
            Attributes:
                p, ps - incoming momenta

                omega - parametrization vector on S^{d-1}

                p_out, ps_out - outgoing momenta

                theta - scattering angle (theta or relativistic theta hat)

                model - ModelSpec used for the parametrization

                frame - LorentzFrame for relativistic events, else None

                p0_out, ps0_out - outgoing time components (relativistic only)
    '''

    __slots__ = ('p', 'ps', 'omega', 'p_out', 'ps_out', 'theta', 'model', 'frame', 'p0_out', 'ps0_out')

    def __init__(self, p, ps, omega, model:ModelSpec, frame:LorentzFrame = None):
        self.p = np.asarray(p, dtype=float)
        self.ps = np.asarray(ps, dtype=float)
        self.omega = np.asarray(omega, dtype=float)
        self.model = model
        self.frame = None
        self.p0_out = None
        self.ps0_out = None

        if model.relativistic:
            self.frame = frame if frame is not None else lorentz_frame(self.p, self.ps, model.constants)
            self.p_out, self.ps_out, self.p0_out, self.ps0_out = relativistic_post_collision(
                self.p, self.ps, self.omega, model.constants, self.frame)
        else:
            self.p_out, self.ps_out = classical_post_collision(self.p, self.ps, self.omega)

        self.theta = _event_angle(self)

    def momenta(self):
        '''
            Returns: tuple (p, p*, p', p*')
        '''
        return self.p, self.ps, self.p_out, self.ps_out

    def energy_defect(self):
        '''
            Relative energy defect e + e* - e' - e*'
        '''

        e_in = energy(self.p, self.model) + energy(self.ps, self.model)
        e_out = energy(self.p_out, self.model) + energy(self.ps_out, self.model)
        return np.abs(e_in - e_out) / np.maximum(np.abs(e_in), 1e-300)

    def jacobian(self):
        '''
            Jacobian p0' p0*'/(p0 p0*) of (p', p*') -> (p, p*); 1 classically
        '''

        if not self.model.relativistic:
            return np.ones(self.p.shape[:-1])
        return self.p0_out * self.ps0_out / (self.frame.p0 * self.frame.ps0)

def collision_event(p, ps, omega, model:ModelSpec):
    return CollisionEvent(p, ps, omega, model)

def _event_angle(event:CollisionEvent):
    diff = event.p - event.ps
    with np.errstate(divide='ignore', invalid='ignore'):
        if event.model.relativistic:
            frame = event.frame
            g2 = frame.g**2
            # Spatial-positive Minkowski pairing of the differences, equal to g^2 k_hat . omega
            pairing = (_dot(diff, event.p_out - event.ps_out)
                       - (frame.p0 - frame.ps0) * (event.p0_out - event.ps0_out))
            cosine = pairing / g2
        else:
            cosine = _dot(diff, event.omega) / np.linalg.norm(diff, axis=-1)
    return np.arccos(np.clip(cosine, -1.0, 1.0))

def scattering_angle(event:CollisionEvent):
    '''
        Scattering angle of an event: arccos of the normalized pairing of relative momenta
            Arguments: CollisionEvent
            Returns: angle folded to [0, pi/2]; theta and pi - theta exchange p' and p*'
    '''

    if np.any(np.isnan(event.theta)):
        raise UndefinedAngleError('Scattering angle undefined for p = p*')
    return np.minimum(event.theta, np.pi - event.theta)

def scattering_angle_from_axis(event:CollisionEvent):
    '''
        arccos(k . omega) with k the pair axis (k_hat relativistically)
    '''

    if event.model.relativistic:
        k = event.frame.k_hat
    else:
        diff = event.p - event.ps
        k = diff / np.linalg.norm(diff, axis=-1, keepdims=True)
    return np.arccos(np.clip(_dot(k, event.omega), -1.0, 1.0))

##################################################
#               Landau Projections               #
##################################################

def landau_projection(p, ps):
    '''
        Orthogonal projection onto (p - p*)-perp
            Arguments: momenta p, p*
            Returns: d x d matrix (stacked for stacked inputs)
    '''

    diff = np.asarray(p, dtype=float) - np.asarray(ps, dtype=float)
    norm = np.linalg.norm(diff, axis=-1)
    if np.any(norm == 0):
        raise SingularPairError('Landau projection undefined for p = p*')
    u = diff / norm[..., None]
    return np.eye(diff.shape[-1]) - _outer(u, u)

def axis_projection(k):
    '''
        Projection I - k k for unit vectors k
    '''

    k = np.asarray(k, dtype=float)
    return np.eye(k.shape[-1]) - _outer(k, k)

def relativistic_projection(p, ps, constants:PhysicalConstants):
    '''
        Closed-form projection S(p, p*) of the relativistic Landau operators
            Arguments: momenta p, p*, PhysicalConstants
            Returns: symmetric positive semidefinite d x d matrix
    '''

    p = np.asarray(p, dtype=float)
    ps = np.asarray(ps, dtype=float)
    s, g, p0, ps0 = mandelstam(p, ps, constants)
    if np.any(g == 0):
        raise SingularPairError('Relativistic projection undefined for p = p*')

    mc2 = rest_momentum(constants) ** 2
    P = p0 * ps0 - _dot(p, ps)
    # P^2 - (mc)^4 = (P - (mc)^2)(P + (mc)^2) = g^2 s/4
    denominator = 0.25 * g**2 * s
    d = p.shape[-1]
    numerator = (denominator[..., None, None] * np.eye(d)
                 - mc2 * (_outer(p, p) + _outer(ps, ps))
                 + P[..., None, None] * (_outer(p, ps) + _outer(ps, p)))
    return numerator / denominator[..., None, None]

def boosted_projection(p, ps, constants:PhysicalConstants):
    '''
        Lambda_tilde^T Pi_{k_hat-perp} Lambda_tilde, the frame form of S(p, p*)
    '''

    frame = lorentz_frame(p, ps, constants)
    if np.any(~frame.defined):
        raise SingularPairError('Relativistic projection undefined for p = p*')
    Lt = frame.Lambda_tilde
    return np.einsum('...ji,...jk,...kl->...il', Lt, axis_projection(frame.k_hat), Lt)

##################################################
#                  Lorentz Audit                 #
##################################################

def _relative(a, b):
    scale = np.maximum(np.abs(b), 1.0)
    return float(np.max(np.abs(a - b) / scale))

def lorentz_audit(constants:PhysicalConstants, d:int, samples:int = 10000, seed:int = 0):
    '''
        Defects of the frame construction and the relativistic parametrization on random pairs
            Arguments: PhysicalConstants, dimension, number of pairs, seed
            Returns: dict of maximum defects: inverse, boost_time, boost_space, momentum, energy,
                     on_shell, angle (cosines of the two angle definitions) and projection
    '''

    rng = stream(seed, 1000 * d + samples % 1000)
    scale = 2.0 * rest_momentum(constants)
    p = scale * rng.standard_normal((samples, d))
    ps = scale * rng.standard_normal((samples, d))
    omega = rng.standard_normal((samples, d))
    omega /= np.linalg.norm(omega, axis=-1, keepdims=True)

    frame = lorentz_frame(p, ps, constants)
    eye = np.eye(d + 1)
    inverse = float(np.max(np.abs(np.einsum('nij,njk->nik', frame.Lambda, frame.Lambda_inv) - eye)))

    boosted = frame.boost(four_vector(p, constants))
    boosted_s = frame.boost(four_vector(ps, constants))
    half_root_s = 0.5 * np.sqrt(frame.s)
    half_g = 0.5 * frame.g[:, None] * frame.k_hat
    boost_time = max(_relative(boosted[:, 0], half_root_s), _relative(boosted_s[:, 0], half_root_s))
    boost_space = max(_relative(boosted[:, 1:], half_g), _relative(boosted_s[:, 1:], -half_g))

    p_out, ps_out, p0_out, ps0_out = relativistic_post_collision(p, ps, omega, constants, frame)
    momentum = _relative(p_out + ps_out, p + ps)
    total_energy = _relative(p0_out + ps0_out, frame.p0 + frame.ps0)
    on_shell = max(_relative(p0_out, p_zero(p_out, constants)), _relative(ps0_out, p_zero(ps_out, constants)))

    diff = p - ps
    pairing = _dot(diff, p_out - ps_out) - (frame.p0 - frame.ps0) * (p0_out - ps0_out)
    angle = float(np.max(np.abs(pairing / frame.g**2 - _dot(frame.k_hat, omega))))

    projection = _relative(relativistic_projection(p, ps, constants), boosted_projection(p, ps, constants))

    return {'inverse': inverse, 'boost_time': boost_time, 'boost_space': boost_space,
            'momentum': momentum, 'energy': total_energy, 'on_shell': on_shell,
            'angle': angle, 'projection': projection}
