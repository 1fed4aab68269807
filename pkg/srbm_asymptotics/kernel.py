# Copyright 2017 The srbm-asymptotics Authors
#
# Licensed under the Apache License, Version 2.0 (the "License"); you may
# not use this file except in compliance with the License. You may obtain
# a copy of the License at
#
#      http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS, WITHOUT
# WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied. See the
# License for the specific language governing permissions and limitations
# under the License.
"""The kernel of the functional equation and the ellipse of its real zeros.

The kernel is taken with the plus sign,

    gamma(t) = 1/2 <t, Sigma t> + <t, mu>,

and the boundary forms are gamma1(t) = <R^1, t>, gamma2(t) = <R^2, t>.
As a polynomial in theta2, gamma = a theta2^2 + b(theta1) theta2 + c(theta1)
with discriminant d(theta1) = b^2 - 4ac; the tilde quantities are the same
with the coordinates swapped.
"""
import numpy as np
from oslo_log import log as logging

from srbm_asymptotics.common import models
from srbm_asymptotics import exceptions

LOG = logging.getLogger(__name__)

CURVE_TOLERANCE = 1e-10


def gamma(params, theta1, theta2):
    return (0.5 * (params.s11 * theta1 * theta1 +
                   params.s22 * theta2 * theta2 +
                   2.0 * params.s12 * theta1 * theta2) +
            params.mu1 * theta1 + params.mu2 * theta2)


def gamma1(params, theta1, theta2):
    return params.r11 * theta1 + params.r21 * theta2


def gamma2(params, theta1, theta2):
    return params.r12 * theta1 + params.r22 * theta2


def gamma_scale(params, theta1, theta2):
    """Magnitude of the largest monomial of gamma, used for tolerances."""
    return max(1.0,
               abs(0.5 * params.s11 * theta1 * theta1),
               abs(0.5 * params.s22 * theta2 * theta2),
               abs(params.s12 * theta1 * theta2),
               abs(params.mu1 * theta1), abs(params.mu2 * theta2))


def coefficients(params, theta1):
    """(a, b, c) of gamma seen as a quadratic in theta2."""
    return (0.5 * params.s22,
            params.s12 * theta1 + params.mu2,
            0.5 * params.s11 * theta1 * theta1 + params.mu1 * theta1)


def coefficients_tilde(params, theta2):
    """(a~, b~, c~) of gamma seen as a quadratic in theta1."""
    return (0.5 * params.s11,
            params.s12 * theta2 + params.mu1,
            0.5 * params.s22 * theta2 * theta2 + params.mu2 * theta2)


def discriminant(params, theta1):
    quad = params.s12 ** 2 - params.s11 * params.s22
    lin = params.mu2 * params.s12 - params.mu1 * params.s22
    return theta1 * theta1 * quad + 2.0 * theta1 * lin + params.mu2 ** 2


def discriminant_tilde(params, theta2):
    quad = params.s12 ** 2 - params.s11 * params.s22
    lin = params.mu1 * params.s12 - params.mu2 * params.s11
    return theta2 * theta2 * quad + 2.0 * theta2 * lin + params.mu1 ** 2


def gradient(params, theta1, theta2):
    return (params.s11 * theta1 + params.s12 * theta2 + params.mu1,
            params.s22 * theta2 + params.s12 * theta1 + params.mu2)


def implicit_slope(params, theta1, theta2):
    """d theta2 / d theta1 along gamma = 0 at a point of the curve."""
    g1, g2 = gradient(params, theta1, theta2)
    if abs(g2) <= 1e-12 * max(1.0, abs(g1)):
        raise exceptions.DerivativeAtBranchPoint(point=(theta1, theta2))
    return -g1 / g2


def _order_roots(r1, r2):
    # minus branch: smaller real part, then smaller imaginary part
    if (r1.real, r1.imag) <= (r2.real, r2.imag):
        return r2, r1
    return r1, r2


def _roots(a, b, c, disc):
    sq = np.sqrt(complex(disc))
    return (-b + sq) / (2.0 * a), (-b - sq) / (2.0 * a)


def theta2_branches(params, theta1):
    """Return (Theta2+, Theta2-) at theta1."""
    a, b, c = coefficients(params, theta1)
    plus, minus = _order_roots(*_roots(a, b, c, discriminant(params, theta1)))
    return plus, minus


def theta1_branches(params, theta2):
    """Return (Theta1+, Theta1-) at theta2."""
    a, b, c = coefficients_tilde(params, theta2)
    plus, minus = _order_roots(
        *_roots(a, b, c, discriminant_tilde(params, theta2)))
    return plus, minus


def tracked_sqrt(values):
    """Square roots of an ordered path of complex values, kept continuous.

    The principal root is taken at the first value; every following root
    takes the sign closest to its predecessor.

    :param values: 1-D array of complex numbers sampled along a path
    :return: (roots, flips) where flips counts sign re-alignments against
        the principal branch
    """
    roots = np.sqrt(np.asarray(values, dtype=complex))
    if roots.size < 2:
        return roots, 0
    # a jump between principal roots toggles the sign of all later roots
    jumps = (np.abs(roots[1:] - roots[:-1]) >
             np.abs(roots[1:] + roots[:-1]))
    parity = np.concatenate(([0], np.cumsum(jumps) % 2)).astype(bool)
    return np.where(parity, -roots, roots), int(parity.sum())


class BranchPoints(models.Model):

    def __init__(self, theta1_minus, theta1_plus, theta2_minus, theta2_plus,
                 d1, d2):
        self.theta1_minus = theta1_minus
        self.theta1_plus = theta1_plus
        self.theta2_minus = theta2_minus
        self.theta2_plus = theta2_plus
        self.d1 = d1
        self.d2 = d2


class EllipsePoint(models.Model):

    def __init__(self, theta1, theta2):
        self.theta1 = float(theta1)
        self.theta2 = float(theta2)

    def __iter__(self):
        return iter((self.theta1, self.theta2))

    def as_array(self):
        return np.array([self.theta1, self.theta2])

    def rate(self, alpha):
        """<theta | e_alpha>."""
        return self.theta1 * np.cos(alpha) + self.theta2 * np.sin(alpha)

    def is_close(self, other, tol=1e-9):
        return (abs(self.theta1 - other.theta1) <= tol and
                abs(self.theta2 - other.theta2) <= tol)

    @classmethod
    def checked(cls, params, theta1, theta2, tol=CURVE_TOLERANCE):
        value = gamma(params, theta1, theta2)
        if abs(value) > tol * gamma_scale(params, theta1, theta2):
            raise exceptions.NotOnEllipse(point=(theta1, theta2), value=value)
        return cls(theta1, theta2)


class SpecialPoints(models.Model):

    def __init__(self, s0, s0_prime, s0_second, s1_minus, s1_plus,
                 s2_minus, s2_plus):
        self.s0 = s0
        self.s0_prime = s0_prime
        self.s0_second = s0_second
        self.s1_minus = s1_minus
        self.s1_plus = s1_plus
        self.s2_minus = s2_minus
        self.s2_plus = s2_plus

    def __iter__(self):
        return iter((self.s0, self.s0_prime, self.s0_second, self.s1_minus,
                     self.s1_plus, self.s2_minus, self.s2_plus))


def branch_points(params):
    det = params.det_sigma
    lin1 = params.mu2 * params.s12 - params.mu1 * params.s22
    lin2 = params.mu1 * params.s12 - params.mu2 * params.s11
    d1 = lin1 ** 2 + params.mu2 ** 2 * det
    d2 = lin2 ** 2 + params.mu1 ** 2 * det
    return BranchPoints(theta1_minus=(lin1 - np.sqrt(d1)) / det,
                        theta1_plus=(lin1 + np.sqrt(d1)) / det,
                        theta2_minus=(lin2 - np.sqrt(d2)) / det,
                        theta2_plus=(lin2 + np.sqrt(d2)) / det,
                        d1=d1, d2=d2)


def special_points(params):
    bp = branch_points(params)

    def double_root_2(theta1):
        a, b, _ = coefficients(params, theta1)
        return -b / (2.0 * a)

    def double_root_1(theta2):
        a, b, _ = coefficients_tilde(params, theta2)
        return -b / (2.0 * a)

    t1m, t1p = bp.theta1_minus, bp.theta1_plus
    t2m, t2p = bp.theta2_minus, bp.theta2_plus
    return SpecialPoints(
        s0=EllipsePoint(0.0, 0.0),
        s0_prime=EllipsePoint(0.0, -2.0 * params.mu2 / params.s22),
        s0_second=EllipsePoint(-2.0 * params.mu1 / params.s11, 0.0),
        s1_minus=EllipsePoint(t1m, double_root_2(t1m)),
        s1_plus=EllipsePoint(t1p, double_root_2(t1p)),
        s2_minus=EllipsePoint(double_root_1(t2m), t2m),
        s2_plus=EllipsePoint(double_root_1(t2p), t2p))
