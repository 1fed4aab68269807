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
"""Rational parametrization of the zero set of the kernel.

A point s of the Riemann sphere is mapped to the curve by

    theta1(s) = m1 + h1 (s + 1/s)
    theta2(s) = m2 + h2 (s exp(-i beta) + exp(i beta) / s)

with m, h the centre and quarter width of the branch-point intervals.
The unit circle is the real ellipse, s = 1 is s1+ and exp(i beta) is s2+.
"""
import cmath

import numpy as np
from oslo_log import log as logging

from srbm_asymptotics.common import models
from srbm_asymptotics import config
from srbm_asymptotics import exceptions
from srbm_asymptotics import kernel

CONF = config.CONF
LOG = logging.getLogger(__name__)

TWO_PI = 2.0 * np.pi


class _Infinity(object):
    """The point at infinity of the sphere (and of the theta planes)."""

    def __repr__(self):
        return 'INFINITY'

    def __reduce__(self):
        return 'INFINITY'


INFINITY = _Infinity()


def wrap(angle):
    """Map an angle to [0, 2 pi)."""
    value = float(angle) % TWO_PI
    return 0.0 if value >= TWO_PI else value


class SurfacePoint(models.Model):

    def __init__(self, s):
        if s is not INFINITY:
            s = complex(s)
        self.s = s

    def __hash__(self):
        return hash(self.s)

    @property
    def is_infinite(self):
        return self.s is INFINITY

    @property
    def is_pole_of_coordinates(self):
        return self.s is INFINITY or self.s == 0

    @property
    def angle(self):
        return cmath.phase(self.s)

    def on_circle(self, tol=1e-9):
        return not self.is_pole_of_coordinates and abs(abs(self.s) - 1) <= tol

    @classmethod
    def from_angle(cls, t):
        return cls(cmath.exp(1j * t))


def as_point(s):
    return s if isinstance(s, SurfacePoint) else SurfacePoint(s)


def _value(s):
    return s.s if isinstance(s, SurfacePoint) else s


class SurfaceGeometry(models.Model):

    def __init__(self, params):
        bp = kernel.branch_points(params)
        self.params = params
        self.branch = bp
        self.m1 = 0.5 * (bp.theta1_plus + bp.theta1_minus)
        self.h1 = 0.25 * (bp.theta1_plus - bp.theta1_minus)
        self.m2 = 0.5 * (bp.theta2_plus + bp.theta2_minus)
        self.h2 = 0.25 * (bp.theta2_plus - bp.theta2_minus)
        self.beta = float(np.arccos(-params.s12 /
                                    np.sqrt(params.s11 * params.s22)))
        self.rotation = cmath.exp(2j * self.beta)

    def __hash__(self):
        return hash(self.params)

    @classmethod
    def from_params(cls, params):
        return cls(params)

    # branch point images
    @property
    def s1_plus(self):
        return SurfacePoint(1.0)

    @property
    def s1_minus(self):
        return SurfacePoint(-1.0)

    @property
    def s2_plus(self):
        return SurfacePoint.from_angle(self.beta)

    @property
    def s2_minus(self):
        return SurfacePoint.from_angle(np.pi + self.beta)

    def h_theta1(self, s):
        s = _value(s)
        if s is INFINITY or s == 0:
            return INFINITY
        return self.m1 + self.h1 * (s + 1.0 / s)

    def h_theta2(self, s):
        s = _value(s)
        if s is INFINITY or s == 0:
            return INFINITY
        phase = cmath.exp(1j * self.beta)
        return self.m2 + self.h2 * (s / phase + phase / s)

    def coordinates(self, s):
        return self.h_theta1(s), self.h_theta2(s)

    def theta1_array(self, s):
        """Vectorized theta1 over an array of finite, non-zero s."""
        s = np.asarray(s, dtype=complex)
        return self.m1 + self.h1 * (s + 1.0 / s)

    def theta2_array(self, s):
        s = np.asarray(s, dtype=complex)
        phase = np.exp(1j * self.beta)
        return self.m2 + self.h2 * (s / phase + phase / s)

    def zeta(self, s):
        """Swap the two theta2 roots, keep theta1: s -> 1/s."""
        s = _value(s)
        if s is INFINITY:
            return SurfacePoint(0.0)
        if s == 0:
            return SurfacePoint(INFINITY)
        return SurfacePoint(1.0 / s)

    def eta(self, s):
        """Swap the two theta1 roots, keep theta2: s -> exp(2 i beta)/s."""
        s = _value(s)
        if s is INFINITY:
            return SurfacePoint(0.0)
        if s == 0:
            return SurfacePoint(INFINITY)
        return SurfacePoint(self.rotation / s)

    def rotate(self, s, k):
        """Apply (eta zeta)^k, a rotation by 2 k beta; k < 0 is zeta eta."""
        s = _value(s)
        if s is INFINITY or s == 0:
            return SurfacePoint(s)
        return SurfacePoint(s * cmath.exp(2j * k * self.beta))

    def ellipse_point(self, s):
        """Real coordinates of a point of the unit circle."""
        theta1, theta2 = self.coordinates(s)
        return kernel.EllipsePoint(theta1.real, theta2.real)

    def points(self, n):
        """Yield n EllipsePoints going once around the ellipse."""
        for t in np.linspace(0.0, TWO_PI, n, endpoint=False):
            yield kernel.EllipsePoint(
                self.m1 + 2.0 * self.h1 * np.cos(t),
                self.m2 + 2.0 * self.h2 * np.cos(t - self.beta))

    def ellipse_to_s(self, point, tol=1e-9):
        """Invert the covering on the unit circle.

        :param point: EllipsePoint on the real ellipse
        :return: the unique s with |s| = 1 mapped to the point
        :rtype: SurfacePoint
        """
        u = (point.theta1 - self.m1) / (2.0 * self.h1)
        w = (point.theta2 - self.m2) / (2.0 * self.h2)
        sin_t = (w - u * np.cos(self.beta)) / np.sin(self.beta)
        value = kernel.gamma(self.params, point.theta1, point.theta2)
        scale = kernel.gamma_scale(self.params, point.theta1, point.theta2)
        if abs(u * u + sin_t * sin_t - 1.0) > tol or abs(value) > tol * scale:
            raise exceptions.NotOnEllipse(point=tuple(point), value=value)
        return SurfacePoint.from_angle(np.arctan2(sin_t, u))

    def angle_of(self, point):
        """Circle argument of an EllipsePoint."""
        return self.ellipse_to_s(point).angle

    def sqrt_discriminant(self, s):
        """sqrt(d(theta1(s))) on the sheet of s.

        Equals a (theta2(s) - theta2(zeta s)); positive on the upper half
        circle, where theta2 is the larger root.
        """
        s = _value(s)
        return 0.5 * self.params.s22 * (self.h_theta2(s) -
                                        self.h_theta2(1.0 / s))

    def sqrt_discriminant_tilde(self, s):
        """sqrt(d~(theta2(s))) on the sheet of s."""
        s = _value(s)
        return 0.5 * self.params.s11 * (self.h_theta1(s) -
                                        self.h_theta1(self.rotation / s))

    def in_phi2_half(self, s, tol=0.0):
        """Half circle 0 < t < pi where theta2 is the Theta2+ root."""
        t = wrap(SurfacePoint(_value(s)).angle)
        return tol < t < np.pi - tol

    def in_phi1_half(self, s, tol=0.0):
        """Half circle beta - pi < t < beta where theta1 is Theta1+."""
        t = wrap(SurfacePoint(_value(s)).angle - (self.beta - np.pi))
        return tol < t < np.pi - tol


class Arc(models.Model):
    """Anticlockwise arc of the unit circle from a to b.

    With ``avoid`` set, the arc is the one of the two arcs between a and b
    that does not contain the argument ``avoid``; its end points keep
    their inclusion flags.
    """

    def __init__(self, a, b, a_closed=True, b_closed=True, avoid=None,
                 full=False, tol=None):
        self.tol = CONF.asymptotics.arc_tolerance if tol is None else tol
        a, b = as_point(a), as_point(b)
        length = wrap(b.angle - a.angle)
        if not full and min(length, TWO_PI - length) <= self.tol:
            raise exceptions.DegenerateArc(point=a.s)

        if (not full and avoid is not None and
                self._contains(a.angle, length, avoid)):
            a, b = b, a
            a_closed, b_closed = b_closed, a_closed
            length = TWO_PI - length

        self.a = a
        self.b = b
        self.a_closed = a_closed
        self.b_closed = b_closed
        self.avoid = avoid
        self.full = full
        self.length = TWO_PI if full else length

    def __hash__(self):
        return hash((self.a, self.b, self.a_closed, self.b_closed))

    def _contains(self, start, length, angle):
        d = wrap(angle - start)
        return self.tol < d < length - self.tol

    @classmethod
    def full_circle(cls, excluded, tol=None):
        """Whole circle minus one point."""
        return cls(excluded, excluded, a_closed=False, b_closed=False,
                   avoid=excluded.angle, full=True, tol=tol)

    def __contains__(self, point):
        return in_arc(point, self)


def in_arc(point, arc):
    """Membership of a unit-circle point in an arc."""
    point = as_point(point)
    if not point.on_circle():
        raise exceptions.InvalidInput(
            reason='%s is not on the unit circle' % point.s)
    tol = arc.tol
    if arc.avoid is not None:
        off = wrap(point.angle - arc.avoid)
        if min(off, TWO_PI - off) <= tol:
            return False

    d = wrap(point.angle - arc.a.angle)
    near_a = min(d, TWO_PI - d) <= tol
    near_b = abs(d - arc.length) <= tol or (arc.full and near_a)
    if near_a:
        return arc.a_closed and not arc.full
    if near_b:
        return arc.b_closed and not arc.full
    return d < arc.length
