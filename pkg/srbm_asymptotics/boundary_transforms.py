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
"""Boundary transforms phi1(theta2), phi2(theta1) and their continuation.

On the curve gamma = 0 the functional equation reduces to

    gamma1(s) phi1(s) + gamma2(s) phi2(s) = 0,

and phi1 is invariant under eta (same theta2), phi2 under zeta (same
theta1).  Alternating the two involutions carries any point of the
sphere back to a point where one of the transforms is known.
"""
import numpy as np
from oslo_log import log as logging

from srbm_asymptotics.common import models
from srbm_asymptotics import config
from srbm_asymptotics import exceptions
from srbm_asymptotics import kernel
from srbm_asymptotics import model
from srbm_asymptotics import surface

CONF = config.CONF
LOG = logging.getLogger(__name__)

PHI1 = 'phi1'
PHI2 = 'phi2'


class BoundaryTransform(object):
    """Evaluator pair phi1(theta2), phi2(theta1).

    ``phi1`` must be analytic for Re theta2 < abscissa1 and ``phi2`` for
    Re theta1 < abscissa2; both abscissas are at least 0.
    """

    def __init__(self, phi1, phi2, abscissa1=0.0, abscissa2=0.0,
                 name=None):
        if abscissa1 < 0 or abscissa2 < 0:
            raise exceptions.InvalidInput(
                reason='negative abscissa of analyticity')
        self._phi1 = phi1
        self._phi2 = phi2
        self.abscissa1 = float(abscissa1)
        self.abscissa2 = float(abscissa2)
        self.name = name or type(self).__name__

    def __repr__(self):
        return '%s(abscissa1=%s, abscissa2=%s)' % (
            self.name, self.abscissa1, self.abscissa2)

    def phi1(self, theta2):
        return self._phi1(theta2)

    def phi2(self, theta1):
        return self._phi2(theta1)

    def value(self, which, theta):
        return self.phi1(theta) if which == PHI1 else self.phi2(theta)

    def abscissa(self, which):
        return self.abscissa1 if which == PHI1 else self.abscissa2

    def scaled(self, factor):
        return BoundaryTransform(lambda t: factor * self.phi1(t),
                                 lambda t: factor * self.phi2(t),
                                 self.abscissa1, self.abscissa2,
                                 name='%s*%s' % (factor, self.name))


class RationalBoundaryTransform(BoundaryTransform):
    """phi1 = k1/(p1 - theta2), phi2 = k2/(p2 - theta1).

    Analytic left of its poles; it does not solve the functional equation
    and only serves to exercise the quadrature and the saddle constant.
    """

    def __init__(self, k1, p1, k2, p2):
        if p1 <= 0 or p2 <= 0:
            raise exceptions.InvalidInput(reason='poles must be positive')
        self.k1, self.p1, self.k2, self.p2 = k1, p1, k2, p2
        super(RationalBoundaryTransform, self).__init__(
            lambda t: k1 / (p1 - t), lambda t: k2 / (p2 - t),
            abscissa1=p1, abscissa2=p2)


class ProductFormModel(models.Model):
    """phi(theta) = C / ((eta1 - theta1)(eta2 - theta2)) with
    phi1 = c1/(eta2 - theta2) and phi2 = c2/(eta1 - theta1).
    """

    def __init__(self, eta, big_c, c1, c2, residual=0.0):
        self.eta = (float(eta[0]), float(eta[1]))
        self.big_c = float(big_c)
        self.c1 = float(c1)
        self.c2 = float(c2)
        self.residual = float(residual)

    def phi(self, theta1, theta2):
        return self.big_c / ((self.eta[0] - theta1) *
                             (self.eta[1] - theta2))

    def phi1(self, theta2):
        return self.c1 / (self.eta[1] - theta2)

    def phi2(self, theta1):
        return self.c2 / (self.eta[0] - theta1)

    def density(self, x1, x2):
        eta1, eta2 = self.eta
        return eta1 * eta2 * np.exp(-eta1 * x1 - eta2 * x2)

    def local_time_rates(self):
        """(phi1(0), phi2(0)), the mean pushing per unit time on each face."""
        return self.phi1(0.0), self.phi2(0.0)

    def boundary_transform(self, declare_abscissa=True):
        """BoundaryTransform view; without declared abscissas every value
        with positive real part goes through the continuation.
        """
        return BoundaryTransform(
            self.phi1, self.phi2,
            abscissa1=self.eta[1] if declare_abscissa else 0.0,
            abscissa2=self.eta[0] if declare_abscissa else 0.0,
            name='ProductForm')

    def to_dict(self):
        return {'eta': list(self.eta), 'C': self.big_c, 'c1': self.c1,
                'c2': self.c2, 'residual': self.residual}


def _identity_residuals(params, eta, big_c, c1, c2):
    """Coefficient residuals of
    C gamma(theta) + c1 gamma1 (eta1 - theta1) + c2 gamma2 (eta2 - theta2).
    """
    p = params
    eta1, eta2 = eta
    return np.array([
        # theta1^2, theta2^2, theta1 theta2
        0.5 * big_c * p.s11 - c1 * p.r11,
        0.5 * big_c * p.s22 - c2 * p.r22,
        big_c * p.s12 - c1 * p.r21 - c2 * p.r12,
        # theta1, theta2
        big_c * p.mu1 + c1 * p.r11 * eta1 + c2 * p.r12 * eta2,
        big_c * p.mu2 + c1 * p.r21 * eta1 + c2 * p.r22 * eta2,
        # constant
        0.0,
    ])


def fit_product_form(params, tol=None):
    """Look for exponential rates eta such that the rational transforms
    above solve the functional equation identically.

    :return: a ProductFormModel, or a NotProductForm outcome
    """
    model.require_stable(params)
    if tol is None:
        tol = CONF.boundary_transforms.product_form_tolerance
    p = params
    k1 = p.s11 / (2.0 * p.r11)
    k2 = p.s22 / (2.0 * p.r22)
    system = np.array([[k1 * p.r11, k2 * p.r12],
                       [k1 * p.r21, k2 * p.r22]])
    try:
        eta = np.linalg.solve(system, -params.mu)
    except np.linalg.LinAlgError:
        return exceptions.NotProductForm(residual=float('inf'))

    big_c = eta[0] * eta[1]
    residuals = _identity_residuals(params, eta, big_c, k1 * big_c,
                                    k2 * big_c)
    scale = max(1.0, abs(big_c))
    residual = float(np.max(np.abs(residuals)) / scale)
    if residual >= tol or not np.all(eta > 0):
        LOG.debug('No product form for %s: residual %s, eta %s',
                  params, residual, eta)
        return exceptions.NotProductForm(residual=residual)
    return ProductFormModel(eta, big_c, k1 * big_c, k2 * big_c,
                            residual=residual)


def require_product_form(params):
    fitted = fit_product_form(params)
    if isinstance(fitted, exceptions.NotProductForm):
        raise fitted
    return fitted


def _in_domain(geometry, s, which, bt, slack):
    if which == PHI1:
        theta = geometry.h_theta2(s)
    else:
        theta = geometry.h_theta1(s)
    if theta is surface.INFINITY:
        return False, theta
    abscissa = bt.abscissa(which)
    if abscissa > 0:
        return theta.real < abscissa, theta
    return theta.real <= slack, theta


def continuation_value(s, bt, which, params, max_rotations=None):
    """Value of phi1 or phi2 at a point of the sphere.

    Walks s, eta s, zeta eta s, ... for phi1 (s, zeta s, eta zeta s, ...
    for phi2), using the invariances and gamma1 phi1 + gamma2 phi2 = 0
    until a point lies in the initial domain of either transform.

    :param s: SurfacePoint or complex number
    :param bt: BoundaryTransform evaluable on its initial domain
    :param which: PHI1 or PHI2
    :param params: the model parameters
    :raises PoleHit: a gamma factor of the walk vanishes
    :raises ContinuationDiverged: no exit within max_rotations rotations
    """
    if max_rotations is None:
        max_rotations = CONF.boundary_transforms.max_rotations
    slack = CONF.boundary_transforms.domain_slack
    geometry = surface.SurfaceGeometry(params)
    point = surface.as_point(s)
    current = which
    factor = 1.0
    start = point

    # every half step swaps the transform being tracked
    for half_step in range(2 * max_rotations + 1):
        inside, theta = _in_domain(geometry, point, current, bt, slack)
        if inside:
            LOG.debug('Continuation of %s at %s exits after %d half steps',
                      which, start.s, half_step)
            return factor * bt.value(current, theta)

        if current == PHI1:
            point = geometry.eta(point)
            own, other = kernel.gamma1, kernel.gamma2
        else:
            point = geometry.zeta(point)
            own, other = kernel.gamma2, kernel.gamma1
        if point.is_pole_of_coordinates:
            break
        theta1, theta2 = geometry.coordinates(point)

        # phi_own(point) = -gamma_other phi_other(point) / gamma_own
        den = own(params, theta1, theta2)
        scale = max(1.0, abs(theta1), abs(theta2))
        if abs(den) <= 1e-13 * scale:
            raise exceptions.PoleHit(
                which=which, factor='%s at s=%s' % (own.__name__, point.s))
        factor *= -other(params, theta1, theta2) / den
        current = PHI2 if current == PHI1 else PHI1

    raise exceptions.ContinuationDiverged(which=which, s=start.s,
                                          rotations=max_rotations)


def rotation_factor(s, which, params, rotations):
    """Product of the factors carrying phi1 from (zeta eta)^n s back to s
    (phi2 from (eta zeta)^n s), so that

        phi(s) = rotation_factor(s, n) * phi(rotated s).
    """
    geometry = surface.SurfaceGeometry(params)
    point = surface.as_point(s)
    factor = 1.0
    for _ in range(rotations):
        if which == PHI1:
            half = geometry.eta(point)
            full = geometry.zeta(half)
            factor *= (kernel.gamma2(params, *geometry.coordinates(half)) *
                       kernel.gamma1(params, *geometry.coordinates(full)) /
                       (kernel.gamma1(params, *geometry.coordinates(half)) *
                        kernel.gamma2(params, *geometry.coordinates(full))))
        else:
            half = geometry.zeta(point)
            full = geometry.eta(half)
            factor *= (kernel.gamma1(params, *geometry.coordinates(half)) *
                       kernel.gamma2(params, *geometry.coordinates(full)) /
                       (kernel.gamma2(params, *geometry.coordinates(half)) *
                        kernel.gamma1(params, *geometry.coordinates(full))))
        point = full
    return factor


def residue_at(candidate, bt, params, offset=None):
    """First-order residue of phi2(theta1) (or phi1(theta2)) at a pole.

    (theta - theta_p) phi(theta) is sampled at symmetric angular offsets
    around the pole on the circle and extrapolated to zero offset.
    """
    if candidate.order != 1:
        raise exceptions.ResidueUnstable(point=tuple(candidate.point),
                                         spread='order unknown', limit=1)
    offset = offset or CONF.boundary_transforms.residue_offset
    limit = CONF.boundary_transforms.residue_spread
    geometry = surface.SurfaceGeometry(params)
    which = candidate.owner
    s_p = candidate.s.s
    coordinate = geometry.h_theta2 if which == PHI1 else geometry.h_theta1
    pole = coordinate(s_p)

    def sample(delta):
        values = []
        for sign in (1.0, -1.0):
            z = s_p * np.exp(1j * sign * delta)
            values.append((coordinate(z) - pole) *
                          continuation_value(z, bt, which, params))
        return 0.5 * (values[0] + values[1])

    samples = [sample(offset / 2 ** k) for k in range(4)]
    # error is even in the offset: eliminate delta^2 terms
    first = [(4.0 * samples[k + 1] - samples[k]) / 3.0 for k in range(3)]
    scale = max(abs(v) for v in first)
    spread = (max(abs(a - b) for a in first for b in first) / scale
              if scale > 0 else 0.0)
    if spread > limit:
        raise exceptions.ResidueUnstable(point=tuple(candidate.point),
                                         spread=spread, limit=limit)
    return (16.0 * first[2] - first[1]) / 15.0
