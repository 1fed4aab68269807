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
"""Stationary density as a sum of two single contour integrals.

    pi(x) = I1(x) + I2(x)

    I1 = 1/(2 pi i) int phi2(t1) gamma2(t1, T2) exp(-x1 t1 - x2 T2)
                             dt1 / sqrt(d(t1)),   T2 = Theta2+(t1)

and I2 the same with the coordinates swapped.  Both run upwards along a
vertical line Re t = c inside the strip where the boundary transform is
analytic; c = 0 is the imaginary axis.
"""
import numpy as np
from numpy.polynomial import legendre
from oslo_log import log as logging

from srbm_asymptotics.common import models
from srbm_asymptotics.common import waiters
from srbm_asymptotics import asymptotics
from srbm_asymptotics import boundary_transforms
from srbm_asymptotics import config
from srbm_asymptotics import exceptions
from srbm_asymptotics import kernel
from srbm_asymptotics import model
from srbm_asymptotics import surface

CONF = config.CONF
LOG = logging.getLogger(__name__)


class QuadratureSpec(models.Model):

    def __init__(self, truncation_factor=None, nodes=None, panels=None,
                 target=None, max_doublings=None, contour_shift=None,
                 shift_fraction=None):
        opts = CONF.quadrature

        def pick(value, default):
            return default if value is None else value

        self.truncation_factor = pick(truncation_factor,
                                      opts.truncation_factor)
        self.nodes = pick(nodes, opts.gauss_nodes)
        self.panels = pick(panels, opts.initial_panels)
        self.target = pick(target, opts.target)
        self.max_doublings = pick(max_doublings, opts.max_doublings)
        self.contour_shift = pick(contour_shift, opts.contour_shift)
        self.shift_fraction = pick(shift_fraction, opts.shift_fraction)
        if self.truncation_factor <= 0 or self.nodes < 2:
            raise exceptions.InvalidInput(
                reason='invalid quadrature spec %s' % self)

    def truncation(self, x_other, slope):
        """Half length T of the line.

        Far out on the line Re theta = c the integrand is bounded by
        exp(-x_other slope |Im theta|), where slope is sqrt(det Sigma)
        over the diagonal entry of the other coordinate. Cutting at
        T = truncation_factor / (x_other slope) leaves a tail below
        exp(-truncation_factor). With Sigma = I and both lines sharing
        the larger T this is T = 40 max(1/x1, 1/x2).
        """
        return self.truncation_factor / (x_other * slope)


def _composite_rule(half_length, panels, nodes):
    """Ascending Gauss-Legendre nodes and weights on [-T, T]."""
    x, w = legendre.leggauss(nodes)
    edges = np.linspace(-half_length, half_length, panels + 1)
    mid = 0.5 * (edges[1:] + edges[:-1])[:, None]
    half = 0.5 * (edges[1:] - edges[:-1])[:, None]
    return (mid + half * x).ravel(), (half * w).ravel()


class _Line(object):
    """One of the two single integrals."""

    def __init__(self, params, bt, which, x1, x2):
        self.params = params
        slope = np.sqrt(params.det_sigma)
        if which == boundary_transforms.PHI2:
            self.coefficients = kernel.coefficients
            self.discriminant = kernel.discriminant
            self.phi = bt.phi2
            self.form = lambda own, root: kernel.gamma2(params, own, root)
            self.x_own, self.x_other = x1, x2
            self.slope = slope / params.s22
        else:
            self.coefficients = kernel.coefficients_tilde
            self.discriminant = kernel.discriminant_tilde
            self.phi = bt.phi1
            self.form = lambda own, root: kernel.gamma1(params, root, own)
            self.x_own, self.x_other = x2, x1
            self.slope = slope / params.s11
        self.which = which

    def integrand(self, abscissa, v):
        theta = abscissa + 1j * v
        a, b, _ = self.coefficients(self.params, theta)
        sq, flips = kernel.tracked_sqrt(self.discriminant(self.params, theta))
        plus = (-b + sq) / (2.0 * a)
        minus = (-b - sq) / (2.0 * a)
        wrong = np.nonzero(plus.real < minus.real)[0]
        if wrong.size:
            raise exceptions.BranchDiscontinuity(
                where='%s=%s' % (self.which, theta[wrong[0]]))
        if flips:
            LOG.debug('Square root re-aligned %d times along %s', flips,
                      self.which)
        return (self.phi(theta) * self.form(theta, plus) *
                np.exp(-self.x_own * theta - self.x_other * plus) / sq)

    def integrate(self, abscissa, spec):
        half_length = spec.truncation(self.x_other, self.slope)
        scales = {}

        def evaluate(panels):
            v, w = _composite_rule(half_length, panels, spec.nodes)
            values = w * self.integrand(abscissa, v)
            scales[panels] = np.abs(values).sum() / (2.0 * np.pi)
            return values.sum() / (2.0 * np.pi), scales[panels]

        value, panels = waiters.wait_for_convergence(
            evaluate, 'integral along %s (c=%s)' % (self.which, abscissa),
            spec.panels, spec.target, spec.max_doublings)
        return value, scales[panels]


def _abscissas(params, bt, x1, x2, spec):
    """Real parts of the two integration lines."""
    if not spec.contour_shift:
        return 0.0, 0.0
    alpha = np.arctan2(x2, x1)
    target, _ = asymptotics.critical_points(params, alpha)
    bp = kernel.branch_points(params)
    c1 = min(target.theta1, bt.abscissa2, bp.theta1_plus)
    c2 = min(target.theta2, bt.abscissa1, bp.theta2_plus)
    return (max(0.0, spec.shift_fraction * c1),
            max(0.0, spec.shift_fraction * c2))


def density_eval(params, x1, x2, bt, spec=None):
    """Stationary density at (x1, x2) from the boundary transforms.

    :param params: stable ModelParams with negative drift
    :param x1: first coordinate, > 0
    :param x2: second coordinate, > 0
    :param bt: BoundaryTransform whose evaluators accept numpy arrays
    :param spec: QuadratureSpec, defaults from CONF.quadrature
    :rtype: float
    """
    model.require_supported(params)
    if not (x1 > 0 and x2 > 0):
        raise exceptions.InvalidInput(reason='x=(%s, %s) not in the open '
                                             'quadrant' % (x1, x2))
    spec = spec or QuadratureSpec()
    c1, c2 = _abscissas(params, bt, x1, x2, spec)

    i1, scale1 = _Line(params, bt, boundary_transforms.PHI2,
                       x1, x2).integrate(c1, spec)
    i2, scale2 = _Line(params, bt, boundary_transforms.PHI1,
                       x1, x2).integrate(c2, spec)
    total = i1 + i2
    value = total.real

    limit = 100.0 * max(spec.target * abs(value),
                        waiters.ROUNDING * (scale1 + scale2))
    LOG.debug('Density at (%s, %s) = %s (imaginary residual %s)',
              x1, x2, value, total.imag)
    if abs(total.imag) > limit:
        raise exceptions.QuadratureInconsistent(
            residual=abs(total.imag), limit=limit, x=(x1, x2))

    if value < 0:
        if value < -CONF.quadrature.negative_clamp:
            raise exceptions.NegativeDensity(value=value, x=(x1, x2))
        value = 0.0
    return value


def ray_density(params, alpha, radii, bt, spec=None):
    e = asymptotics.unit_vector(alpha)
    return [density_eval(params, r * e[0], r * e[1], bt, spec)
            for r in radii]


def leading_coefficient(params, alpha, bt):
    """Constant c0 in pi(r e_alpha) ~ c0 r^(-1/2) exp(-r rate) when the
    saddle point dominates.
    """
    report = asymptotics.classify(params, alpha)
    if report.regime != asymptotics.SADDLE:
        raise exceptions.WrongRegime(expected=asymptotics.SADDLE,
                                     regime=report.regime)
    if bt is None:
        raise exceptions.ConstantUnavailable(
            reason='no boundary transform supplied')

    saddle = asymptotics.saddle_point(params, alpha)
    phi2 = boundary_transforms.continuation_value(
        saddle.s, bt, boundary_transforms.PHI2, params)
    phi1 = boundary_transforms.continuation_value(
        saddle.s, bt, boundary_transforms.PHI1, params)
    theta1, theta2 = saddle.point
    numerator = (phi2 * kernel.gamma2(params, theta1, theta2) +
                 phi1 * kernel.gamma1(params, theta1, theta2))
    value = numerator / np.sqrt(2.0 * np.pi * params.det_sigma * saddle.fpp)
    return float(np.real(value))


def leading_coefficient_parts(params, alpha, bt):
    """(c0 from I1, c0 from I2) at the saddle."""
    saddle = asymptotics.saddle_point(params, alpha)
    norm = np.sqrt(2.0 * np.pi * params.det_sigma * saddle.fpp)
    theta1, theta2 = saddle.point
    phi2 = boundary_transforms.continuation_value(
        saddle.s, bt, boundary_transforms.PHI2, params)
    phi1 = boundary_transforms.continuation_value(
        saddle.s, bt, boundary_transforms.PHI1, params)
    return (float(np.real(phi2 * kernel.gamma2(params, theta1, theta2))
                  / norm),
            float(np.real(phi1 * kernel.gamma1(params, theta1, theta2))
                  / norm))


def residue_term(candidate, alpha, r, bt, params):
    """Contribution of a first-order pole to pi(r e_alpha).

    Pushing the line to the right across the pole picks up minus the
    residue: -Res phi * gamma(p) / sqrt(d) * exp(-r <p|e_alpha>).
    """
    geometry = surface.SurfaceGeometry(params)
    residue = boundary_transforms.residue_at(candidate, bt, params)
    theta1, theta2 = candidate.point
    if candidate.owner == boundary_transforms.PHI2:
        form = kernel.gamma2(params, theta1, theta2)
        root = geometry.sqrt_discriminant(candidate.s)
    else:
        form = kernel.gamma1(params, theta1, theta2)
        root = geometry.sqrt_discriminant_tilde(candidate.s)
    prefactor = -residue * form / root
    return float(np.real(prefactor * np.exp(-r * candidate.rate(alpha))))


def extrapolated_coefficient(params, alpha, bt, radii, rate=None,
                             spec=None):
    """Estimate c0 from sqrt(r) exp(r rate) pi(r e_alpha) at two radii,
    removing the 1/r correction.

    :return: (estimate, [scaled values])
    """
    if rate is None:
        rate = asymptotics.saddle_point(params, alpha).rate
    r1, r2 = radii
    values = [np.sqrt(r) * np.exp(r * rate) * pi
              for r, pi in zip(radii, ray_density(params, alpha, radii, bt,
                                                  spec))]
    return (r2 * values[1] - r1 * values[0]) / (r2 - r1), values


def functional_equation_residual(params, theta1, theta2, bt, phi):
    """|gamma phi - gamma1 phi1 - gamma2 phi2| with the kernel taken with
    the minus sign, i.e. |-gamma_plus phi - gamma1 phi1 - gamma2 phi2|.
    """
    kernel_minus = -kernel.gamma(params, theta1, theta2)
    return abs(kernel_minus * phi(theta1, theta2) -
               kernel.gamma1(params, theta1, theta2) * bt.phi1(theta2) -
               kernel.gamma2(params, theta1, theta2) * bt.phi2(theta1))


def functional_equation_scale(params, theta1, theta2, bt, phi):
    return max(1e-300,
               abs(kernel.gamma(params, theta1, theta2) * phi(theta1, theta2)),
               abs(kernel.gamma1(params, theta1, theta2) * bt.phi1(theta2)),
               abs(kernel.gamma2(params, theta1, theta2) * bt.phi2(theta1)))


def sheet_identity_defect(params, s):
    """|d theta1 / sqrt(d) - i ds / (s sqrt(det Sigma))| per unit ds."""
    geometry = surface.SurfaceGeometry(params)
    s = complex(s)
    dtheta1 = geometry.h1 * (1.0 - 1.0 / (s * s))
    lhs = dtheta1 / geometry.sqrt_discriminant(s)
    rhs = 1j / (s * np.sqrt(params.det_sigma))
    return abs(lhs - rhs)
