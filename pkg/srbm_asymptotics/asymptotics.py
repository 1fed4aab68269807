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
"""Saddle point, pole candidates and the decay regime along a ray.

Along the ray r e_alpha the density decays like exp(-r <p|e_alpha>) where
p is either the saddle point theta(alpha), the maximum of <theta|e_alpha>
on the ellipse, or the first pole of a boundary transform met when the
integration contour is pushed towards the saddle.
"""
import numpy as np
from oslo_log import log as logging
from scipy import optimize

from srbm_asymptotics.common import models
from srbm_asymptotics import config
from srbm_asymptotics import exceptions
from srbm_asymptotics import kernel
from srbm_asymptotics import model
from srbm_asymptotics import surface

CONF = config.CONF
LOG = logging.getLogger(__name__)

SADDLE = 'SaddleDominated'
POLE_ZETA = 'PoleZetaThetaStarStar'
POLE_ETA = 'PoleEtaThetaStar'
TWO_POLES = 'TwoPoles'
UNTREATED = 'Untreated'
REGIMES = (SADDLE, POLE_ZETA, POLE_ETA, TWO_POLES, UNTREATED)

PHI1 = 'phi1'
PHI2 = 'phi2'
THETA_STAR = 'theta_star'
THETA_STAR_STAR = 'theta_star_star'

UNTREATED_CAVEAT = 'o(exp(-r(rate-delta))) for every delta > 0'


def unit_vector(alpha):
    return np.array([np.cos(alpha), np.sin(alpha)])


def check_angle(alpha):
    if not 0.0 < alpha < np.pi / 2:
        raise exceptions.AngleOutOfRange(alpha=alpha)


def angle_grid(n):
    """alpha_k = k pi / (2 (n + 1)) for k = 1..n."""
    if n < 1:
        raise exceptions.InvalidInput(reason='grid size %s < 1' % n)
    return [k * np.pi / (2.0 * (n + 1)) for k in range(1, n + 1)]


class SaddleInfo(models.Model):

    def __init__(self, alpha, point, s, rate, fpp):
        self.alpha = alpha
        self.point = point
        self.s = s
        self.rate = rate
        self.fpp = fpp


class PoleCandidate(models.Model):

    def __init__(self, point, s, source, orbit_depth, owner, order=1):
        self.point = point
        self.s = s
        self.source = source
        self.orbit_depth = orbit_depth
        self.owner = owner
        # None when the order is not known to be one
        self.order = order

    def rate(self, alpha):
        return self.point.rate(alpha)

    @property
    def is_dominant_kind(self):
        return self.orbit_depth == 0

    def to_dict(self):
        return {'theta': [self.point.theta1, self.point.theta2],
                'angle': self.s.angle,
                'source': self.source,
                'orbit_depth': self.orbit_depth,
                'owner': self.owner,
                'order': self.order}


class Thresholds(models.Model):

    def __init__(self, case, alpha1=None, alpha2=None, beta0=None,
                 a_star=None, a_star_star=None):
        self.case = case
        self.alpha1 = alpha1
        self.alpha2 = alpha2
        self.beta0 = beta0
        self.a_star = a_star
        self.a_star_star = a_star_star

    def defined(self):
        return dict((k, v) for k, v in (('alpha1', self.alpha1),
                                        ('alpha2', self.alpha2),
                                        ('beta0', self.beta0))
                    if v is not None)


class DecayReport(models.Model):

    def __init__(self, alpha, regime, rate, prefactor_exponent,
                 dominant_points, leading_constant=None, thresholds=None,
                 diagnostics=None):
        self.alpha = alpha
        self.regime = regime
        self.rate = rate
        self.prefactor_exponent = prefactor_exponent
        self.dominant_points = list(dominant_points)
        self.leading_constant = leading_constant
        self.thresholds = thresholds
        self.diagnostics = dict(diagnostics or {})

    def __hash__(self):
        return hash((self.alpha, self.regime, self.rate))

    @property
    def prefactor(self):
        if self.prefactor_exponent is None:
            return 'unknown'
        if self.prefactor_exponent == 0:
            return '1'
        return 'r^-1/2'

    def to_dict(self):
        thresholds = self.thresholds.defined() if self.thresholds else {}
        return {
            'alpha': self.alpha,
            'regime': self.regime,
            'rate': self.rate,
            'prefactor_exponent': self.prefactor_exponent,
            'dominant_points': [[p.theta1, p.theta2]
                                for p in self.dominant_points],
            'leading_constant': self.leading_constant,
            'thresholds': thresholds,
            'case': self.thresholds.case if self.thresholds else None,
            'diagnostics': self.diagnostics,
        }


def critical_points(params, alpha):
    """Return (theta+(alpha), theta-(alpha)), the maximum and minimum of
    <theta|e_alpha> on the ellipse, from grad gamma parallel to e_alpha.
    """
    sigma_inv = np.linalg.inv(params.sigma)
    e = unit_vector(alpha)
    k = np.sqrt(params.mu.dot(sigma_inv).dot(params.mu) /
                e.dot(sigma_inv).dot(e))
    plus = sigma_inv.dot(k * e - params.mu)
    minus = sigma_inv.dot(-k * e - params.mu)
    return (kernel.EllipsePoint(plus[0], plus[1]),
            kernel.EllipsePoint(minus[0], minus[1]))


def brute_force_saddle(params, alpha, samples=None):
    """Argmax of <theta|e_alpha> over sampled ellipse points, refined
    with a bounded scalar minimization around the best sample.
    """
    samples = samples or CONF.asymptotics.saddle_samples
    geometry = surface.SurfaceGeometry(params)
    c, s = np.cos(alpha), np.sin(alpha)

    def rate(t):
        z = np.exp(1j * np.asarray(t))
        return (c * geometry.theta1_array(z).real +
                s * geometry.theta2_array(z).real)

    grid = np.linspace(0.0, surface.TWO_PI, samples, endpoint=False)
    best = grid[np.argmax(rate(grid))]
    step = surface.TWO_PI / samples
    result = optimize.minimize_scalar(
        lambda t: -rate(t), bounds=(best - step, best + step),
        method='bounded', options={'xatol': 1e-12})
    return geometry.ellipse_point(np.exp(1j * result.x))


def _second_derivative(geometry, alpha, t, step):
    c, s = np.cos(alpha), np.sin(alpha)

    def rate(u):
        z = np.exp(1j * u)
        return (c * geometry.h_theta1(z) + s * geometry.h_theta2(z)).real

    return -(rate(t + step) - 2.0 * rate(t) + rate(t - step)) / step ** 2


def saddle_point(params, alpha, crosscheck=None):
    """The saddle point theta(alpha) and the curvature of the rate there.

    :param params: stable ModelParams with negative drift
    :param alpha: angle in (0, pi/2)
    :param crosscheck: compare with brute_force_saddle, defaults to
        CONF.asymptotics.saddle_crosscheck
    :raises SaddleMismatch: when the cross-check disagrees
    :rtype: SaddleInfo
    """
    model.require_supported(params)
    check_angle(alpha)
    if crosscheck is None:
        crosscheck = CONF.asymptotics.saddle_crosscheck

    geometry = surface.SurfaceGeometry(params)
    point, _ = critical_points(params, alpha)
    s = geometry.ellipse_to_s(point)
    fpp = _second_derivative(geometry, alpha, s.angle,
                             CONF.asymptotics.saddle_fd_step)

    if crosscheck:
        brute = brute_force_saddle(params, alpha)
        tol = (CONF.asymptotics.saddle_crosscheck_tolerance *
               max(1.0, geometry.h1, geometry.h2))
        if not point.is_close(brute, tol):
            raise exceptions.SaddleMismatch(point=tuple(point), alpha=alpha,
                                            brute=tuple(brute))

    return SaddleInfo(alpha=alpha, point=point, s=s,
                      rate=point.rate(alpha), fpp=fpp)


def pole_zeros(params):
    """Non-origin zeros theta* of gamma1 and theta** of gamma2 on the
    ellipse.
    """
    model.require_stable(params)
    p = params
    star = (2.0 * (p.r21 * p.mu1 - p.r11 * p.mu2) /
            (p.r21 ** 2 * p.s11 - 2.0 * p.r11 * p.r21 * p.s12 +
             p.r11 ** 2 * p.s22))
    star_star = (2.0 * (p.r12 * p.mu2 - p.r22 * p.mu1) /
                 (p.r22 ** 2 * p.s11 - 2.0 * p.r22 * p.r12 * p.s12 +
                  p.r12 ** 2 * p.s22))
    return (kernel.EllipsePoint(-star * p.r21, star * p.r11),
            kernel.EllipsePoint(star_star * p.r22, -star_star * p.r12))


def eta_point(params, point):
    """Other theta1 root at the same theta2, by the sum of roots."""
    a, b, _ = kernel.coefficients_tilde(params, point.theta2)
    return kernel.EllipsePoint(-b / a - point.theta1, point.theta2)


def zeta_point(params, point):
    """Other theta2 root at the same theta1, by the sum of roots."""
    a, b, _ = kernel.coefficients(params, point.theta1)
    return kernel.EllipsePoint(point.theta1, -b / a - point.theta2)


def galois_images(params, theta_star, theta_star_star):
    """Return (eta theta*, zeta theta**)."""
    return eta_point(params, theta_star), zeta_point(params, theta_star_star)


class _Frame(object):
    """Everything the pole tests need for one parameter set."""

    def __init__(self, params):
        self.params = params
        self.geometry = surface.SurfaceGeometry(params)
        self.special = kernel.special_points(params)
        self.theta_star, self.theta_star_star = pole_zeros(params)
        self.eta_theta_star, self.zeta_theta_star_star = galois_images(
            params, self.theta_star, self.theta_star_star)

        g = self.geometry
        self.s0_angle = g.ellipse_to_s(self.special.s0).angle
        self.s0_prime = g.ellipse_to_s(self.special.s0_prime)
        self.s0_second = g.ellipse_to_s(self.special.s0_second)
        self.phi2_arc = surface.Arc(g.s1_plus, self.s0_prime, False, False,
                                    avoid=self.s0_angle)
        self.phi1_arc = surface.Arc(self.s0_second, g.s2_plus, False, False,
                                    avoid=self.s0_angle)

    def s_of(self, point):
        return self.geometry.ellipse_to_s(point)

    def _order(self, s, owner):
        p, g = self.params, self.geometry
        tol = 1e-9

        def small(form, z):
            theta1, theta2 = g.coordinates(z)
            scale = max(1.0, abs(theta1), abs(theta2))
            return abs(form(p, theta1, theta2)) <= tol * scale

        if owner == PHI2:
            z = g.zeta(s)
            unknown = (small(kernel.gamma2, z) and
                       small(kernel.gamma1, g.eta(z)))
        else:
            z = g.eta(s)
            unknown = (small(kernel.gamma1, z) and
                       small(kernel.gamma2, g.zeta(z)))
        return None if unknown else 1

    def _candidate(self, s, source, depth, owner, point=None):
        if point is None:
            point = self.geometry.ellipse_point(s)
        return PoleCandidate(point=point, s=s, source=source,
                             orbit_depth=depth, owner=owner,
                             order=self._order(s, owner))

    def orbit(self, max_depth):
        """Candidate poles of phi2 and phi1 on their half circles."""
        g = self.geometry
        s_star = self.s_of(self.theta_star)
        s_star_star = self.s_of(self.theta_star_star)
        phi2, phi1 = [], []

        for j in range(max_depth + 1):
            if j == 0:
                point = self.zeta_theta_star_star
                s = self.s_of(point)
            else:
                point = None
                s = g.zeta(g.rotate(s_star_star, j))
            if not g.in_phi2_half(s):
                break
            phi2.append(self._candidate(s, THETA_STAR_STAR, j, PHI2, point))
        for k in range(1, max_depth + 1):
            s = g.rotate(s_star, -k)
            if not g.in_phi2_half(s):
                break
            phi2.append(self._candidate(s, THETA_STAR, k, PHI2))

        for j in range(max_depth + 1):
            if j == 0:
                point = self.eta_theta_star
                s = self.s_of(point)
            else:
                point = None
                s = g.eta(g.rotate(s_star, -j))
            if not g.in_phi1_half(s):
                break
            phi1.append(self._candidate(s, THETA_STAR, j, PHI1, point))
        for k in range(1, max_depth + 1):
            s = g.rotate(s_star_star, k)
            if not g.in_phi1_half(s):
                break
            phi1.append(self._candidate(s, THETA_STAR_STAR, k, PHI1))

        phi2 = [c for c in phi2 if surface.in_arc(c.s, self.phi2_arc)]
        phi1 = [c for c in phi1 if surface.in_arc(c.s, self.phi1_arc)]
        return phi2, phi1

    def coincidences(self, saddle):
        """Dominant poles whose circle argument matches the saddle's."""
        tol = CONF.asymptotics.coincidence_tolerance
        hits = []
        for point, arc in ((self.zeta_theta_star_star, self.phi2_arc),
                           (self.eta_theta_star, self.phi1_arc)):
            s = self.s_of(point)
            if not surface.in_arc(s, arc):
                continue
            off = surface.wrap(s.angle - saddle.s.angle)
            if min(off, surface.TWO_PI - off) < tol:
                hits.append(point)
        return hits

    def pole_sets(self, saddle, max_depth):
        g = self.geometry
        p_prime_arc = surface.Arc(saddle.s, self.s0_prime, a_closed=False,
                                  b_closed=True, avoid=self.s0_angle)
        p_second_arc = surface.Arc(self.s0_second, saddle.s, a_closed=True,
                                   b_closed=False, avoid=self.s0_angle)
        phi2, phi1 = self.orbit(max_depth)
        p_prime = [c for c in phi2 if surface.in_arc(c.s, p_prime_arc)]
        p_second = [c for c in phi1 if surface.in_arc(c.s, p_second_arc)]
        LOG.debug('Pole sets at alpha=%s: %d phi2, %d phi1 (beta=%s)',
                  saddle.alpha, len(p_prime), len(p_second), g.beta)
        return p_prime, p_second


def _max_depth(max_depth):
    return CONF.asymptotics.max_orbit_depth if max_depth is None else max_depth


def enumerate_poles(params, alpha, max_depth=None):
    """Pole candidates of phi2 on }theta(alpha), s0'} and of phi1 on
    {s0'', theta(alpha){.

    :return: (P_prime, P_second), lists of PoleCandidate
    """
    saddle = saddle_point(params, alpha)
    frame = _Frame(params)
    hits = frame.coincidences(saddle)
    if hits:
        raise exceptions.SaddleIsPole(point=tuple(saddle.point),
                                      pole=tuple(hits[0]))
    return frame.pole_sets(saddle, _max_depth(max_depth))


def _leading_constant(params, alpha, regime, dominant, bt, diagnostics):
    # density builds on this module
    from srbm_asymptotics import density

    try:
        if regime == SADDLE:
            return density.leading_coefficient(params, alpha, bt)
        if any(p.order is None for p in dominant):
            diagnostics['constant'] = 'pole order unknown'
            return None
        return sum(density.residue_term(p, alpha, 0.0, bt, params=params)
                   for p in dominant)
    except exceptions.NumericFailure as exc:
        LOG.warning('No leading constant for alpha=%s: %s', alpha, exc)
        diagnostics['constant'] = str(exc)
        return None


def classify(params, alpha, max_depth=None, bt=None):
    """Decay regime of the stationary density along the ray r e_alpha.

    :param params: stable ModelParams with negative drift
    :param alpha: angle in (0, pi/2)
    :param max_depth: orbit depth of the candidate poles
    :param bt: optional BoundaryTransform used for the leading constant
    :rtype: DecayReport
    """
    model.require_supported(params)
    check_angle(alpha)
    saddle = saddle_point(params, alpha)
    frame = _Frame(params)

    try:
        thresholds = angle_thresholds(params)
    except exceptions.DerivativeAtBranchPoint as exc:
        LOG.warning('Angle thresholds unavailable: %s', exc)
        thresholds = None

    hits = frame.coincidences(saddle)
    if hits:
        LOG.warning('Saddle %s coincides with pole %s at alpha=%s',
                    saddle.point, hits[0], alpha)
        return DecayReport(
            alpha=alpha, regime=UNTREATED, rate=saddle.rate,
            prefactor_exponent=None, dominant_points=[saddle.point],
            thresholds=thresholds,
            diagnostics={'caveat': UNTREATED_CAVEAT,
                         'coincides_with': [list(p) for p in hits]})

    p_prime, p_second = frame.pole_sets(saddle, _max_depth(max_depth))
    zeta_pole = [c for c in p_prime if c.orbit_depth == 0]
    eta_pole = [c for c in p_second if c.orbit_depth == 0]
    diagnostics = {'p_prime': len(p_prime), 'p_second': len(p_second)}

    if zeta_pole and eta_pole:
        r1, r2 = zeta_pole[0].rate(alpha), eta_pole[0].rate(alpha)
        tie = CONF.asymptotics.tie_tolerance * max(abs(r1), abs(r2))
        if abs(r1 - r2) <= tie:
            regime, dominant = TWO_POLES, zeta_pole + eta_pole
        elif r1 < r2:
            regime, dominant = POLE_ZETA, zeta_pole
        else:
            regime, dominant = POLE_ETA, eta_pole
    elif zeta_pole:
        regime, dominant = POLE_ZETA, zeta_pole
    elif eta_pole:
        regime, dominant = POLE_ETA, eta_pole
    else:
        regime, dominant = SADDLE, []

    if dominant:
        rate = min(c.rate(alpha) for c in dominant)
        points = [c.point for c in dominant]
        exponent = 0.0
    else:
        rate = saddle.rate
        points = [saddle.point]
        exponent = -0.5

    lowest = min([saddle.rate] +
                 [c.rate(alpha) for c in p_prime + p_second])
    if lowest < rate * (1.0 - CONF.asymptotics.tie_tolerance):
        LOG.warning('A deeper candidate pole dominates at alpha=%s '
                    '(%s < %s)', alpha, lowest, rate)
        diagnostics['deeper_candidate_dominates'] = True
        rate = lowest

    constant = None
    if bt is not None:
        constant = _leading_constant(params, alpha, regime, dominant, bt,
                                     diagnostics)

    return DecayReport(alpha=alpha, regime=regime, rate=rate,
                       prefactor_exponent=exponent, dominant_points=points,
                       leading_constant=constant, thresholds=thresholds,
                       diagnostics=diagnostics)


def sweep(params, n, max_depth=None, bt=None):
    """classify on the grid alpha_k = k pi / (2 (n + 1))."""
    return [classify(params, alpha, max_depth=max_depth, bt=bt)
            for alpha in angle_grid(n)]


def _plus_root_point(candidates, coordinate):
    return max(candidates, key=lambda p: list(p)[coordinate])


def _slope_angle(slope):
    """arctan(-1/slope), with a horizontal tangent at pi/2."""
    if slope == 0:
        return np.pi / 2
    return float(np.arctan(-1.0 / slope))


def angle_thresholds(params):
    """Angles where the decay regime changes.

    alpha1 = arctan(-1/A**) and alpha2 = arctan(-A*), where A** is the
    slope d Theta2+/d theta1 at theta1** and A* the slope d Theta1+/d theta2
    at theta2*; beta0 is the angle where zeta theta** and eta theta* give
    the same rate.

    :rtype: Thresholds
    """
    model.require_supported(params)
    frame = _Frame(params)
    special = frame.special

    g2 = kernel.gamma2(params, *special.s1_plus)
    g1 = kernel.gamma1(params, *special.s2_plus)

    upper = _plus_root_point([frame.theta_star_star,
                              frame.zeta_theta_star_star], 1)
    right = _plus_root_point([frame.theta_star, frame.eta_theta_star], 0)
    a_star_star = kernel.implicit_slope(params, *upper)
    grad1, grad2 = kernel.gradient(params, *right)
    if abs(grad1) <= 1e-12 * max(1.0, abs(grad2)):
        raise exceptions.DerivativeAtBranchPoint(point=tuple(right))
    a_star = -grad2 / grad1

    alpha1 = alpha2 = beta0 = None
    a = frame.zeta_theta_star_star
    b = frame.eta_theta_star
    if g2 <= 0 and g1 <= 0:
        case = 'i'
    elif g2 > 0 and g1 <= 0:
        if a_star_star >= 0:
            case = 'iia'
        else:
            case = 'iib'
            alpha1 = _slope_angle(a_star_star)
    elif g2 <= 0 and g1 > 0:
        if a_star >= 0:
            case = 'iiia'
        else:
            case = 'iiib'
            alpha2 = np.arctan(-a_star)
    elif a.theta1 <= b.theta1 and a.theta2 <= b.theta2 and (
            a.theta1 < b.theta1 or a.theta2 < b.theta2):
        case = 'iva'
    elif a.theta1 >= b.theta1 and a.theta2 >= b.theta2 and (
            a.theta1 > b.theta1 or a.theta2 > b.theta2):
        case = 'ivb'
    elif a.theta1 < b.theta1 and a.theta2 > b.theta2:
        case = 'ivc'
        beta0 = np.arctan((a.theta1 - b.theta1) / (b.theta2 - a.theta2))
    else:
        case = 'ivd'
        alpha1 = _slope_angle(a_star_star)
        alpha2 = float(np.arctan(-a_star))
        # 0 < alpha1 <= alpha2 < pi/2, equal up to rounding is a tie
        if abs(alpha2 - alpha1) <= CONF.asymptotics.tie_tolerance:
            alpha2 = alpha1
        elif not 0.0 < alpha1 < alpha2 < np.pi / 2:
            raise exceptions.UnorderedThresholds(case=case, alpha1=alpha1,
                                                 alpha2=alpha2)

    LOG.debug('Parameter case %s (gamma2(s1+)=%s, gamma1(s2+)=%s)',
              case, g2, g1)
    return Thresholds(case=case, alpha1=alpha1, alpha2=alpha2, beta0=beta0,
                      a_star=a_star, a_star_star=a_star_star)


def parameter_case(params):
    return angle_thresholds(params).case


def regime_partition(params):
    """Predicted (alpha_lo, alpha_hi, regime) intervals covering (0, pi/2).

    Thresholds themselves are TwoPoles (for beta0) or Untreated (for
    alpha1, alpha2) and are not part of any interval.
    """
    th = angle_thresholds(params)
    half = np.pi / 2
    if th.case == 'i':
        return [(0.0, half, SADDLE)]
    if th.case in ('iia', 'iva'):
        return [(0.0, half, POLE_ZETA)]
    if th.case in ('iiia', 'ivb'):
        return [(0.0, half, POLE_ETA)]
    if th.case == 'iib':
        return [(0.0, th.alpha1, POLE_ZETA), (th.alpha1, half, SADDLE)]
    if th.case == 'iiib':
        return [(0.0, th.alpha2, SADDLE), (th.alpha2, half, POLE_ETA)]
    if th.case == 'ivc':
        return [(0.0, th.beta0, POLE_ZETA), (th.beta0, half, POLE_ETA)]
    partition = [(0.0, th.alpha1, POLE_ZETA)]
    if th.alpha2 > th.alpha1:
        partition.append((th.alpha1, th.alpha2, SADDLE))
    partition.append((th.alpha2, half, POLE_ETA))
    return partition


def predicted_regime(params, alpha):
    """Regime from regime_partition, None on a threshold."""
    for lo, hi, regime in regime_partition(params):
        if lo < alpha < hi:
            return regime
    return None
