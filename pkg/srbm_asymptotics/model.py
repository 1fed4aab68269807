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
import numpy as np
from oslo_log import log as logging

from srbm_asymptotics.common import models
from srbm_asymptotics import exceptions

LOG = logging.getLogger(__name__)

# condition number from which a cone transform counts as singular
MAX_TRANSFORM_CONDITION = 1.0 / (64.0 * np.finfo(float).eps)

STABILITY_CLAUSES = ('r11_pos', 'r22_pos', 'detR_pos',
                     'drift_cond_1', 'drift_cond_2')


def _frozen(values, shape):
    array = np.array(values, dtype=float).reshape(shape)
    if not np.all(np.isfinite(array)):
        raise exceptions.InvalidInput(
            reason='non-finite entries in %s' % array.tolist())
    array.setflags(write=False)
    return array


class ModelParams(models.Model):
    """Covariance, drift and reflection matrix of a quarter-plane SRBM.

    The columns of ``refl`` are the reflection directions on the two axes,
    so ``refl[:, 0]`` is R^1 = (r11, r21) and ``refl[:, 1]`` is
    R^2 = (r12, r22).
    """

    def __init__(self, sigma, mu, refl):
        self.sigma = _frozen(sigma, (2, 2))
        self.mu = _frozen(mu, (2,))
        self.refl = _frozen(refl, (2, 2))

        if self.sigma[0, 1] != self.sigma[1, 0]:
            raise exceptions.InvalidInput(
                reason='covariance %s is not symmetric' % self.sigma.tolist())
        if self.sigma[0, 0] <= 0 or self.sigma[1, 1] <= 0:
            raise exceptions.InvalidInput(
                reason='covariance diagonal must be positive')
        if self.det_sigma <= 0:
            raise exceptions.InvalidInput(
                reason='covariance %s is singular' % self.sigma.tolist())

    def __eq__(self, other):
        if not isinstance(other, ModelParams):
            return NotImplemented
        return (np.array_equal(self.sigma, other.sigma) and
                np.array_equal(self.mu, other.mu) and
                np.array_equal(self.refl, other.refl))

    def __hash__(self):
        return hash((self.sigma.tobytes(), self.mu.tobytes(),
                     self.refl.tobytes()))

    def __str__(self):
        return str(self.to_dict())

    @classmethod
    def from_values(cls, sigma11, sigma12, sigma22, mu1, mu2,
                    r11, r12, r21, r22):
        return cls([[sigma11, sigma12], [sigma12, sigma22]], [mu1, mu2],
                   [[r11, r12], [r21, r22]])

    @classmethod
    def from_text(cls, text):
        return cls.from_values(**models.ParameterFile.from_text(text).values)

    @classmethod
    def from_file(cls, path):
        return cls.from_values(**models.ParameterFile.from_path(path).values)

    def to_dict(self):
        return {
            'sigma11': float(self.sigma[0, 0]),
            'sigma12': float(self.sigma[0, 1]),
            'sigma22': float(self.sigma[1, 1]),
            'mu1': float(self.mu[0]),
            'mu2': float(self.mu[1]),
            'r11': float(self.refl[0, 0]),
            'r12': float(self.refl[0, 1]),
            'r21': float(self.refl[1, 0]),
            'r22': float(self.refl[1, 1]),
        }

    @property
    def s11(self):
        return float(self.sigma[0, 0])

    @property
    def s12(self):
        return float(self.sigma[0, 1])

    @property
    def s22(self):
        return float(self.sigma[1, 1])

    @property
    def mu1(self):
        return float(self.mu[0])

    @property
    def mu2(self):
        return float(self.mu[1])

    @property
    def r11(self):
        return float(self.refl[0, 0])

    @property
    def r12(self):
        return float(self.refl[0, 1])

    @property
    def r21(self):
        return float(self.refl[1, 0])

    @property
    def r22(self):
        return float(self.refl[1, 1])

    @property
    def det_sigma(self):
        return (float(self.sigma[0, 0]) * float(self.sigma[1, 1]) -
                float(self.sigma[0, 1]) ** 2)

    @property
    def det_refl(self):
        return self.r11 * self.r22 - self.r12 * self.r21

    @property
    def is_supported(self):
        """Both drift coordinates negative."""
        return self.mu1 < 0 and self.mu2 < 0


class StabilityReport(models.Model):

    def __init__(self, exists, stable, violated):
        if stable and not exists:
            raise exceptions.InvalidInput(
                reason='a stable model always exists')
        self.exists = bool(exists)
        self.stable = bool(stable)
        self.violated = list(violated)

    def __hash__(self):
        return hash((self.exists, self.stable, tuple(self.violated)))


def _existence_violations(params):
    violated = []
    if not params.r11 > 0:
        violated.append('r11_pos')
    if not params.r22 > 0:
        violated.append('r22_pos')
    positive_cross = params.r12 > 0 and params.r21 > 0
    if not (positive_cross or params.det_refl > 0):
        violated.append('existence_alt')
    return violated


def validate_existence(params):
    """Existence criterion for the SRBM.

    :param params: the model parameters
    :return: a report whose ``stable`` flag is always False
    :rtype: StabilityReport
    """
    violated = _existence_violations(params)
    return StabilityReport(exists=not violated, stable=False,
                           violated=violated)


def validate_stability(params):
    """Existence and positive recurrence, every inequality strict."""
    existence = _existence_violations(params)

    violated = [c for c in ('r11_pos', 'r22_pos') if c in existence]
    if not params.det_refl > 0:
        violated.append('detR_pos')
    if not params.r22 * params.mu1 - params.r12 * params.mu2 < 0:
        violated.append('drift_cond_1')
    if not params.r11 * params.mu2 - params.r21 * params.mu1 < 0:
        violated.append('drift_cond_2')
    if 'existence_alt' in existence:
        violated.append('existence_alt')

    exists = not existence
    stable = exists and not violated
    if stable:
        assert params.mu1 < 0 or params.mu2 < 0
    else:
        LOG.debug('Model %s violates %s', params, violated)
    return StabilityReport(exists=exists, stable=stable, violated=violated)


def require_stable(params):
    report = validate_stability(params)
    if not report.stable:
        raise exceptions.UnstableModel(violated=','.join(report.violated))
    return report


def require_supported(params):
    require_stable(params)
    if not params.is_supported:
        raise exceptions.UnsupportedDrift(mu=params.mu.tolist())


def transform_cone_to_quadrant(params, transform):
    """Map an SRBM living in the cone T^-1(R_+^2) to the quarter plane.

    :param params: the model in the original cone
    :param transform: 2x2 invertible matrix T
    :return: the model (T Sigma T^t, T mu, T R)
    :rtype: ModelParams
    """
    t = np.array(transform, dtype=float).reshape(2, 2)
    if (not np.all(np.isfinite(t)) or
            np.linalg.cond(t) >= MAX_TRANSFORM_CONDITION):
        raise exceptions.SingularTransform(transform=t.tolist())

    sigma = t.dot(params.sigma).dot(t.T)
    # symmetrize away rounding so the constructor check is exact
    sigma = (sigma + sigma.T) / 2.0
    return ModelParams(sigma, t.dot(params.mu), t.dot(params.refl))
