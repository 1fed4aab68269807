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
import os

import numpy as np
from oslo_log import log as logging
from tempest.lib.common.utils import data_utils

from srbm_asymptotics.common import models
from srbm_asymptotics import model

LOG = logging.getLogger(__name__)


def rng(seed=None):
    return np.random.default_rng(seed)


def rand_covariance(generator, low=0.5, high=2.0, max_correlation=0.8):
    """Random covariance with variances in [low, high]."""
    s11, s22 = generator.uniform(low, high, size=2)
    rho = generator.uniform(-max_correlation, max_correlation)
    s12 = rho * np.sqrt(s11 * s22)
    return [[s11, s12], [s12, s22]]


def rand_drift(generator, low=0.5, high=2.0):
    """Random drift with both coordinates negative."""
    return list(-generator.uniform(low, high, size=2))


def rand_reflection(generator, spread=0.9):
    """Random reflection matrix with unit diagonal and det > 0."""
    while True:
        r12, r21 = generator.uniform(-spread, spread, size=2)
        if 1.0 - r12 * r21 > 0.05:
            return [[1.0, r12], [r21, 1.0]]


def rand_stable_params(generator, attempts=1000):
    """Random stable ModelParams with negative drift.

    :return: a ModelParams e.g. sigma=[[1.2, 0.3], [0.3, 0.8]], ...
    """
    for _ in range(attempts):
        params = model.ModelParams(rand_covariance(generator),
                                   rand_drift(generator),
                                   rand_reflection(generator))
        if model.validate_stability(params).stable:
            return params
    raise AssertionError('no stable parameter set in %d attempts' %
                         attempts)


def rand_product_form_params(generator, attempts=1000):
    """Random stable ModelParams satisfying the skew-symmetry condition
    2 Sigma = R D^-1 diag(Sigma) + diag(Sigma) D^-1 R^t, D = diag(R).
    """
    for _ in range(attempts):
        sigma = rand_covariance(generator, max_correlation=0.6)
        s11, s12, s22 = sigma[0][0], sigma[0][1], sigma[1][1]
        r12 = generator.uniform(-0.8, 0.8)
        r21 = (2.0 * s12 - r12 * s22) / s11
        params = model.ModelParams(sigma, rand_drift(generator),
                                   [[1.0, r12], [r21, 1.0]])
        if model.validate_stability(params).stable:
            return params
    raise AssertionError('no product-form parameter set in %d attempts' %
                         attempts)


def rand_angle(generator, margin=0.05):
    """Random angle in [margin, pi/2 - margin]."""
    return generator.uniform(margin, np.pi / 2 - margin)


def rand_complex(generator, size, scale=3.0):
    return (generator.normal(scale=scale, size=size) +
            1j * generator.normal(scale=scale, size=size))


def write_parameter_file(params, directory, name=None):
    """Write params as a key=value file and return its path."""
    name = name or data_utils.rand_name('srbm-params')
    path = os.path.join(directory, name + '.txt')
    text = models.ParameterFile(params.to_dict()).to_text()
    with open(path, 'w') as handle:
        handle.write(text)
    LOG.debug('Wrote parameter file %s', path)
    return path
