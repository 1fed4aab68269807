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

from oslo_log import log as logging
from tempest.lib.common.utils import test_utils

from srbm_asymptotics import exceptions

LOG = logging.getLogger(__name__)

# relative precision reachable when summing terms of magnitude ``scale``
ROUNDING = 1e-14


def wait_for_convergence(evaluate, label, start, target, max_doublings):
    """Doubles the resolution until two successive values agree.

    ``evaluate(resolution)`` returns ``(value, scale)`` where ``scale`` is
    the magnitude of the terms summed into ``value``; agreement is
    relative to the value, or to rounding of the scale when the value is
    the result of cancellation.

    :return: (value, resolution)
    """
    LOG.debug('Waiting for %s to converge', label)
    resolution = start
    previous, _ = evaluate(resolution)
    change = None

    for _ in range(max_doublings):
        resolution *= 2
        current, scale = evaluate(resolution)
        change = abs(current - previous)
        if change <= max(target * abs(current), ROUNDING * scale):
            LOG.debug('%s converged at resolution %d (change %s)',
                      label, resolution, change)
            return current, resolution
        previous = current

    message = ('no agreement within %(doublings)s doublings, last change '
               '%(change)s, target %(target)s' %
               {'doublings': max_doublings,
                'change': change,
                'target': target})

    caller = test_utils.find_test_caller()

    if caller:
        message = '(%s) %s' % (caller, message)

    raise exceptions.ConvergenceFailure(label=label, reason=message)
