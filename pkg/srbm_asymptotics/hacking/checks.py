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

import re

from tempest.hacking import checks

LEGACY_RANDOM = re.compile(
    r'\b(?:np|numpy)\.random\.(?:seed|rand|randn|randint|random|normal|'
    r'uniform|choice|shuffle|standard_normal)\(')


def no_legacy_numpy_random(logical_line, filename):
    """Check for the global numpy random state

    S001: np.random.seed(42)
    S001: numpy.random.normal(size=3)
    Okay: np.random.default_rng(42).normal(size=3)
    Okay: np.random.Generator(np.random.Philox(seed))
    """
    if LEGACY_RANDOM.search(logical_line):
        yield (0, 'S001: use a numpy.random.Generator instead of the global '
                  'numpy random state')


def factory(register):
    # Imported from Tempest
    register(checks.no_setup_teardown_class_for_tests)
    register(checks.no_vi_headers)
    register(checks.no_mutable_default_args)
    register(checks.no_testtools_skip_decorator)
    # Local
    register(no_legacy_numpy_random)
