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
import ddt
from tempest.lib import decorators

from srbm_asymptotics.hacking import checks
from srbm_asymptotics.tests import base


@ddt.ddt
class HackingTest(base.BaseSrbmTest):

    @decorators.idempotent_id('d2e3f4a5-b6c7-4d8e-9f0a-1b2c3d4e5f06')
    @ddt.data('np.random.seed(42)',
              'x = numpy.random.normal(size=3)',
              'noise = np.random.standard_normal((2, 2))')
    def test_legacy_random(self, line):
        errors = list(checks.no_legacy_numpy_random(line, 'srbm.py'))
        self.assertEqual(1, len(errors))
        self.assertTrue(errors[0][1].startswith('S001'))

    @decorators.idempotent_id('e3f4a5b6-c7d8-4e9f-0a1b-2c3d4e5f6a07')
    @ddt.data('rng = np.random.default_rng(42)',
              'g = np.random.Generator(np.random.Philox(seed))',
              'children = np.random.SeedSequence(seed).spawn(2)')
    def test_generators_allowed(self, line):
        self.assertEqual([], list(checks.no_legacy_numpy_random(line,
                                                                'srbm.py')))

    @decorators.idempotent_id('f4a5b6c7-d8e9-4f0a-1b2c-3d4e5f6a7b08')
    def test_factory_registers_local_check(self):
        registered = []
        checks.factory(registered.append)
        self.assertIn(checks.no_legacy_numpy_random, registered)
        self.assertEqual(5, len(registered))
