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
import io

import ddt
import numpy as np
from oslo_log import log as logging
from tempest.lib import decorators

from srbm_asymptotics import exceptions
from srbm_asymptotics import model
from srbm_asymptotics import simulator
from srbm_asymptotics.tests import base

LOG = logging.getLogger(__name__)

MIXED_REFL = [[1, -0.5], [-0.5, 1]]


@ddt.ddt
class ReflectTest(base.BaseSrbmTest):

    @decorators.idempotent_id('a1b2c3d4-e5f6-4a7b-8c9d-0e1f2a3b4c01')
    @ddt.data(
        # interior
        ((0.3, 0.4), np.eye(2), (0.3, 0.4), (0, 0)),
        # face 1
        ((-0.3, 0.5), np.eye(2), (0, 0.5), (0.3, 0)),
        ((-0.2, 0.5), MIXED_REFL, (0, 0.4), (0.2, 0)),
        # face 2
        ((0.5, -0.2), MIXED_REFL, (0.4, 0), (0, 0.2)),
        # corner
        ((-0.2, -0.1), MIXED_REFL, (0, 0), (1.0 / 3, 4.0 / 15)),
    )
    @ddt.unpack
    def test_reflect_step(self, y, refl, z, dl):
        got_z, got_dl = simulator.reflect_step(y, refl)
        LOG.info('Reflected %s to %s with push %s', y, got_z, got_dl)
        self.assertAllClose(z, got_z, atol=1e-15)
        self.assertAllClose(dl, got_dl, atol=1e-15)

    @decorators.idempotent_id('b2c3d4e5-f6a7-4b8c-9d0e-1f2a3b4c5d02')
    def test_batch_matches_single_steps(self):
        ys = np.array([[0.3, 0.4], [-0.2, 0.5], [0.5, -0.2], [-0.2, -0.1]])
        z, dl = simulator.reflect_batch(ys, MIXED_REFL)
        for row, y in enumerate(ys):
            single_z, single_dl = simulator.reflect_step(y, MIXED_REFL)
            self.assertAllClose(single_z, z[row])
            self.assertAllClose(single_dl, dl[row])
        self.assertTrue(np.all(z >= 0))
        self.assertAllClose(ys + dl.dot(np.transpose(MIXED_REFL)), z,
                            atol=1e-15)

    @decorators.idempotent_id('c3d4e5f6-a7b8-4c9d-0e1f-2a3b4c5d6e03')
    def test_infeasible(self):
        self.assertRaisesSrbm(exceptions.ReflectionInfeasible,
                              {'value': [-1.0, -1.0]},
                              simulator.reflect_step, (-1.0, -1.0),
                              [[1, -2], [-2, 1]])


class SimConfigTest(base.BaseSrbmTest):

    @decorators.idempotent_id('d4e5f6a7-b8c9-4d0e-1f2a-3b4c5d6e7f04')
    def test_derived_sizes(self):
        sim_config = simulator.SimConfig(step=0.01, total_time=20,
                                         burn_in=1, cell_width=0.25,
                                         extent=4)
        self.assertEqual(2000, sim_config.steps)
        self.assertEqual(100, sim_config.burn_steps)
        self.assertEqual(16, sim_config.bins)
        edges = sim_config.edges()
        self.assertEqual(18, len(edges))
        self.assertEqual(np.inf, edges[-1])
        self.assertAlmostEqual(4.0, edges[-2])

    @decorators.idempotent_id('e5f6a7b8-c9d0-4e1f-2a3b-4c5d6e7f8a05')
    def test_burn_in_beyond_horizon(self):
        self.assertRaisesSrbm(exceptions.InvalidInput, None,
                              simulator.SimConfig, total_time=10,
                              burn_in=10)

    @decorators.idempotent_id('f6a7b8c9-d0e1-4f2a-3b4c-5d6e7f8a9b06')
    def test_defaults_follow_config(self):
        self.conf.config(seed=7, replicas=3, group='simulation')
        sim_config = simulator.SimConfig()
        self.assertEqual(7, sim_config.seed)
        self.assertEqual(3, sim_config.replicas)


class RunTest(base.BaseSrbmTest):

    def setUp(self):
        super(RunTest, self).setUp()
        self.params = base.make_params('identity')
        self.sim_config = simulator.SimConfig(
            step=0.01, total_time=20, burn_in=1, seed=11, cell_width=0.25,
            extent=4, replicas=2, chunk_steps=500)

    @decorators.idempotent_id('a7b8c9d0-e1f2-4a3b-4c5d-6e7f8a9b0c07')
    def test_bookkeeping(self):
        hist = simulator.run(self.params, self.sim_config)
        self.assertEqual(2 * (2000 - 100), hist.samples)
        self.assertEqual(hist.samples, hist.counts.sum())
        self.assertTrue(np.all(hist.mean() > 0))
        self.assertTrue(np.all(hist.local_time >= 0))
        inner = hist.density().sum() * hist.cell_width ** 2
        overflow = (hist.counts[-1, :].sum() +
                    hist.counts[:-1, -1].sum()) / hist.samples
        self.assertAlmostEqual(1.0, inner + overflow)
        self.assertAlmostEqual(1.0, hist.marginal_tail(0, 0.0))

    @decorators.idempotent_id('f4a5b6c7-d8e9-4f0a-1b2c-3d4e5f6a7b21')
    def test_mean_stderr(self):
        hist = simulator.run(self.params, self.sim_config)
        self.assertEqual((2, 2), hist.replica_sums.shape)
        self.assertAllClose(hist.state_sum, hist.replica_sums.sum(axis=0))
        replica_means = hist.replica_sums / (hist.samples / 2)
        expected = np.abs(replica_means[0] - replica_means[1]) / 2
        self.assertAllClose(expected, hist.mean_stderr())

        self.sim_config.replicas = 1
        single = simulator.run(self.params, self.sim_config)
        self.assertRaisesSrbm(exceptions.InsufficientData, None,
                              single.mean_stderr)

    @decorators.idempotent_id('b8c9d0e1-f2a3-4b4c-5d6e-7f8a9b0c1d08')
    def test_reproducible(self):
        first = simulator.run(self.params, self.sim_config)
        second = simulator.run(self.params, self.sim_config)
        self.assertEqual(first, second)

        self.sim_config.seed = 12
        other = simulator.run(self.params, self.sim_config)
        self.assertNotEqual(first, other)

    @decorators.idempotent_id('c9d0e1f2-a3b4-4c5d-6e7f-8a9b0c1d2e09')
    def test_unstable(self):
        params = model.ModelParams(np.eye(2), [1, 1], np.eye(2))
        self.assertRaises(exceptions.UnstableModel, simulator.run, params,
                          self.sim_config)

    @decorators.idempotent_id('d0e1f2a3-b4c5-4d6e-7f8a-9b0c1d2e3f10')
    def test_csv(self):
        hist = simulator.run(self.params, self.sim_config)
        stream = io.StringIO()
        hist.write_csv(stream)
        lines = stream.getvalue().splitlines()
        self.assertEqual(','.join(simulator.HISTOGRAM_COLUMNS), lines[0])
        self.assertEqual(1 + 16 * 16, len(lines))
        self.assertTrue(lines[1].startswith('0.125,0.125,'))

        stream = io.StringIO()
        hist.write_local_time_csv(stream)
        lines = stream.getvalue().splitlines()
        self.assertEqual(','.join(simulator.LOCAL_TIME_COLUMNS), lines[0])
        self.assertEqual(['1', '2'], [line.split(',')[0]
                                      for line in lines[1:]])


class RayRateTest(base.BaseSrbmTest):

    def _histogram(self, width=0.25, bins=16, total=1e6):
        edges = np.append(np.linspace(0, bins * width, bins + 1), np.inf)
        centers = (np.arange(bins) + 0.5) * width
        counts = np.zeros((bins + 1, bins + 1))
        counts[:-1, :-1] = total * np.exp(-2 * np.add.outer(centers,
                                                            centers))
        return simulator.OccupationHistogram(edges, 0.01, counts=counts,
                                             samples=counts.sum())

    @decorators.idempotent_id('e1f2a3b4-c5d6-4e7f-8a9b-0c1d2e3f4a11')
    def test_exponential_along_diagonal(self):
        rate = simulator.estimate_ray_rate(self._histogram(), np.pi / 4,
                                           window=(0.5, 3.0))
        self.assertRelative(2 * np.sqrt(2), rate.rate, 1e-9)
        self.assertGreaterEqual(rate.cells, 4)

    @decorators.idempotent_id('f2a3b4c5-d6e7-4f8a-9b0c-1d2e3f4a5b12')
    def test_empty(self):
        edges = np.append(np.linspace(0, 4, 17), np.inf)
        hist = simulator.OccupationHistogram(edges, 0.01)
        self.assertRaisesSrbm(exceptions.InsufficientData, None,
                              simulator.estimate_ray_rate, hist, np.pi / 4,
                              (0.5, 3.0))

    @decorators.idempotent_id('a3b4c5d6-e7f8-4a9b-0c1d-2e3f4a5b6c13')
    def test_window_outside_grid(self):
        self.assertRaisesSrbm(exceptions.InvalidInput, None,
                              simulator.estimate_ray_rate, self._histogram(),
                              np.pi / 4, (0.5, 30.0))

    @decorators.idempotent_id('b4c5d6e7-f8a9-4b0c-1d2e-3f4a5b6c7d14')
    def test_tail_level_not_an_edge(self):
        self.assertRaisesSrbm(exceptions.InvalidInput, None,
                              self._histogram().marginal_tail, 0, 0.3)
