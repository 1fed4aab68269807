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
import numpy as np
from tempest.lib import decorators

from srbm_asymptotics import asymptotics
from srbm_asymptotics import boundary_transforms
from srbm_asymptotics import data_utils
from srbm_asymptotics import exceptions
from srbm_asymptotics import surface
from srbm_asymptotics.tests import base


@ddt.ddt
class ProductFormTest(base.BaseSrbmTest):

    @decorators.idempotent_id('01a2b3c4-d5e6-4f70-8192-a3b4c5d6e701')
    def test_identity_constants(self):
        fitted = boundary_transforms.fit_product_form(
            base.make_params('identity'))
        self.assertAllClose((2.0, 2.0), fitted.eta)
        self.assertAlmostEqual(4.0, fitted.big_c)
        self.assertAlmostEqual(2.0, fitted.c1)
        self.assertAlmostEqual(2.0, fitted.c2)
        self.assertAllClose((1.0, 1.0), fitted.local_time_rates())
        self.assertAlmostEqual(4 * np.exp(-4), fitted.density(1, 1))

    @decorators.idempotent_id('12b3c4d5-e6f7-4081-92a3-b4c5d6e7f802')
    def test_correlated_constants(self):
        fitted = boundary_transforms.require_product_form(
            base.make_params('correlated'))
        self.assertAllClose((4.0 / 3, 4.0 / 3), fitted.eta)
        self.assertLess(fitted.residual, 1e-12)

    @decorators.idempotent_id('23c4d5e6-f7a8-4192-a3b4-c5d6e7f8a903')
    def test_not_product_form(self):
        params = base.make_params('mixed')
        outcome = boundary_transforms.fit_product_form(params)
        self.assertIsInstance(outcome, exceptions.NotProductForm)
        self.assertRaisesSrbm(exceptions.NotProductForm, None,
                              boundary_transforms.require_product_form,
                              params)

    @decorators.idempotent_id('34d5e6f7-a8b9-42a3-b4c5-d6e7f8a9b004')
    def test_random_product_forms(self):
        generator = data_utils.rng(23)
        for _ in range(10):
            params = data_utils.rand_product_form_params(generator)
            fitted = boundary_transforms.fit_product_form(params)
            self.assertIsInstance(fitted, boundary_transforms.ProductFormModel)
            self.assertTrue(np.all(np.array(fitted.eta) > 0))

    @decorators.idempotent_id('45e6f7a8-b9c0-43b4-c5d6-e7f8a9b0c105')
    def test_transform_view(self):
        fitted = boundary_transforms.fit_product_form(
            base.make_params('identity'))
        bt = fitted.boundary_transform()
        self.assertEqual(2.0, bt.abscissa(boundary_transforms.PHI1))
        self.assertEqual(1.0, bt.phi2(0.0))
        hidden = fitted.boundary_transform(declare_abscissa=False)
        self.assertEqual(0.0, hidden.abscissa2)


class RationalTransformTest(base.BaseSrbmTest):

    @decorators.idempotent_id('56f7a8b9-c0d1-44c5-d6e7-f8a9b0c1d206')
    def test_values(self):
        bt = boundary_transforms.RationalBoundaryTransform(1, 3, 2, 4)
        self.assertAlmostEqual(0.5, bt.phi1(1.0))
        self.assertAlmostEqual(1.0, bt.phi2(2.0))
        self.assertEqual(3.0, bt.abscissa1)
        self.assertAlmostEqual(1.5, bt.scaled(3).phi1(1.0))

    @decorators.idempotent_id('67a8b9c0-d1e2-45d6-e7f8-a9b0c1d2e307')
    def test_invalid(self):
        self.assertRaisesSrbm(
            exceptions.InvalidInput, None,
            boundary_transforms.RationalBoundaryTransform, 1, 0, 1, 3)


@ddt.ddt
class ContinuationTest(base.BaseSrbmTest):

    def _fitted(self, name='identity'):
        params = base.make_params(name)
        return params, boundary_transforms.fit_product_form(params)

    @decorators.idempotent_id('78b9c0d1-e2f3-46e7-f8a9-b0c1d2e3f408')
    @ddt.data('identity', 'correlated')
    def test_continuation_matches_closed_form(self, name):
        params, fitted = self._fitted(name)
        geometry = surface.SurfaceGeometry(params)
        hidden = fitted.boundary_transform(declare_abscissa=False)
        for t in np.linspace(0.1, 2 * np.pi - 0.1, 37):
            s = surface.SurfacePoint.from_angle(t)
            theta1, theta2 = geometry.coordinates(s)
            if abs(theta1 - fitted.eta[0]) < 1e-3:
                continue
            value = boundary_transforms.continuation_value(
                s, hidden, boundary_transforms.PHI2, params)
            self.assertLess(abs(value - fitted.phi2(theta1)),
                            1e-9 * max(1.0, abs(value)))

    @decorators.idempotent_id('89c0d1e2-f3a4-47f8-a9b0-c1d2e3f4a509')
    def test_continuation_phi1(self):
        params, fitted = self._fitted()
        geometry = surface.SurfaceGeometry(params)
        hidden = fitted.boundary_transform(declare_abscissa=False)
        s = surface.SurfacePoint.from_angle(0.2)
        theta2 = geometry.h_theta2(s)
        value = boundary_transforms.continuation_value(
            s, hidden, boundary_transforms.PHI1, params)
        self.assertLess(abs(value - fitted.phi1(theta2)), 1e-9)

    @decorators.idempotent_id('9ad1e2f3-a4b5-48a9-b0c1-d2e3f4a5b610')
    def test_diverges(self):
        params, fitted = self._fitted()
        hidden = fitted.boundary_transform(declare_abscissa=False)
        s = surface.SurfacePoint.from_angle(0.3)
        self.assertRaisesSrbm(exceptions.ContinuationDiverged,
                              {'rotations': 0},
                              boundary_transforms.continuation_value,
                              s, hidden, boundary_transforms.PHI2, params,
                              max_rotations=0)

    @decorators.idempotent_id('9ad1e2f3-a4b5-48a9-b0c1-d2e3f4a5b614')
    def test_pole_hit(self):
        params, fitted = self._fitted()
        hidden = fitted.boundary_transform(declare_abscissa=False)
        # zeta maps it to theta** = (2, 0), where gamma2 vanishes
        s = surface.SurfacePoint.from_angle(np.pi / 4)
        self.assertRaisesSrbm(exceptions.PoleHit, None,
                              boundary_transforms.continuation_value,
                              s, hidden, boundary_transforms.PHI2, params)

    @decorators.idempotent_id('abe2f3a4-b5c6-49b0-c1d2-e3f4a5b6c711')
    def test_rotation_factor_is_product_formula(self):
        params, fitted = self._fitted('correlated')
        geometry = surface.SurfaceGeometry(params)
        s = surface.SurfacePoint.from_angle(1.1)
        rotated = geometry.rotate(s, 1)
        factor = boundary_transforms.rotation_factor(
            s, boundary_transforms.PHI2, params, 1)
        theta1 = geometry.h_theta1(s)
        self.assertLess(abs(fitted.phi2(theta1) -
                            factor * fitted.phi2(
                                geometry.h_theta1(rotated))), 1e-9)

    @decorators.idempotent_id('bcf3a4b5-c6d7-4ac1-d2e3-f4a5b6c7d812')
    def test_residue(self):
        params, fitted = self._fitted()
        p_prime, _ = asymptotics.enumerate_poles(params, np.pi / 6)
        residue = boundary_transforms.residue_at(
            p_prime[0], fitted.boundary_transform(), params)
        # phi2 = 2 / (2 - theta1)
        self.assertAlmostEqual(-2.0, residue.real, places=8)
        self.assertAlmostEqual(0.0, residue.imag, places=8)

    @decorators.idempotent_id('cda4b5c6-d7e8-4bd2-e3f4-a5b6c7d8e913')
    def test_residue_of_unknown_order(self):
        params, fitted = self._fitted()
        p_prime, _ = asymptotics.enumerate_poles(params, np.pi / 6)
        candidate = p_prime[0]
        candidate.order = None
        self.assertRaisesSrbm(exceptions.ResidueUnstable, None,
                              boundary_transforms.residue_at, candidate,
                              fitted.boundary_transform(), params)
