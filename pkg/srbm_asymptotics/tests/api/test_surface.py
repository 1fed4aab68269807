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

from srbm_asymptotics import data_utils
from srbm_asymptotics import exceptions
from srbm_asymptotics import kernel
from srbm_asymptotics import surface
from srbm_asymptotics.tests import base


def _random_s(generator, size):
    return np.exp(generator.normal(scale=0.7, size=size) +
                  1j * generator.uniform(0, 2 * np.pi, size=size))


@ddt.ddt
class SurfaceGeometryTest(base.BaseSrbmTest):

    @decorators.idempotent_id('0b1c2d3e-4f5a-4b6c-8d7e-9f0a1b2c3d01')
    def test_identity_parametrization(self):
        geometry = surface.SurfaceGeometry(base.make_params('identity'))
        self.assertAlmostEqual(np.pi / 2, geometry.beta)
        self.assertAlmostEqual(1.0, geometry.m1)
        self.assertAlmostEqual(np.sqrt(2) / 2, geometry.h1)
        theta1, theta2 = geometry.coordinates(np.exp(0.25j * np.pi))
        self.assertAlmostEqual(2.0, theta1)
        self.assertAlmostEqual(2.0, theta2)

    @decorators.idempotent_id('1c2d3e4f-5a6b-4c7d-9e8f-0a1b2c3d4e02')
    @ddt.data('identity', 'mixed', 'iib', 'correlated')
    def test_curve_and_automorphisms(self, name):
        params = base.make_params(name)
        geometry = surface.SurfaceGeometry(params)
        generator = data_utils.rng(13)
        for s in _random_s(generator, 1000):
            theta1, theta2 = geometry.coordinates(s)
            self.assertLess(abs(kernel.gamma(params, theta1, theta2)),
                            1e-9 * kernel.gamma_scale(params, theta1,
                                                      theta2))
            self.assertLess(abs(geometry.zeta(geometry.zeta(s)).s - s),
                            1e-9 * abs(s))
            self.assertLess(abs(geometry.eta(geometry.eta(s)).s - s),
                            1e-9 * abs(s))
            self.assertLess(abs(geometry.h_theta1(geometry.zeta(s)) -
                                theta1), 1e-9 * max(1.0, abs(theta1)))
            self.assertLess(abs(geometry.h_theta2(geometry.eta(s)) -
                                theta2), 1e-9 * max(1.0, abs(theta2)))

    @decorators.idempotent_id('2d3e4f5a-6b7c-4d8e-0f9a-1b2c3d4e5f03')
    def test_rotation_is_eta_after_zeta(self):
        geometry = surface.SurfaceGeometry(base.make_params('correlated'))
        s = 0.3 + 0.8j
        self.assertAlmostEqual(geometry.eta(geometry.zeta(s)).s,
                               geometry.rotate(s, 1).s)
        self.assertAlmostEqual(geometry.zeta(geometry.eta(s)).s,
                               geometry.rotate(s, -1).s)

    @decorators.idempotent_id('3e4f5a6b-7c8d-4e9f-1a0b-2c3d4e5f6a04')
    def test_poles_of_coordinates(self):
        geometry = surface.SurfaceGeometry(base.make_params('identity'))
        self.assertIs(surface.INFINITY, geometry.h_theta1(0))
        self.assertTrue(geometry.zeta(surface.INFINITY).s == 0)
        self.assertTrue(geometry.eta(0).is_infinite)

    @decorators.idempotent_id('4f5a6b7c-8d9e-4f0a-2b1c-3d4e5f6a7b05')
    def test_ellipse_round_trip(self):
        params = base.make_params('iib')
        geometry = surface.SurfaceGeometry(params)
        for point in geometry.points(64):
            s = geometry.ellipse_to_s(point)
            self.assertTrue(s.on_circle())
            self.assertTrue(point.is_close(geometry.ellipse_point(s), 1e-9))

    @decorators.idempotent_id('5a6b7c8d-9e0f-4a1b-3c2d-4e5f6a7b8c06')
    def test_branch_point_images(self):
        params = base.make_params('correlated')
        geometry = surface.SurfaceGeometry(params)
        special = kernel.special_points(params)
        for s, point in ((geometry.s1_plus, special.s1_plus),
                         (geometry.s1_minus, special.s1_minus),
                         (geometry.s2_plus, special.s2_plus),
                         (geometry.s2_minus, special.s2_minus)):
            self.assertTrue(point.is_close(geometry.ellipse_point(s), 1e-9))

    @decorators.idempotent_id('6b7c8d9e-0f1a-4b2c-4d3e-5f6a7b8c9d07')
    def test_not_on_ellipse(self):
        geometry = surface.SurfaceGeometry(base.make_params('identity'))
        self.assertRaisesSrbm(exceptions.NotOnEllipse, None,
                              geometry.ellipse_to_s,
                              kernel.EllipsePoint(1.0, 1.0))

    @decorators.idempotent_id('7c8d9e0f-1a2b-4c3d-5e4f-6a7b8c9d0e08')
    def test_sheet_square_root(self):
        params = base.make_params('mixed')
        geometry = surface.SurfaceGeometry(params)
        generator = data_utils.rng(17)
        for s in _random_s(generator, 200):
            root = geometry.sqrt_discriminant(s)
            d = kernel.discriminant(params, geometry.h_theta1(s))
            self.assertLess(abs(root * root - d), 1e-9 * max(1.0, abs(d)))
            root = geometry.sqrt_discriminant_tilde(s)
            d = kernel.discriminant_tilde(params, geometry.h_theta2(s))
            self.assertLess(abs(root * root - d), 1e-9 * max(1.0, abs(d)))

    @decorators.idempotent_id('8d9e0f1a-2b3c-4d4e-6f5a-7b8c9d0e1f09')
    def test_halves(self):
        geometry = surface.SurfaceGeometry(base.make_params('identity'))
        upper = surface.SurfacePoint.from_angle(np.pi / 3)
        self.assertTrue(geometry.in_phi2_half(upper))
        self.assertFalse(geometry.in_phi2_half(upper.s.conjugate()))
        # beta = pi/2: the phi1 half is (-pi/2, pi/2)
        self.assertTrue(geometry.in_phi1_half(surface.SurfacePoint(1.0)))
        self.assertFalse(geometry.in_phi1_half(surface.SurfacePoint(-1.0)))
        # the sheet root is positive on the phi2 half
        self.assertGreater(geometry.sqrt_discriminant(upper).real, 0)


class ArcTest(base.BaseSrbmTest):

    @decorators.idempotent_id('9e0f1a2b-3c4d-4e5f-7a6b-8c9d0e1f2a10')
    def test_membership(self):
        arc = surface.Arc(1.0, 1j, a_closed=True, b_closed=False)
        self.assertTrue(surface.in_arc(1.0, arc))
        self.assertFalse(surface.in_arc(1j, arc))
        self.assertTrue(surface.in_arc(np.exp(0.3j), arc))
        self.assertFalse(surface.in_arc(-1.0, arc))
        self.assertIn(np.exp(1j), arc)

    @decorators.idempotent_id('0f1a2b3c-4d5e-4f6a-8b7c-9d0e1f2a3b11')
    def test_avoid_picks_the_other_arc(self):
        arc = surface.Arc(1.0, 1j, avoid=np.pi / 4)
        self.assertFalse(surface.in_arc(np.exp(0.25j * np.pi), arc))
        self.assertTrue(surface.in_arc(-1.0, arc))
        self.assertAlmostEqual(1.5 * np.pi, arc.length)

    @decorators.idempotent_id('1a2b3c4d-5e6f-4a7b-9c8d-0e1f2a3b4c12')
    def test_degenerate(self):
        self.assertRaisesSrbm(exceptions.DegenerateArc, None,
                              surface.Arc, 1j, 1j)

    @decorators.idempotent_id('2b3c4d5e-6f7a-4b8c-0d9e-1f2a3b4c5d13')
    def test_full_circle(self):
        arc = surface.Arc.full_circle(surface.SurfacePoint(-1.0))
        self.assertFalse(surface.in_arc(-1.0, arc))
        self.assertTrue(surface.in_arc(1.0, arc))
        self.assertTrue(surface.in_arc(np.exp(3j), arc))

    @decorators.idempotent_id('3c4d5e6f-7a8b-4c9d-1e0f-2a3b4c5d6e14')
    def test_point_off_circle(self):
        arc = surface.Arc(1.0, 1j)
        self.assertRaisesSrbm(exceptions.InvalidInput, None,
                              surface.in_arc, 0.5, arc)
