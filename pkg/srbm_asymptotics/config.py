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
from oslo_config import cfg

CONF = cfg.CONF

asymptotics_group = cfg.OptGroup(name='asymptotics',
                                 title='Saddle point and pole classification')

AsymptoticsGroup = [
    cfg.IntOpt('max_orbit_depth',
               default=16,
               min=0,
               help="Number of rotations applied to the zeros of the "
                    "boundary forms when enumerating pole candidates."),
    cfg.FloatOpt('arc_tolerance',
                 default=1e-9,
                 help="Angular tolerance in radians for arc membership."),
    cfg.FloatOpt('coincidence_tolerance',
                 default=1e-7,
                 help="Angular distance below which the saddle point is "
                      "treated as coinciding with a dominant pole."),
    cfg.FloatOpt('tie_tolerance',
                 default=1e-9,
                 help="Relative tolerance for two pole rates to tie."),
    cfg.FloatOpt('saddle_fd_step',
                 default=1e-5,
                 help="Finite difference step in radians for the second "
                      "derivative at the saddle point."),
    cfg.IntOpt('saddle_samples',
               default=10000,
               min=16,
               help="Ellipse samples used by the brute-force saddle."),
    cfg.BoolOpt('saddle_crosscheck',
                default=True,
                help="Cross-check the closed-form saddle against the "
                     "brute-force argmax."),
    cfg.FloatOpt('saddle_crosscheck_tolerance',
                 default=1e-6,
                 help="Coordinate tolerance of the saddle cross-check."),
]

boundary_transforms_group = cfg.OptGroup(
    name='boundary_transforms',
    title='Boundary transform continuation and residues')

BoundaryTransformsGroup = [
    cfg.IntOpt('max_rotations',
               default=64,
               min=1,
               help="Rotations allowed before a continuation gives up."),
    cfg.FloatOpt('domain_slack',
                 default=1e-12,
                 help="Slack of the initial-domain membership test."),
    cfg.FloatOpt('residue_offset',
                 default=1e-3,
                 help="Largest angular offset used by residue "
                      "extrapolation."),
    cfg.FloatOpt('residue_spread',
                 default=1e-6,
                 help="Largest relative spread of residue extrapolants."),
    cfg.FloatOpt('product_form_tolerance',
                 default=1e-9,
                 help="Residual below which a product form is accepted."),
]

quadrature_group = cfg.OptGroup(name='quadrature',
                                title='Density quadrature options')

QuadratureGroup = [
    cfg.FloatOpt('truncation_factor',
                 default=40.0,
                 help="Integration runs over |Im theta| <= factor / decay "
                      "slope."),
    cfg.IntOpt('gauss_nodes',
               default=64,
               min=2,
               help="Gauss-Legendre nodes per panel."),
    cfg.IntOpt('initial_panels',
               default=8,
               min=1,
               help="Panels of the first quadrature pass."),
    cfg.FloatOpt('target',
                 default=1e-10,
                 help="Target relative change between panel doublings."),
    cfg.IntOpt('max_doublings',
               default=8,
               min=1,
               help="Panel doublings allowed before giving up."),
    cfg.BoolOpt('contour_shift',
                default=True,
                help="Move the integration lines inside the declared "
                     "domain of analyticity of the boundary transforms."),
    cfg.FloatOpt('shift_fraction',
                 default=0.9,
                 help="Fraction of the admissible abscissa used by the "
                      "contour shift."),
    cfg.FloatOpt('negative_clamp',
                 default=1e-12,
                 help="Negative densities above minus this value are "
                      "clamped to zero."),
]

simulation_group = cfg.OptGroup(name='simulation',
                                title='Monte-Carlo simulation options')

SimulationGroup = [
    cfg.FloatOpt('step',
                 default=1e-3,
                 help="Euler time step."),
    cfg.FloatOpt('total_time',
                 default=110.0,
                 help="Simulated time per replica, burn-in included."),
    cfg.FloatOpt('burn_in',
                 default=10.0,
                 help="Time discarded at the start of every replica."),
    cfg.IntOpt('seed',
               default=20161017,
               help="Root seed of the replica streams."),
    cfg.FloatOpt('cell_width',
                 default=0.1,
                 help="Width of the occupation histogram cells."),
    cfg.FloatOpt('extent',
                 default=6.0,
                 help="Side of the square covered by the histogram."),
    cfg.IntOpt('replicas',
               default=1000,
               min=1,
               help="Number of independent replicas."),
    cfg.IntOpt('chunk_steps',
               default=512,
               min=1,
               help="Steps generated and binned per chunk."),
]

compare_group = cfg.OptGroup(name='compare',
                             title='Prediction versus oracle comparison')

CompareGroup = [
    cfg.FloatOpt('window_lo',
                 default=0.5,
                 help="Lower radius of the ray-rate regression window."),
    cfg.FloatOpt('window_hi',
                 default=2.5,
                 help="Upper radius of the ray-rate regression window."),
    cfg.FloatOpt('simulation_tolerance',
                 default=0.10,
                 help="Relative tolerance of the simulated rate."),
    cfg.FloatOpt('quadrature_tolerance',
                 default=0.01,
                 help="Relative tolerance of the quadrature rate."),
    cfg.ListOpt('quadrature_radii',
                default=['8', '12'],
                help="Radii used to measure the quadrature rate."),
]

_GROUPS = [
    (asymptotics_group, AsymptoticsGroup),
    (boundary_transforms_group, BoundaryTransformsGroup),
    (quadrature_group, QuadratureGroup),
    (simulation_group, SimulationGroup),
    (compare_group, CompareGroup),
]


def register_opt_group(conf, opt_group, options):
    conf.register_group(opt_group)
    for opt in options:
        conf.register_opt(opt, group=opt_group.name)


def register_opts(conf=CONF):
    for group, options in _GROUPS:
        register_opt_group(conf, group, options)


def list_opts():
    return [(group.name, options) for group, options in _GROUPS]


register_opts()
