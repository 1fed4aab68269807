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
"""Command line front end.

    srbm-asymptotics [--config-file FILE] COMMAND PARAM_FILE [options]

Commands: validate, classify, sweep, poles, product-form, density,
simulate, compare.  Angles carry a unit suffix, ``30deg`` or ``0.52rad``.

CSV layouts:

    sweep      alpha,regime,rate,threshold_markers
               preceded by ``# alpha1=...`` lines for defined thresholds
    simulate   x1_center,x2_center,density     (--output)
               face,local_time,rate            (--local-time-output)

Exit codes: 0 success, 2 unstable model, 3 unsupported drift, 64 usage,
70 numeric failure.
"""
import csv
import math
import re
import sys

import jsonschema
from oslo_config import cfg
from oslo_log import log as logging
from oslo_serialization import jsonutils

from srbm_asymptotics import asymptotics
from srbm_asymptotics import boundary_transforms
from srbm_asymptotics import config
from srbm_asymptotics import density
from srbm_asymptotics import exceptions
from srbm_asymptotics import model
from srbm_asymptotics.schemas import report as report_schema
from srbm_asymptotics import simulator

CONF = config.CONF
LOG = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_UNSTABLE = 2
EXIT_UNSUPPORTED = 3
EXIT_USAGE = 64
EXIT_NUMERIC = 70

PROJECT = 'srbm-asymptotics'

_ANGLE = re.compile(r'^\s*([-+0-9.eE]+)\s*(deg|rad)\s*$')


def fmt(value):
    """Six significant digits."""
    return '%.6g' % value


def fmt_point(point):
    return '(%s)' % ', '.join(fmt(x) for x in point)


def parse_angle(text):
    match = _ANGLE.match(text or '')
    if not match:
        raise exceptions.InvalidInput(
            reason='angle %r needs a deg or rad suffix' % text)
    try:
        value = float(match.group(1))
    except ValueError:
        raise exceptions.InvalidInput(reason='angle %r is not a number' %
                                             text)
    if not math.isfinite(value):
        raise exceptions.InvalidInput(reason='angle %r is not finite' % text)
    return math.radians(value) if match.group(2) == 'deg' else value


def _finite(name, value):
    if value is not None and not math.isfinite(value):
        raise exceptions.InvalidInput(reason='%s=%s is not finite' %
                                             (name, value))
    return value


def _dump(document, schema, out):
    jsonschema.validate(document, schema)
    out.write(jsonutils.dumps(document, sort_keys=True) + '\n')


def _load(args):
    params = model.ModelParams.from_file(args.param_file)
    LOG.debug('Loaded %s from %s', params, args.param_file)
    return params


def _product_form(params):
    fitted = boundary_transforms.fit_product_form(params)
    if isinstance(fitted, exceptions.NotProductForm):
        LOG.info('No product form: %s', fitted)
        return None
    return fitted


def cmd_validate(args, out):
    params = _load(args)
    report = model.validate_stability(params)
    out.write('exists=%s stable=%s violated=%s\n' % (
        str(report.exists).lower(), str(report.stable).lower(),
        ','.join(report.violated)))
    return EXIT_OK if report.stable else EXIT_UNSTABLE


def _render_report(report, out):
    if report.regime == asymptotics.UNTREATED:
        LOG.warning('Saddle point coincides with a pole at alpha=%s; only '
                    'the rate is reported', report.alpha)
        out.write('Untreated (saddle coincides with pole) rate=%s\n' %
                  fmt(report.rate))
    else:
        out.write('%s rate=%s prefactor=%s\n' % (
            report.regime, fmt(report.rate), report.prefactor))
    if report.leading_constant is not None:
        out.write('constant=%s\n' % fmt(report.leading_constant))
    if report.thresholds is not None:
        defined = report.thresholds.defined()
        out.write('case=%s%s\n' % (report.thresholds.case, ''.join(
            ' %s=%s' % (k, fmt(v)) for k, v in sorted(defined.items()))))
    points = ';'.join('%s:%s' % (fmt(p.theta1), fmt(p.theta2))
                      for p in report.dominant_points)
    out.write('%s,%s,%s,%s\n' % (report.regime, fmt(report.rate),
                                 report.prefactor, points))


def cmd_classify(args, out):
    params = _load(args)
    model.require_supported(params)
    alpha = parse_angle(args.alpha)
    fitted = _product_form(params)
    bt = fitted.boundary_transform() if fitted else None
    report = asymptotics.classify(params, alpha, bt=bt)
    if args.format == 'json':
        _dump(report.to_dict(), report_schema.decay_report, out)
    else:
        _render_report(report, out)
    return EXIT_OK


def _markers(previous, alpha, thresholds):
    if thresholds is None:
        return ''
    return ';'.join(name for name, value in
                    sorted(thresholds.defined().items())
                    if previous < value <= alpha)


def cmd_sweep(args, out):
    if args.n < 2:
        raise exceptions.InvalidInput(reason='--n must be at least 2')
    params = _load(args)
    model.require_supported(params)
    reports = asymptotics.sweep(params, args.n)
    stream = open(args.output, 'w') if args.output else out
    try:
        thresholds = reports[0].thresholds
        if thresholds is not None:
            for name, value in sorted(thresholds.defined().items()):
                stream.write('# %s=%s\n' % (name, fmt(value)))
        writer = csv.writer(stream, lineterminator='\n')
        writer.writerow(['alpha', 'regime', 'rate', 'threshold_markers'])
        previous = 0.0
        for report in reports:
            writer.writerow([fmt(report.alpha), report.regime,
                             fmt(report.rate),
                             _markers(previous, report.alpha, thresholds)])
            previous = report.alpha
    finally:
        if stream is not out:
            stream.close()
    return EXIT_OK


def cmd_poles(args, out):
    params = _load(args)
    model.require_supported(params)
    alpha = parse_angle(args.alpha)
    p_prime, p_second = asymptotics.enumerate_poles(params, alpha)
    if args.format == 'json':
        _dump({'alpha': alpha,
               'p_prime': [c.to_dict() for c in p_prime],
               'p_second': [c.to_dict() for c in p_second]},
              report_schema.pole_sets, out)
        return EXIT_OK
    for label, candidates in (('P_prime', p_prime),
                              ('P_second', p_second)):
        out.write('%s: %d\n' % (label, len(candidates)))
        for c in candidates:
            out.write('  %s %s depth=%d owner=%s rate=%s\n' % (
                fmt_point(c.point), c.source, c.orbit_depth, c.owner,
                fmt(c.rate(alpha))))
    return EXIT_OK


def cmd_product_form(args, out):
    params = _load(args)
    model.require_supported(params)
    fitted = boundary_transforms.fit_product_form(params)
    if isinstance(fitted, exceptions.NotProductForm):
        residual = fitted.kwargs['residual']
        if not math.isfinite(residual):
            residual = None
        document = {'product_form': False, 'residual': residual}
    else:
        document = dict(fitted.to_dict(), product_form=True)
    if args.format == 'json':
        _dump(document, report_schema.product_form, out)
    elif document['product_form']:
        out.write('eta=%s C=%s c1=%s c2=%s\n' % (
            fmt_point(fitted.eta), fmt(fitted.big_c), fmt(fitted.c1),
            fmt(fitted.c2)))
    else:
        out.write('not product form, residual=%s\n' % (
            'n/a' if residual is None else fmt(residual)))
    return EXIT_OK


def cmd_density(args, out):
    params = _load(args)
    model.require_supported(params)
    x1, x2 = _finite('x1', args.x1), _finite('x2', args.x2)
    fitted = boundary_transforms.require_product_form(params)
    value = density.density_eval(params, x1, x2,
                                 fitted.boundary_transform())
    out.write('density=%s closed_form=%s\n' % (
        fmt(value), fmt(fitted.density(x1, x2))))
    return EXIT_OK


def _sim_config(args, budget=None):
    replicas = args.replicas or CONF.simulation.replicas
    burn_in = CONF.simulation.burn_in
    total_time = _finite('total_time', args.total_time)
    if budget is not None:
        total_time = burn_in + budget / float(replicas)
    return simulator.SimConfig(step=_finite('step', args.step),
                               total_time=total_time, seed=args.seed,
                               replicas=replicas)


def cmd_simulate(args, out):
    params = _load(args)
    hist = simulator.run(params, _sim_config(args))
    if args.output:
        with open(args.output, 'w') as stream:
            hist.write_csv(stream)
    if args.local_time_output:
        with open(args.local_time_output, 'w') as stream:
            hist.write_local_time_csv(stream)
    out.write('time=%s mean=%s local_time_rates=%s\n' % (
        fmt(hist.total_time), fmt_point(hist.mean()),
        fmt_point(hist.local_time_rates())))
    return EXIT_OK


def quadrature_rate(params, alpha, bt, exponent, radii=None):
    """Rate from the density at two radii, log pi = c + p log r - r rate."""
    r1, r2 = radii or [float(r) for r in CONF.compare.quadrature_radii]
    pi1, pi2 = density.ray_density(params, alpha, (r1, r2), bt)
    if pi1 <= 0 or pi2 <= 0:
        raise exceptions.ConstantUnavailable(
            reason='density vanishes along the ray')
    return (math.log(pi1) - math.log(pi2) +
            exponent * math.log(r2 / r1)) / (r2 - r1)


def cmd_compare(args, out):
    params = _load(args)
    model.require_supported(params)
    alpha = parse_angle(args.alpha)
    report = asymptotics.classify(params, alpha)
    analytic = report.rate

    budget = _finite('sim_budget', args.sim_budget)
    hist = simulator.run(params, _sim_config(args, budget))
    simulated = simulator.estimate_ray_rate(hist, alpha)

    quadrature = None
    fitted = _product_form(params)
    if fitted is not None:
        quadrature = quadrature_rate(params, alpha,
                                     fitted.boundary_transform(),
                                     report.prefactor_exponent or 0.0)

    passed = (abs(simulated.rate - analytic) <=
              CONF.compare.simulation_tolerance * analytic)
    if quadrature is not None:
        passed = passed and (abs(quadrature - analytic) <=
                             CONF.compare.quadrature_tolerance * analytic)
    verdict = 'PASS' if passed else 'FAIL'

    if args.format == 'json':
        _dump({'alpha': alpha, 'regime': report.regime,
               'analytic_rate': analytic,
               'simulated_rate': simulated.rate,
               'simulated_stderr': simulated.stderr,
               'quadrature_rate': quadrature,
               'verdict': verdict}, report_schema.comparison, out)
    else:
        out.write('analytic   %s\n' % fmt(analytic))
        out.write('simulated  %s +- %s\n' % (fmt(simulated.rate),
                                             fmt(simulated.stderr)))
        out.write('quadrature %s\n' % (
            'n/a' if quadrature is None else fmt(quadrature)))
        out.write('%s\n' % verdict)
    return EXIT_OK


def _add_format(parser):
    parser.add_argument('--format', choices=('text', 'json'),
                        default='text')


def _add_simulation(parser):
    parser.add_argument('--replicas', type=int)
    parser.add_argument('--step', type=float)
    parser.add_argument('--total-time', dest='total_time', type=float)
    parser.add_argument('--seed', type=int)


def add_command_parsers(subparsers):
    parser = subparsers.add_parser('validate')
    parser.add_argument('param_file')
    parser.set_defaults(func=cmd_validate)

    parser = subparsers.add_parser('classify')
    parser.add_argument('param_file')
    parser.add_argument('--alpha', required=True)
    _add_format(parser)
    parser.set_defaults(func=cmd_classify)

    parser = subparsers.add_parser('sweep')
    parser.add_argument('param_file')
    parser.add_argument('--n', type=int, default=9)
    parser.add_argument('--output')
    parser.set_defaults(func=cmd_sweep)

    parser = subparsers.add_parser('poles')
    parser.add_argument('param_file')
    parser.add_argument('--alpha', required=True)
    _add_format(parser)
    parser.set_defaults(func=cmd_poles)

    parser = subparsers.add_parser('product-form')
    parser.add_argument('param_file')
    _add_format(parser)
    parser.set_defaults(func=cmd_product_form)

    parser = subparsers.add_parser('density')
    parser.add_argument('param_file')
    parser.add_argument('--x1', type=float, required=True)
    parser.add_argument('--x2', type=float, required=True)
    parser.set_defaults(func=cmd_density)

    parser = subparsers.add_parser('simulate')
    parser.add_argument('param_file')
    _add_simulation(parser)
    parser.add_argument('--output')
    parser.add_argument('--local-time-output', dest='local_time_output')
    parser.set_defaults(func=cmd_simulate)

    parser = subparsers.add_parser('compare')
    parser.add_argument('param_file')
    parser.add_argument('--alpha', required=True)
    parser.add_argument('--sim-budget', dest='sim_budget', type=float)
    _add_simulation(parser)
    _add_format(parser)
    parser.set_defaults(func=cmd_compare)


command_opt = cfg.SubCommandOpt('command',
                                title='Commands',
                                help='Available commands',
                                handler=add_command_parsers)

_EXIT_CODES = [
    (exceptions.UnstableModel, EXIT_UNSTABLE),
    (exceptions.UnsupportedDrift, EXIT_UNSUPPORTED),
    (exceptions.InvalidInput, EXIT_USAGE),
    (exceptions.SrbmException, EXIT_NUMERIC),
]


def exit_code(exc):
    for cls, code in _EXIT_CODES:
        if isinstance(exc, cls):
            return code
    return EXIT_NUMERIC


def main(argv=None, out=None):
    out = out or sys.stdout
    CONF.clear()
    CONF.register_cli_opt(command_opt)
    logging.register_options(CONF)
    CONF.set_default('use_stderr', True)
    try:
        CONF(sys.argv[1:] if argv is None else argv, project=PROJECT)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    except cfg.Error as exc:
        sys.stderr.write('%s\n' % exc)
        return EXIT_USAGE
    if not CONF.command.name:
        sys.stderr.write('a command is required, see --help\n')
        return EXIT_USAGE
    logging.setup(CONF, PROJECT)

    try:
        return CONF.command.func(CONF.command, out)
    except exceptions.UnstableModel as exc:
        out.write('unstable %s\n' % exc.kwargs['violated'])
        LOG.error('%s', exc)
        return EXIT_UNSTABLE
    except exceptions.SrbmException as exc:
        LOG.error('%s', exc)
        return exit_code(exc)
    except jsonschema.ValidationError as exc:
        LOG.error('Output does not match its schema: %s', exc.message)
        return EXIT_NUMERIC
    except Exception:
        LOG.exception('Internal error in %s', CONF.command.name)
        return EXIT_NUMERIC


if __name__ == '__main__':
    sys.exit(main())
