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
"""Euler scheme with an exact complementarity projection per step.

    Y = Z + mu h + sqrt(h) L xi,   Z' = Y + R dL,   Z' >= 0, dL >= 0,
    Z'_i dL_i = 0,

with L the Cholesky factor of Sigma.  Replicas advance together as rows
of one array; each replica draws from its own Philox stream.
"""
import csv

import numpy as np
from oslo_log import log as logging

from srbm_asymptotics.common import models
from srbm_asymptotics import asymptotics
from srbm_asymptotics import config
from srbm_asymptotics import exceptions
from srbm_asymptotics import model

CONF = config.CONF
LOG = logging.getLogger(__name__)

HISTOGRAM_COLUMNS = ('x1_center', 'x2_center', 'density')
LOCAL_TIME_COLUMNS = ('face', 'local_time', 'rate')


class SimConfig(models.Model):

    def __init__(self, step=None, total_time=None, burn_in=None, seed=None,
                 cell_width=None, extent=None, replicas=None,
                 chunk_steps=None):
        opts = CONF.simulation

        def pick(value, default):
            return default if value is None else value

        self.step = pick(step, opts.step)
        self.total_time = pick(total_time, opts.total_time)
        self.burn_in = pick(burn_in, opts.burn_in)
        self.seed = pick(seed, opts.seed)
        self.cell_width = pick(cell_width, opts.cell_width)
        self.extent = pick(extent, opts.extent)
        self.replicas = pick(replicas, opts.replicas)
        self.chunk_steps = pick(chunk_steps, opts.chunk_steps)

        if not (self.step > 0 and self.cell_width > 0 and self.extent > 0):
            raise exceptions.InvalidInput(
                reason='step, cell width and extent must be positive')
        if not 0 <= self.burn_in < self.total_time:
            raise exceptions.InvalidInput(
                reason='burn_in %s not in [0, total_time=%s)' %
                (self.burn_in, self.total_time))
        if self.replicas < 1 or self.chunk_steps < 1:
            raise exceptions.InvalidInput(
                reason='replicas and chunk_steps must be >= 1')

    @property
    def steps(self):
        return int(round(self.total_time / self.step))

    @property
    def burn_steps(self):
        return int(round(self.burn_in / self.step))

    @property
    def bins(self):
        return int(round(self.extent / self.cell_width))

    def edges(self):
        """Cell edges with an overflow cell [extent, inf)."""
        inner = np.linspace(0.0, self.bins * self.cell_width, self.bins + 1)
        return np.append(inner, np.inf)

    def check_step(self, params):
        """Warn when h exceeds 1e-2 of the shortest time scale."""
        scales = np.diag(params.sigma) / params.mu ** 2
        scales = scales[np.isfinite(scales)]
        if scales.size and self.step > 1e-2 * scales.min():
            LOG.warning('Step %s is coarse for time scale %s', self.step,
                        scales.min())


class OccupationHistogram(models.Model):
    """Time spent per cell, aggregated over replicas after burn-in.

    ``counts`` has one extra row and column collecting the states beyond
    the extent on either axis.
    """

    def __init__(self, edges, step, counts=None, local_time=None,
                 state_sum=None, samples=0, replica_sums=None):
        self.edges = np.asarray(edges, dtype=float)
        self.step = step
        size = len(self.edges) - 1
        self.counts = (np.zeros((size, size)) if counts is None
                       else np.asarray(counts, dtype=float))
        self.local_time = (np.zeros(2) if local_time is None
                           else np.asarray(local_time, dtype=float))
        self.state_sum = (np.zeros(2) if state_sum is None
                          else np.asarray(state_sum, dtype=float))
        self.samples = samples
        # per-replica state sums, rows are replicas
        self.replica_sums = (None if replica_sums is None
                             else np.asarray(replica_sums, dtype=float))

    def __eq__(self, other):
        if not isinstance(other, OccupationHistogram):
            return NotImplemented
        return (np.array_equal(self.edges, other.edges) and
                self.step == other.step and
                np.array_equal(self.counts, other.counts) and
                np.array_equal(self.local_time, other.local_time) and
                np.array_equal(self.state_sum, other.state_sum) and
                self.samples == other.samples)

    def __hash__(self):
        return hash((self.step, self.samples, self.counts.tobytes()))

    @property
    def cell_width(self):
        return self.edges[1] - self.edges[0]

    @property
    def bins(self):
        return len(self.edges) - 2

    @property
    def total_time(self):
        return self.samples * self.step

    def record(self, states, local_time):
        """Add an array of states (..., 2) and the pushes that went with
        them.

        States shaped (replicas, steps, 2) also feed the per-replica sums
        behind mean_stderr.
        """
        if states.ndim == 3:
            sums = states.sum(axis=1)
            self.replica_sums = (sums if self.replica_sums is None
                                 else self.replica_sums + sums)
        flat = states.reshape(-1, 2)
        counts, _, _ = np.histogram2d(flat[:, 0], flat[:, 1],
                                      bins=[self.edges, self.edges])
        self.counts += counts
        self.state_sum += flat.sum(axis=0)
        self.local_time += local_time
        self.samples += flat.shape[0]

    def merge(self, other):
        if not np.array_equal(self.edges, other.edges):
            raise exceptions.InvalidInput(reason='histogram grids differ')
        replica_sums = None
        # replica means need one common replica length
        if (self.replica_sums is not None and
                other.replica_sums is not None and
                self.samples * len(other.replica_sums) ==
                other.samples * len(self.replica_sums)):
            replica_sums = np.concatenate([self.replica_sums,
                                           other.replica_sums])
        return OccupationHistogram(self.edges, self.step,
                                   self.counts + other.counts,
                                   self.local_time + other.local_time,
                                   self.state_sum + other.state_sum,
                                   self.samples + other.samples,
                                   replica_sums)

    def centers(self):
        inner = self.edges[:-1]
        return 0.5 * (inner[1:] + inner[:-1])

    def density(self):
        """Empirical density on the inner cells."""
        if not self.samples:
            raise exceptions.InsufficientData(reason='empty histogram')
        inner = self.counts[:-1, :-1]
        return inner / (self.samples * self.cell_width ** 2)

    def marginal_tail(self, axis, level):
        """Fraction of time with Z_axis > level; level is a cell edge."""
        index = int(round(level / self.cell_width))
        if abs(index * self.cell_width - level) > 1e-9 * self.cell_width:
            raise exceptions.InvalidInput(
                reason='level %s is not a cell edge' % level)
        if not self.samples:
            raise exceptions.InsufficientData(reason='empty histogram')
        marginal = self.counts.sum(axis=1 - axis)
        return marginal[index:].sum() / self.samples

    def mean(self):
        return self.state_sum / self.samples

    def mean_stderr(self):
        """Standard error of mean() from the spread of the replica means."""
        if self.replica_sums is None or len(self.replica_sums) < 2:
            raise exceptions.InsufficientData(
                reason='the standard error needs two replicas or more')
        replicas = len(self.replica_sums)
        means = self.replica_sums / (self.samples / replicas)
        return means.std(axis=0, ddof=1) / np.sqrt(replicas)

    def local_time_rates(self):
        """Pushes per unit time on each face."""
        return self.local_time / self.total_time

    def write_csv(self, stream):
        writer = csv.writer(stream)
        writer.writerow(HISTOGRAM_COLUMNS)
        centers = self.centers()
        density = self.density()
        for i, x1 in enumerate(centers):
            for j, x2 in enumerate(centers):
                writer.writerow(['%.6g' % x1, '%.6g' % x2,
                                 '%.6g' % density[i, j]])

    def write_local_time_csv(self, stream):
        writer = csv.writer(stream)
        writer.writerow(LOCAL_TIME_COLUMNS)
        rates = self.local_time_rates()
        for face in range(2):
            writer.writerow([face + 1, '%.6g' % self.local_time[face],
                             '%.6g' % rates[face]])


class RayRate(models.Model):

    def __init__(self, rate, stderr, cells):
        self.rate = rate
        self.stderr = stderr
        self.cells = cells


def reflect_batch(y, refl):
    """Complementarity projection of every row of y.

    The cases are tried in the order interior, face 1, face 2, corner;
    for a completely-S matrix exactly one of them is feasible.

    :return: (z, dl) arrays shaped like y
    """
    y = np.atleast_2d(np.asarray(y, dtype=float))
    refl = np.asarray(refl, dtype=float)
    z = y.copy()
    dl = np.zeros_like(y)

    remaining = ~np.all(y >= 0, axis=1)
    if not remaining.any():
        return z, dl

    d1 = -y[:, 0] / refl[0, 0]
    z2 = y[:, 1] + refl[1, 0] * d1
    face1 = remaining & (d1 >= 0) & (z2 >= 0)
    z[face1, 0] = 0.0
    z[face1, 1] = z2[face1]
    dl[face1, 0] = d1[face1]
    remaining &= ~face1

    d2 = -y[:, 1] / refl[1, 1]
    z1 = y[:, 0] + refl[0, 1] * d2
    face2 = remaining & (d2 >= 0) & (z1 >= 0)
    z[face2, 0] = z1[face2]
    z[face2, 1] = 0.0
    dl[face2, 1] = d2[face2]
    remaining &= ~face2

    if remaining.any():
        push = np.linalg.solve(refl, -y[remaining].T).T
        feasible = np.all(push >= 0, axis=1)
        if not feasible.all():
            raise exceptions.ReflectionInfeasible(
                value=y[remaining][~feasible][0].tolist())
        z[remaining] = 0.0
        dl[remaining] = push
    return z, dl


def reflect_step(y, refl):
    """Single-state reflect_batch: returns (z, dl) as 2-vectors."""
    z, dl = reflect_batch(np.reshape(y, (1, 2)), refl)
    return z[0], dl[0]


def replica_generators(seed, replicas):
    children = np.random.SeedSequence(seed).spawn(replicas)
    return [np.random.Generator(np.random.Philox(child))
            for child in children]


def run(params, sim_config=None):
    """Simulate the replicas and return their pooled occupation histogram.

    :param params: stable ModelParams
    :param sim_config: SimConfig, defaults from CONF.simulation
    :rtype: OccupationHistogram
    """
    model.require_stable(params)
    sim_config = sim_config or SimConfig()
    sim_config.check_step(params)

    h = sim_config.step
    drift = params.mu * h
    factor = np.linalg.cholesky(params.sigma).T * np.sqrt(h)
    generators = replica_generators(sim_config.seed, sim_config.replicas)
    hist = OccupationHistogram(sim_config.edges(), h)

    LOG.info('Simulating %d replicas for %d steps (h=%s, burn-in %d)',
             sim_config.replicas, sim_config.steps, h,
             sim_config.burn_steps)
    state = np.zeros((sim_config.replicas, 2))
    done = 0
    while done < sim_config.steps:
        chunk = min(sim_config.chunk_steps, sim_config.steps - done)
        noise = np.stack([g.standard_normal((chunk, 2))
                          for g in generators]).dot(factor)
        path = np.empty_like(noise)
        pushes = np.zeros(2)
        first = max(0, sim_config.burn_steps - done)
        for k in range(chunk):
            state, dl = reflect_batch(state + drift + noise[:, k],
                                      params.refl)
            path[:, k] = state
            if k >= first:
                pushes += dl.sum(axis=0)
        if first < chunk:
            hist.record(path[:, first:], pushes)
        done += chunk
        LOG.debug('%d of %d steps simulated', done, sim_config.steps)

    LOG.info('Simulation done: mean %s, local time rates %s', hist.mean(),
             hist.local_time_rates())
    return hist


def _ray_cells(alpha, lo, hi, width, bins):
    e = asymptotics.unit_vector(alpha)
    radii = np.arange(lo, hi + width / 8.0, width / 4.0)
    cells = np.floor(np.outer(radii, e) / width).astype(int)
    cells = cells[np.all(cells < bins, axis=1)]
    _, first = np.unique(cells, axis=0, return_index=True)
    return cells[np.sort(first)], e


def estimate_ray_rate(hist, alpha, window=None):
    """Weighted least-squares slope of -log density along the ray.

    :param hist: populated OccupationHistogram
    :param alpha: angle in (0, pi/2)
    :param window: (r_lo, r_hi), defaults from CONF.compare
    :rtype: RayRate
    """
    asymptotics.check_angle(alpha)
    lo, hi = window or (CONF.compare.window_lo, CONF.compare.window_hi)
    limit = hist.bins * hist.cell_width
    if not 0 <= lo < hi or hi > limit * np.sqrt(2):
        raise exceptions.InvalidInput(
            reason='window [%s, %s] outside the grid' % (lo, hi))

    cells, e = _ray_cells(alpha, lo, hi, hist.cell_width, hist.bins)
    if len(cells) < 4:
        raise exceptions.InsufficientData(
            reason='%d cells on the ray, need 4' % len(cells))

    counts = hist.counts[cells[:, 0], cells[:, 1]]
    if counts[0] < 30:
        raise exceptions.InsufficientData(
            reason='%d counts at r=%s, need 30' % (counts[0], lo))
    keep = counts > 0
    if keep.sum() < 4:
        raise exceptions.InsufficientData(
            reason='%d populated cells on the ray, need 4' % keep.sum())

    cells, counts = cells[keep], counts[keep]
    centers = (cells + 0.5) * hist.cell_width
    radius = centers.dot(e)
    density = hist.density()[cells[:, 0], cells[:, 1]]
    coefficients, cov = np.polyfit(radius, -np.log(density), 1,
                                   w=np.sqrt(counts), cov=True)
    rate = RayRate(rate=float(coefficients[0]),
                   stderr=float(np.sqrt(cov[0, 0])), cells=len(cells))
    LOG.info('Ray rate at alpha=%s over [%s, %s]: %s', alpha, lo, hi, rate)
    return rate
