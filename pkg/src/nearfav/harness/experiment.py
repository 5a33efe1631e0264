# -*- coding: utf-8 -*-
"""
@license: "MIT"
@version: "1.1"
@created: "03 April 2026"
@modified: "18 May 2026"

Experiment: fans the trials of every scale out to a process pool, writes one results
row per trial in trial order, and fits the growth exponent of the tuple counts.

Estimators
----------
mean    log of the trial-mean count per scale (growth of the expectation, rho2_hat)
single  log of the trial-0 count per scale (almost-sure growth, rho2)

"""

import logging
import multiprocessing as mp
import os
import numpy as np
from ..algorithms.common.profile_cpu import Profile
from ..algorithms.common.seeding import trial_seed
from ..algorithms.walk_engine import simulate_disk_walk, simulate_torus_walk
from ..algorithms.point_sets import favorite_points, late_points, high_points, tuple_count, exponent_fit
from ..algorithms.exponents import rho2, rho2_hat
from ..algorithms.gff import build_covariance, sample
from .manifest import RunManifest, ResultSink


logger = logging.getLogger(__name__)

_FACTORS = {}


def _covariance(n):
    # one factor per box side and process
    if n not in _FACTORS:
        _FACTORS[n] = build_covariance(n)
    return _FACTORS[n]


def extract_set(kind, n, alpha, seed):
    if kind in ('favorite', 'truncated'):
        return favorite_points(simulate_disk_walk(n, seed), alpha, truncated=(kind == 'truncated'))
    if kind == 'late':
        return late_points(simulate_torus_walk(n, seed), alpha)
    return high_points(sample(_covariance(n), seed), alpha)


def run_trial(task):
    kind, n, alpha, beta, j, diagonal, trial, seed = task
    pset = extract_set(kind, n, alpha, seed)
    report = tuple_count(pset, beta, j, diagonal)
    return report.csv_row(trial, seed)


class Experiment:

    def __init__(self, config):
        self.config = config.validate()
        self.cores = Profile.resolve_workers(config.workers)
        self.allow_parallel = self.cores > 1
        self.msg_para = "True" if self.allow_parallel else "False"

    def tasks(self, n):
        c = self.config
        return [(c.kind, n, c.alpha, c.beta, c.j, c.diagonal, t, trial_seed(c.seed, t, n))
                for t in range(c.trials)]

    def run_scale(self, n, pool=None):
        tasks = self.tasks(n)
        if pool is not None:
            return pool.map(run_trial, tasks)
        return [run_trial(t) for t in tasks]

    def run_experiment(self):
        c = self.config
        try:
            os.makedirs(c.out, exist_ok=True)
        except OSError as error:
            raise ValueError("Output Error: cannot create " + str(c.out) + " (" + str(error) + ")")
        manifest = RunManifest(c)
        sink = ResultSink(os.path.join(c.out, 'results.csv'))
        if sink.previous_incomplete:
            manifest.notes.append("previous run in this directory was incomplete")
        pool = mp.Pool(self.cores) if self.allow_parallel else None
        series = list()
        complete = False
        try:
            for n in c.scales:
                logger.info("scale n=%d: %d trials of kind %s", n, c.trials, c.kind)
                rows = self.run_scale(n, pool)
                for row in rows:
                    sink.append(row)
                counts = np.array([row[6] for row in rows], dtype=float)
                sizes = np.array([row[7] for row in rows], dtype=float)
                manifest.aggregates.append({"n": n, "trials": len(rows),
                                            "mean_count": float(counts.mean()),
                                            "std_count": float(counts.std()),
                                            "mean_set_size": float(sizes.mean()),
                                            "trial0_count": float(counts[0])})
                series.append((n, counts.mean() if c.estimator == 'mean' else counts[0]))
            complete = True
        finally:
            if pool is not None:
                pool.close()
                pool.join()
            # an interrupted file keeps no marker and is flagged on the next start
            sink.close(complete=complete)
        if len(series) >= 3:
            try:
                manifest.fit = exponent_fit(series).to_dict()
            except ValueError as error:
                manifest.notes.append(str(error))
        else:
            manifest.notes.append("exponent fit needs at least 3 scales")
        if c.j == 2 and c.kind in ('favorite', 'truncated'):
            manifest.reference_exponent = (rho2_hat(c.alpha, c.beta) if c.estimator == 'mean'
                                           else rho2(c.alpha, c.beta))
        manifest.finish()
        manifest.save(os.path.join(c.out, 'manifest.json'))
        return manifest
