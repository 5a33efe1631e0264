# -*- coding: utf-8 -*-
"""
@license: "MIT"
@version: "1.0"
@created: "18 October 2026"
@modified: "18 October 2026"

ExcursionStudy: runs the successful-point diagnostic on one disk walk per seed at the
largest configured scale, using the [schedule] section of the configuration, and writes
the pass frequency with its Wilson interval to excursions.json.

The diagnostic is centred at the walk's start and stops at the first exit beyond the
outermost radius. Geometric radii stand in for the factorial ones, which no desk-scale
walk reaches; the substitution is noted in every report.

"""

import json
import logging
import multiprocessing as mp
import os
import numpy as np
from ..algorithms.common.lattice import ORIGIN
from ..algorithms.common.profile_cpu import Profile
from ..algorithms.common.seeding import trial_seed
from ..algorithms.excursions import build_schedule, successful_diagnostic, wilson_interval
from ..algorithms.walk_engine import simulate_disk_walk
from .manifest import now_stamp
from .. import __version__


logger = logging.getLogger(__name__)

SURROGATE_NOTE = "geometric radii stand in for r_k = (k!)^3"


def run_diagnostic(task):
    n, seed, schedule, gamma = task
    record = simulate_disk_walk(n, seed, keep_path=True)
    report = successful_diagnostic(record, ORIGIN, schedule, gamma,
                                   stop_radius=schedule.radius(schedule.size))
    out = report.to_dict()
    out["seed"] = seed
    return out


class ExcursionStudy:

    def __init__(self, config, confidence=0.95):
        self.config = config.validate()
        self.n = config.scales[-1]
        self.confidence = confidence
        self.cores = Profile.resolve_workers(config.workers)
        self.allow_parallel = self.cores > 1
        self.msg_para = "True" if self.allow_parallel else "False"
        c = self.config
        self.schedule = build_schedule(c.schedule_kind, c.schedule_levels, alpha=c.alpha, gamma=c.gamma,
                                       base=c.schedule_base, ratio=c.schedule_ratio)

    def tasks(self):
        c = self.config
        return [(self.n, trial_seed(c.seed, t, self.n), self.schedule, c.gamma) for t in range(c.trials)]

    def run_study(self):
        c = self.config
        started = now_stamp()
        tasks = self.tasks()
        logger.info("excursion diagnostic at n=%d over %d seeds, %s radii", self.n, len(tasks), c.schedule_kind)
        if self.allow_parallel:
            with mp.Pool(self.cores) as pool:
                reports = pool.map(run_diagnostic, tasks)
        else:
            reports = [run_diagnostic(t) for t in tasks]
        return ExcursionSummary(self, reports, started)

    def write(self, summary):
        os.makedirs(self.config.out, exist_ok=True)
        path = os.path.join(self.config.out, 'excursions.json')
        with open(path, 'w') as f:
            f.write(summary.jsonify())
        return path


class ExcursionSummary:

    def __init__(self, study, reports, started):
        self.n = study.n
        self.gamma = study.config.gamma
        self.confidence = study.confidence
        self.schedule = study.schedule.to_dict()
        self.config = study.config.to_dict()
        self.reports = reports
        self.started = started
        self.finished = now_stamp()
        self.trials = len(reports)
        self.successes = sum(1 for r in reports if r["successful"])
        self.frequency = self.successes / self.trials
        self.interval = wilson_interval(self.successes, self.trials, study.confidence)
        passes = np.array([r["passes"] for r in reports], dtype=float)
        counts = np.array([r["counts"] for r in reports], dtype=float)
        self.levels = reports[0]["levels"]
        self.level_pass_frequency = passes.mean(axis=0).tolist()
        self.mean_counts = counts.mean(axis=0).tolist()
        self.references = reports[0]["references"]
        self.notes = [SURROGATE_NOTE] if study.schedule.kind != 'factorial' else []

    def to_dict(self):
        return {"version": __version__,
                "started": self.started,
                "finished": self.finished,
                "config": self.config,
                "n": self.n,
                "gamma": self.gamma,
                "schedule": self.schedule,
                "trials": self.trials,
                "successes": self.successes,
                "pass_frequency": self.frequency,
                "confidence": self.confidence,
                "wilson_interval": list(self.interval),
                "levels": self.levels,
                "level_pass_frequency": self.level_pass_frequency,
                "mean_counts": self.mean_counts,
                "references": self.references,
                "notes": self.notes,
                "reports": self.reports}

    def jsonify(self):
        return json.dumps(self.to_dict(), indent=2)
