# -*- coding: utf-8 -*-
"""
@license: "MIT"
@version: "1.0"
@created: "02 April 2026"
@modified: "17 May 2026"

RunManifest: resolved configuration, timestamps, per-scale aggregates and the exponent
fit of one run.
ResultSink: append-only results.csv, one row per (scale, trial), closed by a
completeness marker line so that an interrupted run is recognised on the next start.

"""

import csv
import json
import logging
import os
from datetime import datetime, timezone
from .. import __version__


logger = logging.getLogger(__name__)

RESULTS_HEADER = ['n', 'alpha', 'beta', 'j', 'kind', 'trial', 'count', 'set_size', 'seed']
COMPLETE_MARKER = '# complete'


def now_stamp():
    return datetime.now(timezone.utc).isoformat(timespec='seconds')


class RunManifest:

    def __init__(self, config):
        self.config = config.to_dict()
        self.version = __version__
        self.started = now_stamp()
        self.finished = None
        self.aggregates = list()
        self.fit = None
        self.reference_exponent = None
        self.notes = list()

    def finish(self):
        self.finished = now_stamp()

    def to_dict(self):
        return {"config": self.config,
                "version": self.version,
                "started": self.started,
                "finished": self.finished,
                "aggregates": self.aggregates,
                "fit": self.fit,
                "reference_exponent": self.reference_exponent,
                "notes": self.notes}

    def jsonify(self):
        return json.dumps(self.to_dict(), indent=2)

    def save(self, path):
        with open(path, 'w') as f:
            f.write(self.jsonify())

    @staticmethod
    def load(path):
        with open(path) as f:
            return json.load(f)


def is_complete(path):
    if not os.path.exists(path):
        return False
    with open(path) as f:
        lines = f.read().splitlines()
    return bool(lines) and lines[-1] == COMPLETE_MARKER


class ResultSink:

    def __init__(self, path):
        self.path = path
        self.previous_incomplete = os.path.exists(path) and not is_complete(path)
        if self.previous_incomplete:
            logger.warning("incomplete previous run found at %s, rewriting it", path)
        self._f = open(path, 'w', newline='')
        self._writer = csv.writer(self._f, lineterminator='\n')
        self._writer.writerow(RESULTS_HEADER)
        self._f.flush()

    def append(self, row):
        self._writer.writerow(row)
        self._f.flush()

    def close(self, complete=True):
        if complete:
            self._f.write(COMPLETE_MARKER + '\n')
        self._f.close()


def read_results(path):
    with open(path, newline='') as f:
        rows = [r for r in csv.reader(f) if r and not r[0].startswith('#')]
    return rows[1:]
