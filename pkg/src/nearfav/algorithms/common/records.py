# -*- coding: utf-8 -*-
"""
@license: "MIT"
@version: "1.0"
@created: "04 March 2026"
@modified: "02 May 2026"

WalkRecord: local time K(tau_n, .) of a walk stopped on exiting D(0, n)
TorusRecord: first hitting times T_x of a walk on the torus Z^2_n

Local times are held as lexicographically sorted (x, y) rows with their counts, which
is also the order of the JSON triples.

"""

import json
import numpy as np
from .lattice import LatticePoint


class WalkRecord:

    def __init__(self, radius, seed, exit_time, exit_point, points, counts, path=None):
        self.radius = int(radius)
        self.seed = int(seed)
        self.exit_time = int(exit_time)
        self.exit_point = LatticePoint.of(exit_point)
        self.points = np.asarray(points, dtype=np.int64).reshape(-1, 2)
        self.counts = np.asarray(counts, dtype=np.int64)
        self.path = path
        self._lookup = None

    @property
    def local_time(self):
        if self._lookup is None:
            self._lookup = {LatticePoint(int(p[0]), int(p[1])): int(c)
                            for p, c in zip(self.points, self.counts)}
        return self._lookup

    def count(self, point):
        return self.local_time.get(LatticePoint.of(point), 0)

    def total_visits(self):
        return int(self.counts.sum())

    def interior_mask(self):
        r2 = self.radius * self.radius
        return (self.points[:, 0] ** 2 + self.points[:, 1] ** 2) <= r2

    def has_path(self):
        return self.path is not None

    def check_invariants(self):
        errors = list()
        n = self.radius
        e2 = self.exit_point.norm2()
        if not (n * n < e2 <= (n + 1) * (n + 1)):
            errors.append("exit point " + str(tuple(self.exit_point)) + " not on the exit ring")
        if self.total_visits() != self.exit_time + 1:
            errors.append("sum of local times " + str(self.total_visits()) + " != exit_time + 1")
        if self.count((0, 0)) < 1:
            errors.append("origin never visited")
        outside = self.points[~self.interior_mask()]
        if outside.shape[0] != 1 or tuple(outside[0]) != tuple(self.exit_point):
            errors.append("visited points outside the disk other than the exit point")
        elif self.counts[~self.interior_mask()][0] != 1:
            errors.append("exit point visited more than once")
        return errors

    def to_dict(self):
        obj = {"radius": self.radius,
               "seed": self.seed,
               "exit_time": self.exit_time,
               "exit_point": [self.exit_point.x, self.exit_point.y],
               "local_time": [[int(p[0]), int(p[1]), int(c)] for p, c in zip(self.points, self.counts)]}
        if self.path is not None:
            obj["path"] = np.asarray(self.path).tolist()
        return obj

    def jsonify(self):
        return json.dumps(self.to_dict())

    @staticmethod
    def from_json(text):
        obj = json.loads(text)
        triples = np.array(obj["local_time"], dtype=np.int64).reshape(-1, 3)
        path = obj.get("path")
        if path is not None:
            path = np.array(path, dtype=np.int64).reshape(-1, 2)
        return WalkRecord(obj["radius"], obj["seed"], obj["exit_time"], obj["exit_point"],
                          triples[:, :2], triples[:, 2], path=path)

    def save_h5(self, store, group=None):
        if group is None:
            group = 'fields/walk/n' + str(self.radius) + '_s' + str(self.seed)
        triples = np.column_stack((self.points, self.counts))
        store.add_h5_dataset(group, triples, attrs={"radius": self.radius, "seed": str(self.seed),
                                                    "exit_time": self.exit_time,
                                                    "exit_point": list(self.exit_point)})
        return group


class TorusRecord:

    def __init__(self, side, seed, hitting_time, total_steps, covered, start=(0, 0)):
        self.side = int(side)
        self.seed = int(seed)
        # -1 marks a site never hit
        self.hitting_time = np.asarray(hitting_time, dtype=np.int64)
        self.total_steps = int(total_steps)
        self.covered = bool(covered)
        self.start = LatticePoint.of(start)

    def hit(self, point):
        p = LatticePoint.of(point)
        t = int(self.hitting_time[p.x % self.side, p.y % self.side])
        return None if t < 0 else t

    def finite_count(self):
        return int(np.count_nonzero(self.hitting_time >= 0))

    def max_hitting_time(self):
        return int(self.hitting_time.max())

    def check_invariants(self):
        errors = list()
        if self.hit(self.start) != 0:
            errors.append("start site not hit at time 0")
        if self.covered:
            if self.finite_count() != self.side * self.side:
                errors.append("covered run with unhit sites")
            elif self.max_hitting_time() != self.total_steps:
                errors.append("cover time differs from total steps")
        return errors

    def to_dict(self):
        return {"side": self.side,
                "seed": self.seed,
                "total_steps": self.total_steps,
                "covered": self.covered,
                "hitting_time": self.hitting_time.tolist()}

    def jsonify(self):
        return json.dumps(self.to_dict())

    @staticmethod
    def from_json(text):
        obj = json.loads(text)
        return TorusRecord(obj["side"], obj["seed"], np.array(obj["hitting_time"], dtype=np.int64),
                           obj["total_steps"], obj["covered"])
