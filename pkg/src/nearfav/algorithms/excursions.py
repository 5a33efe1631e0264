# -*- coding: utf-8 -*-
"""
@license: "MIT"
@version: "1.0"
@created: "23 March 2026"
@modified: "14 May 2026"

Excursions of a recorded walk path across the annulus between D(z, r_inner) and
D(z, r_outer), and the multiscale schedules they are compared against.

An inward excursion starts when the path is outside D(z, r_outer) and ends when it next
reaches D(z, r_inner); the outward count swaps the roles. Disks are closed.

Schedules
---------
factorial   r_k = (k!)^3, k = 1..m (m <= 20), horizon K_n = n^3 r_n
geometric   r_k = base * ratio^(k-1)
explicit    caller supplied radii

Reference counts per level k: n_k = 6 alpha (n - k)^2 log k, n~_k = 6 gamma^2 alpha k^2 log k.

"""

import json
import math
import numpy as np
from scipy import stats


FACTORIAL_MAX_LEVEL = 20
UINT64_LIMIT = 1 << 64
INWARD = 'inward'
OUTWARD = 'outward'


class AnnulusSchedule:

    def __init__(self, kind, radii, alpha, gamma, n, representable=None):
        self.kind = kind
        self.radii = list(radii)
        self.levels = list(range(1, len(self.radii) + 1))
        self.alpha = alpha
        self.gamma = gamma
        self.n = n
        if representable is None:
            representable = [True] * len(self.radii)
        self.representable = representable
        for a, b in zip(self.radii, self.radii[1:]):
            if not a < b:
                raise ValueError("Schedule Error: radii must be strictly increasing")

    @property
    def size(self):
        return len(self.radii)

    def radius(self, k):
        return self.radii[k - 1]

    def reference_count(self, k):
        return 6.0 * self.alpha * (self.n - k) ** 2 * math.log(k)

    def tilde_count(self, k, gamma=None):
        g = self.gamma if gamma is None else gamma
        return 6.0 * g * g * self.alpha * k * k * math.log(k)

    def horizon(self):
        if self.kind != 'factorial':
            raise ValueError("Schedule Error: the horizon K_n is defined for factorial radii only")
        return self.n ** 3 * math.factorial(self.n) ** 3

    def to_dict(self):
        return {"kind": self.kind,
                "radii": [str(r) if r >= UINT64_LIMIT else r for r in self.radii],
                "representable": self.representable,
                "alpha": self.alpha, "gamma": self.gamma, "n": self.n,
                "reference_counts": [self.reference_count(k) for k in self.levels],
                "tilde_counts": [self.tilde_count(k) for k in self.levels]}


def build_schedule(kind, levels=None, alpha=0.5, gamma=1.0, n=None, base=None, ratio=None, radii=None):
    if kind == 'explicit':
        if radii is None:
            raise ValueError("Schedule Error: explicit schedule needs radii")
        levels = len(radii)
    if levels is None or levels < 2:
        raise ValueError("Schedule Error: need at least 2 levels")
    n = levels if n is None else n
    if kind == 'factorial':
        if levels > FACTORIAL_MAX_LEVEL:
            raise ValueError("Schedule Error: factorial radii beyond k = 20 are refused")
        radii = [math.factorial(k) ** 3 for k in range(1, levels + 1)]
        flags = [r < UINT64_LIMIT for r in radii]
        return AnnulusSchedule(kind, radii, alpha, gamma, n, flags)
    if kind == 'geometric':
        if base is None or base <= 0 or ratio is None or ratio <= 1:
            raise ValueError("Schedule Error: geometric radii need base > 0 and ratio > 1")
        radii = [base * ratio ** i for i in range(levels)]
        return AnnulusSchedule(kind, radii, alpha, gamma, n)
    if kind == 'explicit':
        return AnnulusSchedule(kind, radii, alpha, gamma, n)
    raise ValueError("Schedule Error: unknown kind " + str(kind))


def _distance2(path, z):
    path = np.asarray(path, dtype=np.float64).reshape(-1, 2)
    if path.shape[0] == 0:
        raise ValueError("Path Error: empty path")
    return ((path - np.asarray(z, dtype=np.float64)) ** 2).sum(axis=1)


def _truncate(d2, stop_radius):
    if stop_radius is None:
        return d2
    beyond = np.nonzero(d2 > float(stop_radius) ** 2)[0]
    return d2 if beyond.size == 0 else d2[:beyond[0] + 1]


def _check_radii(r_outer, r_inner, direction):
    if not r_inner < r_outer:
        raise ValueError("Annulus Error: r_inner must be < r_outer")
    if direction not in (INWARD, OUTWARD):
        raise ValueError("Annulus Error: unknown direction " + str(direction))


def count_excursions(path, z, r_outer, r_inner, direction=INWARD, stop_radius=None):
    _check_radii(r_outer, r_inner, direction)
    d2 = _truncate(_distance2(path, z), stop_radius)
    codes = np.zeros(d2.shape[0], dtype=np.int8)
    codes[d2 <= float(r_inner) ** 2] = 1
    codes[d2 > float(r_outer) ** 2] = 2
    codes = codes[codes > 0]
    if codes.size < 2:
        return 0
    runs = codes[np.concatenate(([True], codes[1:] != codes[:-1]))]
    prev, nxt = runs[:-1], runs[1:]
    if direction == INWARD:
        return int(np.count_nonzero((prev == 2) & (nxt == 1)))
    return int(np.count_nonzero((prev == 1) & (nxt == 2)))


def count_excursions_scan(path, z, r_outer, r_inner, direction=INWARD, stop_radius=None):
    """Point-by-point two-state scanner; an independent check on count_excursions."""
    _check_radii(r_outer, r_inner, direction)
    d2 = _truncate(_distance2(path, z), stop_radius)
    armed = False
    count = 0
    for v in d2:
        outside_outer = v > float(r_outer) ** 2
        inside_inner = v <= float(r_inner) ** 2
        if direction == INWARD:
            at_start, at_goal = outside_outer, inside_inner
        else:
            at_start, at_goal = inside_inner, outside_outer
        if armed and at_goal:
            count += 1
            armed = False
        elif at_start:
            armed = True
    return count


class DiagnosticReport:

    def __init__(self, center, schedule, levels, counts, references, passes, stop_radius):
        self.center = tuple(center)
        self.schedule = schedule
        self.levels = levels
        self.counts = counts
        self.references = references
        self.passes = passes
        self.stop_radius = stop_radius

    @property
    def successful(self):
        return all(self.passes)

    def to_dict(self):
        return {"center": list(self.center),
                "radii_kind": self.schedule.kind,
                "radii": self.schedule.to_dict()["radii"],
                "levels": self.levels,
                "counts": self.counts,
                "references": self.references,
                "passes": self.passes,
                "successful": self.successful,
                "stop_radius": self.stop_radius}

    def jsonify(self):
        return json.dumps(self.to_dict())


def successful_diagnostic(record, z, schedule, gamma=None, references=None, stop_radius=None):
    """Per level k >= 3: N_k = excursions from dD(z, r_k) to dD(z, r_{k-1}); pass iff |N_k - n~_k| <= k.

    `references` maps k to a replacement for n~_k.
    """
    if not record.has_path():
        raise ValueError("Path Error: walk record was simulated without keep_path")
    if schedule.size < 3:
        raise ValueError("Schedule Error: the diagnostic needs at least 3 levels")
    levels, counts, refs, passes = list(), list(), list(), list()
    for k in schedule.levels[2:]:
        n_k = count_excursions(record.path, z, schedule.radius(k), schedule.radius(k - 1),
                               stop_radius=stop_radius)
        ref = schedule.tilde_count(k, gamma)
        if references is not None and k in references:
            ref = references[k]
        levels.append(k)
        counts.append(n_k)
        refs.append(float(ref))
        passes.append(bool(abs(n_k - ref) <= k))
    return DiagnosticReport(z, schedule, levels, counts, refs, passes, stop_radius)


def wilson_interval(successes, trials, confidence=0.95):
    if trials < 1:
        raise ValueError("Trial Error: trials must be >= 1")
    zq = stats.norm.ppf(0.5 + confidence / 2.0)
    p = successes / trials
    denom = 1.0 + zq * zq / trials
    centre = (p + zq * zq / (2.0 * trials)) / denom
    half = zq * math.sqrt(p * (1.0 - p) / trials + zq * zq / (4.0 * trials * trials)) / denom
    return max(0.0, centre - half), min(1.0, centre + half)
