# -*- coding: utf-8 -*-
"""
@license: "MIT"
@version: "1.2"
@created: "04 March 2026"
@modified: "09 May 2026"

Walk engine: 2D simple random walk S_0 = 0, S_1, ... stopped at
tau_n = inf{m >= 0: S_m in dD(0, n)}, and the walk on the torus Z^2_n run until covered
or for a fixed number of steps.

Directions are drawn in fixed chunks of CHUNK steps from Generator(Philox(seed)), so the
walk stopped at radius n is a prefix of the walk stopped at radius 2n for the same seed.
The numba kernels consume one chunk at a time.

"""

import logging
import numpy as np
from numba import njit
from .common.lattice import LatticePoint
from .common.records import WalkRecord, TorusRecord
from .common.seeding import make_generator


logger = logging.getLogger(__name__)

STEP_CAP = 10 ** 9
CHUNK = 1 << 16
DENSE_LIMIT = 4096


class StepCapExceeded(RuntimeError):

    def __init__(self, steps, where):
        super().__init__("Walk Error: step cap reached after " + str(steps) + " steps (" + where + ")")
        self.steps = steps


@njit(cache=True)
def _disk_chunk(dirs, x, y, r2, grid, off, dense, px, py):
    used = 0
    exited = False
    for k in range(dirs.shape[0]):
        d = dirs[k]
        if d == 0:
            x += 1
        elif d == 1:
            x -= 1
        elif d == 2:
            y += 1
        else:
            y -= 1
        px[k] = x
        py[k] = y
        if dense:
            grid[x + off, y + off] += 1
        used = k + 1
        if x * x + y * y > r2:
            exited = True
            break
    return used, x, y, exited


@njit(cache=True)
def _torus_chunk(dirs, x, y, n, hit, t, unhit):
    used = 0
    for k in range(dirs.shape[0]):
        d = dirs[k]
        if d == 0:
            x = x + 1 if x + 1 < n else 0
        elif d == 1:
            x = x - 1 if x > 0 else n - 1
        elif d == 2:
            y = y + 1 if y + 1 < n else 0
        else:
            y = y - 1 if y > 0 else n - 1
        t += 1
        used = k + 1
        if hit[x, y] < 0:
            hit[x, y] = t
            unhit -= 1
            if unhit == 0:
                break
    return used, x, y, t, unhit


def _draw(rng):
    return rng.integers(0, 4, size=CHUNK, dtype=np.int8)


def simulate_disk_walk(n, seed, keep_path=False, step_cap=STEP_CAP):
    if n < 1:
        raise ValueError("Radius Error: n must be >= 1")
    if step_cap < 1:
        raise ValueError("Walk Error: step cap must be >= 1")
    rng = make_generator(seed)
    n = int(n)
    r2 = n * n
    off = n + 1
    width = 2 * n + 3
    dense = n <= DENSE_LIMIT
    if dense:
        grid = np.zeros((width, width), dtype=np.int32)
        grid[off, off] = 1
    else:
        grid = np.zeros((1, 1), dtype=np.int32)
    px = np.empty(CHUNK, dtype=np.int64)
    py = np.empty(CHUNK, dtype=np.int64)

    path_parts = [np.zeros((1, 2), dtype=np.int64)] if keep_path else None
    key_parts = [np.array([off * width + off], dtype=np.int64)] if not dense else None
    count_parts = [np.array([1], dtype=np.int64)] if not dense else None

    x = 0
    y = 0
    steps = 0
    while True:
        dirs = _draw(rng)
        limit = min(CHUNK, step_cap - steps)
        used, x, y, exited = _disk_chunk(dirs[:limit], x, y, r2, grid, off, dense, px, py)
        steps += used
        if keep_path:
            path_parts.append(np.column_stack((px[:used], py[:used])))
        if not dense:
            keys, cnt = np.unique((px[:used] + off) * width + (py[:used] + off), return_counts=True)
            key_parts.append(keys)
            count_parts.append(cnt)
        if exited:
            break
        if steps >= step_cap:
            raise StepCapExceeded(steps, "disk radius " + str(n))

    if dense:
        nz = np.nonzero(grid)
        points = np.column_stack(nz).astype(np.int64) - off
        counts = grid[nz].astype(np.int64)
    else:
        keys, inverse = np.unique(np.concatenate(key_parts), return_inverse=True)
        counts = np.bincount(inverse, weights=np.concatenate(count_parts)).astype(np.int64)
        points = np.column_stack((keys // width - off, keys % width - off))
    path = np.concatenate(path_parts) if keep_path else None
    return WalkRecord(n, seed, steps, (int(x), int(y)), points, counts, path=path)


def simulate_torus_walk(n, seed, horizon=None, step_cap=STEP_CAP):
    """Walk on Z^2_n from (0, 0) until every site is hit, or for at most `horizon` steps.

    A fixed-horizon run that has not covered the torus returns covered=False.
    """
    if n < 2:
        raise ValueError("Torus Error: side must be >= 2")
    if horizon is not None and horizon < 0:
        raise ValueError("Torus Error: horizon must be >= 0")
    rng = make_generator(seed)
    n = int(n)
    hit = np.full((n, n), -1, dtype=np.int64)
    hit[0, 0] = 0
    unhit = n * n - 1
    x = 0
    y = 0
    t = 0
    cap = step_cap if horizon is None else min(step_cap, int(horizon))
    while unhit > 0 and t < cap:
        dirs = _draw(rng)
        limit = min(CHUNK, cap - t)
        used, x, y, t, unhit = _torus_chunk(dirs[:limit], x, y, n, hit, t, unhit)
    if unhit > 0 and horizon is None:
        raise StepCapExceeded(t, "torus side " + str(n))
    return TorusRecord(n, seed, hit, t, unhit == 0)


def max_local_time(record):
    # points are sorted lexicographically, so argmax resolves ties to the smallest (x, y)
    i = int(np.argmax(record.counts))
    return LatticePoint(int(record.points[i, 0]), int(record.points[i, 1])), int(record.counts[i])


def max_local_time_ratio(record):
    if record.radius < 2:
        raise ValueError("Radius Error: n must be >= 2 for the (log n)^2 normalisation")
    return max_local_time(record)[1] / np.log(record.radius) ** 2


def cover_time_ratio(record):
    if not record.covered:
        raise ValueError("Torus Error: run did not cover the torus")
    n = record.side
    return record.max_hitting_time() / (n * np.log(n)) ** 2
