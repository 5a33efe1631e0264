# -*- coding: utf-8 -*-
"""
@license: "MIT"
@version: "1.1"
@created: "14 March 2026"
@modified: "16 May 2026"

Special point sets and their close tuples:

favorite            Psi_n(alpha) = {x in D(0,n): K(tau_n, x) >= ceil((4 alpha/pi)(log n)^2)}
truncated-favorite  favorite points with K(tau_n, x) <= (4/pi)(log n)^2 in addition
late                {x in Z^2_n: T_x >= (4 alpha/pi)(n log n)^2}, unhit sites included
high                {x: phi_n(x)^2/2 >= (4 alpha/pi)(log n)^2}

Tuples are ordered and, unless diagonal=False, may repeat members. Distances are
Euclidean, wrapped on the torus for late points.

"""

import itertools
import logging
import multiprocessing as mp
import numpy as np
from scipy import sparse, spatial, stats
from .common.lattice import LatticePoint
from .common.seeding import trial_seed
from .walk_engine import simulate_disk_walk


logger = logging.getLogger(__name__)

KINDS = ('favorite', 'truncated', 'late', 'high')
EXHAUSTIVE_LIMIT = 10 ** 6


def favorite_threshold(n, alpha):
    return int(np.ceil(4.0 * alpha / np.pi * np.log(n) ** 2))


def _check_alpha(alpha):
    if not (0 < alpha < 1):
        raise ValueError("Level Error: alpha must lie in (0, 1)")


class PointSet:

    def __init__(self, kind, n, alpha, members, threshold_used, torus_side=None):
        self.kind = kind
        self.n = int(n)
        self.alpha = alpha
        self.members = np.asarray(members, dtype=np.int64).reshape(-1, 2)
        self.threshold_used = threshold_used
        self.torus_side = torus_side

    @property
    def size(self):
        return self.members.shape[0]

    def member_list(self):
        return [LatticePoint(int(p[0]), int(p[1])) for p in self.members]

    def contains(self, point):
        p = LatticePoint.of(point)
        return bool(np.any((self.members[:, 0] == p.x) & (self.members[:, 1] == p.y)))

    def to_dict(self):
        return {"kind": self.kind, "n": self.n, "alpha": self.alpha,
                "threshold_used": self.threshold_used, "torus_side": self.torus_side,
                "members": self.members.tolist()}


def favorite_points(record, alpha, truncated=False):
    _check_alpha(alpha)
    n = record.radius
    if n < 3:
        raise ValueError("Radius Error: n must be >= 3")
    threshold = favorite_threshold(n, alpha)
    mask = record.interior_mask() & (record.counts >= threshold)
    kind = 'favorite'
    if truncated:
        mask &= record.counts <= 4.0 / np.pi * np.log(n) ** 2
        kind = 'truncated'
    return PointSet(kind, n, alpha, record.points[mask], threshold)


def late_points(record, alpha):
    _check_alpha(alpha)
    n = record.side
    threshold = 4.0 * alpha / np.pi * (n * np.log(n)) ** 2
    t = record.hitting_time
    mask = (t < 0) | (t >= threshold)
    xs, ys = np.nonzero(mask)
    return PointSet('late', n, alpha, np.column_stack((xs, ys)), threshold, torus_side=n)


def high_points(sample, alpha):
    _check_alpha(alpha)
    n = sample.n
    threshold = 4.0 * alpha / np.pi * np.log(n) ** 2
    xs, ys = np.nonzero(sample.field ** 2 / 2.0 >= threshold)
    # field row i holds interior site x = i + 1
    return PointSet('high', n, alpha, np.column_stack((xs + 1, ys + 1)), threshold)


def _delta2(a, b, side):
    d = np.abs(a[:, None, :] - b[None, :, :])
    if side is not None:
        d = np.minimum(d, side - d)
    return (d ** 2).sum(axis=2)


def _cutoff2(pset, beta, j):
    if not (0 < beta < 1):
        raise ValueError("Distance Error: beta must lie in (0, 1)")
    if j < 2:
        raise ValueError("Tuple Error: j must be >= 2")
    return float(pset.n) ** (2.0 * beta)


def _search_radius(cut2):
    # squared lattice distances are integers, so d <= r matches d^2 <= cut2 exactly
    return float(np.sqrt(np.floor(cut2) + 0.5))


def build_tree(pset):
    if pset.torus_side is None:
        return spatial.cKDTree(pset.members)
    side = pset.torus_side
    return spatial.cKDTree(pset.members % side, boxsize=side)


def close_adjacency(tree, cut2, diagonal=True):
    """Symmetric CSR matrix of close pairs; the identity is added when diagonal is set."""
    m = tree.n
    pairs = tree.query_pairs(_search_radius(cut2), output_type='ndarray')
    rows = np.concatenate((pairs[:, 0], pairs[:, 1]))
    cols = np.concatenate((pairs[:, 1], pairs[:, 0]))
    if diagonal:
        rows = np.concatenate((rows, np.arange(m)))
        cols = np.concatenate((cols, np.arange(m)))
    data = np.ones(rows.shape[0], dtype=np.int64)
    return sparse.coo_matrix((data, (rows, cols)), shape=(m, m)).tocsr()


def _count_triangles(adj, chunk=4096):
    count = 0
    for start in range(0, adj.shape[0], chunk):
        block = adj[start:start + chunk]
        count += int((block @ adj).multiply(block).sum())
    return count


def _count_cliques(adj, cands, remaining):
    if remaining == 1:
        return int(cands.shape[0])
    total = 0
    for v in cands:
        nbrs = adj.indices[adj.indptr[v]:adj.indptr[v + 1]]
        total += _count_cliques(adj, np.intersect1d(cands, nbrs, assume_unique=True), remaining - 1)
    return total


class PairCountReport:

    def __init__(self, n, alpha, beta, j, count, set_size, kind, diagonal=True):
        self.n = n
        self.alpha = alpha
        self.beta = beta
        self.j = j
        self.count = int(count)
        self.set_size = int(set_size)
        self.kind = kind
        self.diagonal = diagonal

    def check_invariants(self):
        errors = list()
        if self.count > self.set_size ** self.j:
            errors.append("count exceeds set_size^j")
        if self.j == 2 and self.diagonal and self.count < self.set_size:
            errors.append("count below set_size with the diagonal included")
        return errors

    def csv_row(self, trial, seed):
        return [self.n, self.alpha, self.beta, self.j, self.kind, trial, self.count, self.set_size, seed]


def tuple_count(pset, beta, j=2, diagonal=True):
    cut2 = _cutoff2(pset, beta, j)
    if pset.size == 0:
        return PairCountReport(pset.n, pset.alpha, beta, j, 0, 0, pset.kind, diagonal)
    tree = build_tree(pset)
    if j == 2:
        # ordered pairs, self-pairs included
        count = int(tree.count_neighbors(tree, _search_radius(cut2)))
        if not diagonal:
            count -= pset.size
    else:
        adj = close_adjacency(tree, cut2, diagonal)
        if j == 3:
            count = _count_triangles(adj)
        else:
            count = _count_cliques(adj, np.arange(pset.size), j)
    return PairCountReport(pset.n, pset.alpha, beta, j, count, pset.size, pset.kind, diagonal)


def tuple_count_exhaustive(pset, beta, j=2, diagonal=True):
    cut2 = _cutoff2(pset, beta, j)
    m = pset.size
    if m ** j > EXHAUSTIVE_LIMIT and j > 3:
        raise ValueError("Tuple Error: exhaustive enumeration too large")
    M = (_delta2(pset.members, pset.members, pset.torus_side) <= cut2).astype(np.int64)
    if not diagonal:
        np.fill_diagonal(M, 0)
    if j == 2:
        count = int(M.sum())
    elif j == 3:
        count = int(np.einsum('ab,ac,bc->', M, M, M))
    else:
        count = sum(1 for t in itertools.product(range(m), repeat=j)
                    if all(M[a, b] for a, b in itertools.combinations(t, 2)))
    return PairCountReport(pset.n, pset.alpha, beta, j, count, m, pset.kind, diagonal)


class ExponentFit:

    def __init__(self, points, slope, intercept, stderr, excluded=()):
        self.points = points
        self.slope = slope
        self.intercept = intercept
        self.stderr = stderr
        self.excluded = list(excluded)

    def to_dict(self):
        return {"points": [list(p) for p in self.points], "slope": self.slope,
                "intercept": self.intercept, "stderr": self.stderr,
                "excluded_scales": self.excluded}


def exponent_fit(series):
    """OLS of log count on log n over (n, count) pairs; zero counts are left out."""
    kept = [(n, c) for n, c in series if c > 0]
    excluded = [n for n, c in series if c <= 0]
    if excluded:
        logger.warning("zero counts excluded from the fit at n = %s", excluded)
    if len(kept) < 3:
        raise ValueError("Fit Error: fewer than 3 scales with positive counts")
    x = np.log([float(n) for n, _ in kept])
    y = np.log([float(c) for _, c in kept])
    res = stats.linregress(x, y)
    points = list(zip(x.tolist(), y.tolist()))
    return ExponentFit(points, float(res.slope), float(res.intercept), abs(float(res.stderr)), excluded)


def single_point_exponent(alpha):
    """Growth exponent of E|Psi_n(alpha)|."""
    _check_alpha(alpha)
    return 2.0 * (1.0 - alpha)


def _pair_hit(task):
    n, x, xp, threshold, seed = task
    record = simulate_disk_walk(n, seed)
    return record.count(x) >= threshold and record.count(xp) >= threshold


def pair_favorite_frequency(n, x, xp, alpha, trials, master_seed, workers=1):
    """Monte Carlo P(x, x' in Psi_n(alpha)) as (estimate, binomial standard error, hits)."""
    _check_alpha(alpha)
    if trials < 1:
        raise ValueError("Trial Error: trials must be >= 1")
    threshold = favorite_threshold(n, alpha)
    x = tuple(LatticePoint.of(x))
    xp = tuple(LatticePoint.of(xp))
    tasks = [(n, x, xp, threshold, trial_seed(master_seed, t, n)) for t in range(trials)]
    if workers > 1:
        with mp.Pool(workers) as pool:
            hits = sum(pool.map(_pair_hit, tasks))
    else:
        hits = sum(map(_pair_hit, tasks))
    p = hits / trials
    return p, float(np.sqrt(p * (1.0 - p) / trials)), int(hits)
