# -*- coding: utf-8 -*-
"""
@license: "MIT"
@version: "1.1"
@created: "09 March 2026"
@modified: "12 May 2026"

Potential theory of the walk killed on leaving a finite lattice domain.

Every quantity is the solution of a discrete Dirichlet problem (I - P) h = b on the
sites that are neither outside the domain nor absorbing. Hitting times follow
T_D = inf{m >= 1: S_m in D}: started inside the target the probability is a return
probability (one-step average of the first-entry function).

"""

import csv
import logging
import numpy as np
from scipy import sparse
from scipy.sparse import linalg as spla
from scipy import stats
from .common.lattice import LatticePoint, DiskDomain, ORIGIN, distance
from .occupation import ThreeStateChain, OccupationQuery, occupation_probability
from .point_sets import favorite_threshold


logger = logging.getLogger(__name__)

DIRECT_SITES = 52000  # about pi * 128^2
CG_TOL = 1e-12
CG_MAXITER = 200000
RETURN = 'return'
ENTRY = 'entry'


class DirichletSolver:
    """Single-use context for the killed walk on `domain` with `absorbing` sites removed."""

    def __init__(self, domain, absorbing=(), method='auto'):
        self.domain = domain
        self.absorbing = [LatticePoint.of(p) for p in absorbing]
        absorbed = list()
        for p in self.absorbing:
            i = domain.index_of(p)
            if i < 0:
                raise ValueError("Domain Error: absorbing site " + str(tuple(p)) + " outside the domain")
            absorbed.append(i)
        keep = np.ones(domain.size, dtype=bool)
        keep[absorbed] = False
        self.free = np.nonzero(keep)[0]
        self.position = np.full(domain.size, -1, dtype=np.int64)
        self.position[self.free] = np.arange(self.free.size)
        self.nb = domain.neighbor_table()[self.free]

        m = self.free.size
        nb_pos = np.where(self.nb >= 0, self.position[np.maximum(self.nb, 0)], -1)
        rows = np.repeat(np.arange(m), 4)
        cols = nb_pos.ravel()
        mask = cols >= 0
        P = sparse.csr_matrix((np.full(int(mask.sum()), 0.25), (rows[mask], cols[mask])), shape=(m, m))
        self.A = (sparse.identity(m, format='csr') - P).tocsc()
        if method == 'auto':
            method = 'direct' if domain.size <= DIRECT_SITES else 'cg'
        if method not in ('direct', 'cg'):
            raise ValueError("Solver Error: unknown method " + str(method))
        self.method = method
        self._lu = None

    def solve(self, rhs):
        if self.free.size == 0:
            return np.zeros(0)
        if self.method == 'cg':
            diag = self.A.diagonal()
            M = spla.LinearOperator(self.A.shape, matvec=lambda v: v / diag)
            h, info = spla.cg(self.A, rhs, rtol=CG_TOL, atol=0.0, maxiter=CG_MAXITER, M=M)
            if info == 0:
                return h
            logger.warning("CG did not converge (info=%s), falling back to sparse LU", info)
        if self._lu is None:
            self._lu = spla.splu(self.A)
        return self._lu.solve(np.asarray(rhs, dtype=float))

    def boundary_rhs(self, values=None, outside=0.0):
        full = np.zeros(self.domain.size)
        if values:
            for p, v in values.items():
                full[self.domain.index_of(p)] = v
        rhs = np.zeros(self.free.size)
        for k in range(4):
            nbk = self.nb[:, k]
            out = nbk < 0
            rhs[out] += 0.25 * outside
            absorbed = (~out) & (self.position[np.maximum(nbk, 0)] < 0)
            rhs[absorbed] += 0.25 * full[nbk[absorbed]]
        return rhs

    def unit_rhs(self, point):
        i = self.domain.index_of(point)
        if i < 0 or self.position[i] < 0:
            raise ValueError("Domain Error: " + str(tuple(LatticePoint.of(point))) + " is not a free site")
        rhs = np.zeros(self.free.size)
        rhs[self.position[i]] = 1.0
        return rhs

    def extend(self, h, values=None):
        full = np.zeros(self.domain.size)
        full[self.free] = h
        if values:
            for p, v in values.items():
                full[self.domain.index_of(p)] = v
        return full

    def value_at(self, full, point, outside=0.0):
        i = self.domain.index_of(point)
        return outside if i < 0 else float(full[i])

    def step_average(self, full, point, outside=0.0):
        p = LatticePoint.of(point)
        return 0.25 * sum(self.value_at(full, q, outside) for q in p.neighbors())

    def green_column(self, y):
        return self.extend(self.solve(self.unit_rhs(y)))


def _check_inside(domain, *points):
    for p in points:
        if not domain.contains(p):
            raise ValueError("Domain Error: " + str(tuple(LatticePoint.of(p))) + " outside D(0, " +
                             str(domain.radius) + ")")


def green_vector(n, y):
    domain = DiskDomain(n)
    _check_inside(domain, y)
    return domain, DirichletSolver(domain).green_column(y)


def green_function(n, x, y):
    domain, g = green_vector(n, y)
    _check_inside(domain, x)
    return float(g[domain.index_of(x)])


def _entry_or_return(solver, full, start, targets, variant, outside=0.0, inside_value=1.0):
    if LatticePoint.of(start) in targets:
        if variant == ENTRY:
            return inside_value
        return solver.step_average(full, start, outside)
    return solver.value_at(full, start, outside)


def hitting_probability(n, start, targets, variant=RETURN):
    """P^start(T_targets < tau_n); `variant` is 'return' (m >= 1) or 'entry' (m >= 0)."""
    targets = set(LatticePoint.of(t) for t in targets)
    if not targets:
        raise ValueError("Target Error: empty target set")
    if variant not in (RETURN, ENTRY):
        raise ValueError("Target Error: unknown variant " + str(variant))
    domain = DiskDomain(n)
    _check_inside(domain, start, *targets)
    solver = DirichletSolver(domain, absorbing=targets)
    values = {t: 1.0 for t in targets}
    full = solver.extend(solver.solve(solver.boundary_rhs(values, outside=0.0)), values)
    return _entry_or_return(solver, full, start, targets, variant)


def escape_probability(n, x=ORIGIN):
    """P^x(tau_n < T_x), solved directly rather than as 1 - return probability."""
    domain = DiskDomain(n)
    _check_inside(domain, x)
    solver = DirichletSolver(domain, absorbing=[x])
    values = {LatticePoint.of(x): 0.0}
    full = solver.extend(solver.solve(solver.boundary_rhs(values, outside=1.0)), values)
    return solver.step_average(full, x, outside=1.0)


def avoidance_probability(n, x1, x2, start):
    """P^start(tau_n < T_{x1,x2}) from one direct avoidance solve."""
    domain = DiskDomain(n)
    _check_inside(domain, x1, x2, start)
    targets = {LatticePoint.of(x1), LatticePoint.of(x2)}
    solver = DirichletSolver(domain, absorbing=targets)
    values = {t: 0.0 for t in targets}
    full = solver.extend(solver.solve(solver.boundary_rhs(values, outside=1.0)), values)
    return _entry_or_return(solver, full, start, targets, RETURN, outside=1.0, inside_value=0.0)


def first_hit_before(n, target, other, start=ORIGIN):
    """P^start(T_target < T_other ^ tau_n)."""
    domain = DiskDomain(n)
    _check_inside(domain, target, other, start)
    target = LatticePoint.of(target)
    other = LatticePoint.of(other)
    solver = DirichletSolver(domain, absorbing=[target, other])
    values = {target: 1.0, other: 0.0}
    full = solver.extend(solver.solve(solver.boundary_rhs(values, outside=0.0)), values)
    return _entry_or_return(solver, full, start, {target, other}, RETURN)


class WMatrix:

    def __init__(self, w, x1, x2, stop):
        self.w = np.asarray(w, dtype=float).reshape(2, 2)
        self.x1 = LatticePoint.of(x1)
        self.x2 = LatticePoint.of(x2)
        self.stop = stop

    def determinant(self):
        w = self.w
        return w[0, 0] * w[1, 1] - w[0, 1] * w[1, 0]

    def check_invariants(self):
        w = self.w
        errors = list()
        if not w[0, 1] < w[1, 1]:
            errors.append("W12 >= W22")
        if not w[1, 0] < w[0, 0]:
            errors.append("W21 >= W11")
        if not self.determinant() > 0:
            errors.append("non-positive determinant")
        return errors


def w_matrix(n, x1, x2):
    x1 = LatticePoint.of(x1)
    x2 = LatticePoint.of(x2)
    if x1 == x2:
        raise ValueError("Point Error: x1 and x2 coincide")
    domain = DiskDomain(n)
    _check_inside(domain, x1, x2)
    solver = DirichletSolver(domain)
    g1 = solver.green_column(x1)
    g2 = solver.green_column(x2)
    i1 = domain.index_of(x1)
    i2 = domain.index_of(x2)
    w = [[g1[i1], g2[i1]],
         [g1[i2], g2[i2]]]
    return WMatrix(w, x1, x2, domain.describe())


def two_point_exit_split(wm):
    """(P^{x1}(tau < T_{x1,x2}), P^{x2}(tau < T_{x1,x2})) from the W system."""
    w = wm.w
    det = wm.determinant()
    if not np.isfinite(det) or det <= 0:
        raise ArithmeticError("WMatrix Error: singular or corrupted matrix (det=" + str(det) + ")")
    p1 = (w[1, 1] - w[0, 1]) / det
    p2 = (w[0, 0] - w[1, 0]) / det
    return p1, p2


def exit_split_residual(wm, p1, p2):
    w = wm.w
    return float(max(abs(1.0 - (w[i, 0] * p1 + w[i, 1] * p2)) for i in range(2)))


class LogDistanceRatio:

    def __init__(self, n, x, xp):
        if n < 2:
            raise ValueError("Radius Error: n must be >= 2")
        self.value = float(np.log(distance(x, xp)) / np.log(n))


class TwoPointChain:

    def __init__(self, b, n, x, xp):
        self.b = np.asarray(b, dtype=float).reshape(2, 3)
        self.n = int(n)
        self.x = LatticePoint.of(x)
        self.xp = LatticePoint.of(xp)

    def row_sums(self):
        return self.b.sum(axis=1)

    def log_distance_ratio(self):
        return LogDistanceRatio(self.n, self.x, self.xp).value

    def as_chain(self):
        return ThreeStateChain.from_two_point_chain(self)


def two_point_chain(n, x, xp):
    """b_{i,l} = P^{U_i}(first of T_x, T_x', tau_n is the one for U_l), (U1, U2, U3) = (x, x', dD(0,n))."""
    x = LatticePoint.of(x)
    xp = LatticePoint.of(xp)
    if x == xp:
        raise ValueError("Point Error: x and x' coincide")
    domain = DiskDomain(n)
    _check_inside(domain, x, xp)
    solver = DirichletSolver(domain, absorbing=[x, xp])
    setups = [({x: 1.0, xp: 0.0}, 0.0), ({x: 0.0, xp: 1.0}, 0.0), ({x: 0.0, xp: 0.0}, 1.0)]
    b = np.zeros((2, 3))
    for l, (values, outside) in enumerate(setups):
        full = solver.extend(solver.solve(solver.boundary_rhs(values, outside)), values)
        for i, u in enumerate((x, xp)):
            b[i, l] = solver.step_average(full, u, outside)
    return TwoPointChain(b, n, x, xp)


class PairBounds:

    def __init__(self, n, x, xp, alpha, alpha_tilde, lower, upper, lower_chain, upper_tight,
                 swapped, first_hit_ordered):
        self.n = n
        self.x = x
        self.xp = xp
        self.alpha = alpha
        self.alpha_tilde = alpha_tilde
        self.lower = lower
        self.upper = upper
        self.lower_chain = lower_chain
        self.upper_tight = upper_tight
        self.swapped = swapped
        self.first_hit_ordered = first_hit_ordered

    def as_tuple(self):
        return self.lower, self.upper

    def to_dict(self):
        return {"n": self.n, "x": list(self.x), "x_prime": list(self.xp), "alpha": self.alpha,
                "alpha_tilde": self.alpha_tilde, "lower": self.lower, "upper": self.upper,
                "lower_chain": self.lower_chain, "upper_tight": self.upper_tight,
                "swapped": self.swapped, "first_hit_ordered": self.first_hit_ordered}


def pair_favorite_bounds(n, x, xp, alpha):
    """Two-sided bounds on P(x, x' in Psi_n(alpha)).

    lower: P(T_x < T_x' ^ tau_n) b12 alpha~^-2 P^x(T_{x,x'} < tau_n)^(2 alpha~ - 2), valid once
    b11 <= b22 (x and x' are swapped otherwise).
    upper: max_{y in {x,x'}} P^y(T_{x,x'} < tau_2n)^(2 alpha~ - 1).
    """
    a_t = favorite_threshold(n, alpha)
    if a_t < 2:
        raise ValueError("Bound Error: alpha~ = " + str(a_t) + " < 2")
    x = LatticePoint.of(x)
    xp = LatticePoint.of(xp)
    tpc = two_point_chain(n, x, xp)
    swapped = False
    if tpc.b[0, 0] > tpc.b[1, 1]:
        x, xp = xp, x
        tpc = two_point_chain(n, x, xp)
        swapped = True
    q_first = first_hit_before(n, x, xp)
    q_second = first_hit_before(n, xp, x)
    b = tpc.b
    stay = b[0, 0] + b[0, 1]
    lower = q_first * b[0, 1] / a_t ** 2 * stay ** (2 * a_t - 2)
    lower_chain = q_first * occupation_probability(tpc.as_chain(), OccupationQuery(a_t - 1, a_t, 2))
    returns_n = max(hitting_probability(n, y, [x, xp]) for y in (x, xp))
    returns_2n = max(hitting_probability(2 * n, y, [x, xp]) for y in (x, xp))
    upper_tight = returns_n ** (2 * a_t - 1)
    upper = returns_2n ** (2 * a_t - 1)
    return PairBounds(n, x, xp, alpha, a_t, lower, upper, lower_chain, upper_tight, swapped,
                      q_second <= q_first)


def _norm(x):
    if isinstance(x, (tuple, list, LatticePoint)):
        return float(np.hypot(x[0], x[1]))
    return float(x)


def evaluate_asymptotic(kind, **params):
    """Leading-order formulas with the correction terms dropped.

    ring-hit:   P^x(tau_r < tau_R) ~ log(R/|x|) / log(R/r)       (x, r, R)
    point-hit:  P^x(T_0 < tau_R)   ~ log(R/|x|) / log R          (x, R)
    green:      G_n(x, 0) ~ (2/pi) log(n/|x|), (2/pi) log n at 0 (n, x)
    escape:     P(tau_n < T_0)     ~ pi / (2 log n)              (n)
    pair-escape: b13               ~ pi / (2 (2 - s) log n)      (n, s)
    """
    if kind == 'ring-hit':
        r, R, ax = float(params['r']), float(params['R']), _norm(params['x'])
        if not (0 < r < ax <= R):
            raise ValueError("Geometry Error: need 0 < r < |x| <= R")
        return np.log(R / ax) / np.log(R / r)
    if kind == 'point-hit':
        R, ax = float(params['R']), _norm(params['x'])
        if not (0 < ax <= R) or R <= 1:
            raise ValueError("Geometry Error: need 0 < |x| <= R, R > 1")
        return np.log(R / ax) / np.log(R)
    if kind == 'green':
        n = float(params['n'])
        ax = _norm(params.get('x', 0.0))
        if n < 2 or ax > n:
            raise ValueError("Geometry Error: need n >= 2 and |x| <= n")
        if ax == 0:
            return 2.0 / np.pi * np.log(n)
        return 2.0 / np.pi * np.log(n / ax)
    if kind == 'escape':
        n = float(params['n'])
        if n < 2:
            raise ValueError("Geometry Error: need n >= 2")
        return np.pi / (2.0 * np.log(n))
    if kind == 'pair-escape':
        n, s = float(params['n']), float(params['s'])
        if n < 2 or not (0 <= s <= 1):
            raise ValueError("Geometry Error: need n >= 2 and 0 <= s <= 1")
        return np.pi / (2.0 * (2.0 - s) * np.log(n))
    raise ValueError("Asymptotic Error: unknown kind " + str(kind))


def green_growth_fit(scales):
    """OLS slope of G_n(0, 0) against log n; the leading term predicts 2/pi."""
    values = [green_function(n, ORIGIN, ORIGIN) for n in scales]
    fit = stats.linregress(np.log(scales), values)
    return fit.slope, values


COMPARISON_HEADER = ['n', 'x', 'y', 'quantity', 'exact', 'asymptotic', 'rel_err']


def comparison_row(n, x, y, quantity, exact, asymptotic):
    rel = abs(exact - asymptotic) / abs(exact) if exact != 0 else float('inf')
    return {'n': n, 'x': str(tuple(LatticePoint.of(x))), 'y': str(tuple(LatticePoint.of(y))),
            'quantity': quantity, 'exact': repr(float(exact)), 'asymptotic': repr(float(asymptotic)),
            'rel_err': repr(float(rel))}


def write_comparison_csv(path, rows):
    with open(path, 'w', newline='') as f:
        writer = csv.DictWriter(f, fieldnames=COMPARISON_HEADER)
        writer.writeheader()
        for row in rows:
            writer.writerow(row)
