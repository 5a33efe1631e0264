# -*- coding: utf-8 -*-
"""
@license: "MIT"
@version: "1.0"
@created: "27 March 2026"
@modified: "15 May 2026"

Discrete Gaussian free field on the box interior {1..n-1}^2 with zero boundary.

The covariance is the Green's function of the walk killed on leaving the interior,
G = (I - P)^{-1} (expected visits), so that phi^2/2 thresholds are on the same scale
as the favorite-point thresholds. Samples are phi = L xi with G = L L^T.

"""

import json
import logging
import numpy as np
from scipy import linalg
from scipy import stats
from .common.lattice import LatticePoint, BoxDomain
from .common.seeding import make_generator
from .potential import DirichletSolver


logger = logging.getLogger(__name__)

MAX_SIDE = 128
RESIDUAL_TOL = 1e-8


class CovarianceFactor:

    def __init__(self, n, factor, green):
        self.n = int(n)
        self.factor = factor
        self.green = green
        self.residual = float(np.max(np.abs(factor @ factor.T - green)))

    @property
    def size(self):
        return self.factor.shape[0]

    def site_index(self, point):
        p = LatticePoint.of(point)
        m = self.n - 1
        if not (1 <= p.x <= m and 1 <= p.y <= m):
            raise ValueError("Box Error: " + str(tuple(p)) + " is not an interior site")
        return (p.x - 1) * m + (p.y - 1)

    def covariance(self, x, y):
        return float(self.green[self.site_index(x), self.site_index(y)])

    def check_invariants(self):
        errors = list()
        if np.max(np.abs(self.green - self.green.T)) > 1e-10:
            errors.append("G not symmetric")
        if self.residual > RESIDUAL_TOL:
            errors.append("factorisation residual " + str(self.residual))
        return errors


def build_covariance(n):
    if n < 2:
        raise ValueError("Box Error: side must be >= 2")
    if n > MAX_SIDE:
        raise ValueError("Box Error: side " + str(n) + " exceeds the dense factorisation bound " + str(MAX_SIDE))
    solver = DirichletSolver(BoxDomain(n), method='direct')
    green = linalg.inv(solver.A.toarray())
    green = 0.5 * (green + green.T)
    factor = linalg.cholesky(green, lower=True)
    cov = CovarianceFactor(n, factor, green)
    logger.info("box n=%d: %d interior sites, factor residual %.2e", n, cov.size, cov.residual)
    if cov.residual > RESIDUAL_TOL:
        raise ArithmeticError("Covariance Error: residual " + str(cov.residual) + " above " + str(RESIDUAL_TOL))
    return cov


class GFFSample:

    def __init__(self, n, field, seed):
        self.n = int(n)
        self.field = np.asarray(field, dtype=np.float64).reshape(self.n - 1, self.n - 1)
        self.seed = int(seed)

    def value(self, point):
        p = LatticePoint.of(point)
        m = self.n - 1
        if 1 <= p.x <= m and 1 <= p.y <= m:
            return float(self.field[p.x - 1, p.y - 1])
        return 0.0

    def max(self):
        return float(self.field.max())

    def header(self):
        return json.dumps({"n": self.n, "seed": self.seed, "dtype": "<f8", "order": "row-major",
                           "covariance": "killed-walk Green's function (I - P)^-1"})

    def to_bytes(self):
        return np.ascontiguousarray(self.field, dtype='<f8').tobytes()

    @staticmethod
    def from_bytes(header, data):
        meta = json.loads(header)
        n = meta["n"]
        field = np.frombuffer(data, dtype='<f8').reshape(n - 1, n - 1)
        return GFFSample(n, field.copy(), meta["seed"])

    def save_h5(self, store, group=None):
        if group is None:
            group = 'fields/gff/n' + str(self.n) + '_s' + str(self.seed)
        store.add_h5_dataset(group, self.field, attrs={"n": self.n, "seed": str(self.seed)})
        return group


def sample(factor, seed):
    rng = make_generator(seed)
    xi = rng.standard_normal(factor.size)
    return GFFSample(factor.n, factor.factor @ xi, seed)


def ks_gaussianity(values, variance):
    """Kolmogorov-Smirnov p-value of values / sqrt(variance) against N(0, 1)."""
    z = np.asarray(values, dtype=float) / np.sqrt(variance)
    return float(stats.kstest(z, 'norm').pvalue)
