# -*- coding: utf-8 -*-
"""
@license: "MIT"
@version: "1.0"
@created: "03 March 2026"
@modified: "21 April 2026"

Lattice sites of Z^2 and the finite domains the walk and the Dirichlet solver live on.

D(z, r) := {y: d(z, y) <= r} (closed Euclidean disk), and dG is the set of sites
outside G adjacent to some site of G.

"""

from collections import namedtuple
import numpy as np


# east, west, north, south
STEPS = np.array([[1, 0], [-1, 0], [0, 1], [0, -1]], dtype=np.int64)


class LatticePoint(namedtuple('LatticePoint', ['x', 'y'])):
    __slots__ = ()

    def norm2(self):
        return self.x * self.x + self.y * self.y

    def norm(self):
        return float(np.hypot(self.x, self.y))

    def shift(self, dx, dy):
        return LatticePoint(self.x + dx, self.y + dy)

    def neighbors(self):
        return [LatticePoint(self.x + int(s[0]), self.y + int(s[1])) for s in STEPS]

    @staticmethod
    def of(point):
        if isinstance(point, LatticePoint):
            return point
        x, y = point
        if int(x) != x or int(y) != y:
            raise ValueError("Lattice Error: non-integer coordinates " + str(point))
        return LatticePoint(int(x), int(y))


ORIGIN = LatticePoint(0, 0)


def distance(p, q):
    p = LatticePoint.of(p)
    q = LatticePoint.of(q)
    return float(np.hypot(p.x - q.x, p.y - q.y))


def in_disk(point, n, center=ORIGIN):
    p = LatticePoint.of(point)
    c = LatticePoint.of(center)
    dx = p.x - c.x
    dy = p.y - c.y
    return dx * dx + dy * dy <= n * n


def on_disk_boundary(point, n, center=ORIGIN):
    # outside D(center, n) but adjacent to it
    if in_disk(point, n, center):
        return False
    p = LatticePoint.of(point)
    return any(in_disk(q, n, center) for q in p.neighbors())


class LatticeDomain:
    """Finite set of sites with a dense index lookup padded by one ring.

    The padding guarantees every neighbour of a site can be looked up without a bounds
    check, which the solver and the neighbour table rely on.
    """

    def __init__(self, sites):
        sites = np.asarray(sites, dtype=np.int64).reshape(-1, 2)
        if sites.shape[0] == 0:
            raise ValueError("Domain Error: empty site set")
        order = np.lexsort((sites[:, 1], sites[:, 0]))
        self.sites = sites[order]
        self.size = self.sites.shape[0]
        self.lo = self.sites.min(axis=0) - 1
        hi = self.sites.max(axis=0) + 1
        shape = tuple(int(v) for v in (hi - self.lo + 1))
        self.lookup = np.full(shape, -1, dtype=np.int64)
        self.lookup[self.sites[:, 0] - self.lo[0], self.sites[:, 1] - self.lo[1]] = np.arange(self.size)

    def index_of(self, point):
        p = LatticePoint.of(point)
        i = p.x - int(self.lo[0])
        j = p.y - int(self.lo[1])
        if i < 0 or j < 0 or i >= self.lookup.shape[0] or j >= self.lookup.shape[1]:
            return -1
        return int(self.lookup[i, j])

    def contains(self, point):
        return self.index_of(point) >= 0

    def point_at(self, index):
        return LatticePoint(int(self.sites[index, 0]), int(self.sites[index, 1]))

    def neighbor_table(self):
        # (size, 4) indices of the neighbours, -1 for sites outside the domain
        table = np.empty((self.size, 4), dtype=np.int64)
        for k in range(4):
            nb = self.sites + STEPS[k]
            table[:, k] = self.lookup[nb[:, 0] - self.lo[0], nb[:, 1] - self.lo[1]]
        return table


class DiskDomain(LatticeDomain):

    def __init__(self, n, center=ORIGIN):
        if n < 1:
            raise ValueError("Radius Error: n must be >= 1")
        self.radius = int(n)
        self.center = LatticePoint.of(center)
        r = self.radius
        xs, ys = np.meshgrid(np.arange(-r, r + 1), np.arange(-r, r + 1), indexing='ij')
        mask = xs * xs + ys * ys <= r * r
        sites = np.column_stack((xs[mask] + self.center.x, ys[mask] + self.center.y))
        super().__init__(sites)

    def describe(self):
        return "exit of D(" + str(tuple(self.center)) + ", " + str(self.radius) + ")"


class BoxDomain(LatticeDomain):
    """Interior {1, ..., n-1}^2 of the box of side n with zero boundary."""

    def __init__(self, n):
        if n < 2:
            raise ValueError("Box Error: side must be >= 2")
        self.side = int(n)
        xs, ys = np.meshgrid(np.arange(1, n), np.arange(1, n), indexing='ij')
        super().__init__(np.column_stack((xs.ravel(), ys.ravel())))

    def describe(self):
        return "exit of the box interior {1.." + str(self.side - 1) + "}^2"
