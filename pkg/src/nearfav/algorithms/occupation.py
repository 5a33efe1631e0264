# -*- coding: utf-8 -*-
"""
@license: "MIT"
@version: "1.0"
@created: "06 March 2026"
@modified: "28 April 2026"

Joint occupation law of a Markov chain on {1, 2, 3} started at 1: the probability that
among X_1, ..., X_{n1+n2} state 1 is visited n1 times, state 2 n2 times, and the chain
ends at state 2 (or 1). Closed forms are evaluated exactly over Fractions, in plain
floats, or in the log domain; a brute-force enumeration serves as the oracle.

"""

import itertools
import math
from fractions import Fraction
import numpy as np
from scipy.special import gammaln, logsumexp, xlogy


BRUTE_FORCE_LIMIT = 20
TABLE_LIMIT = 12
LOG_DOMAIN_FROM = 200
ROW_TOL = 1e-12


class ThreeStateChain:

    def __init__(self, d):
        rows = [list(row) for row in d]
        if len(rows) != 3 or any(len(row) != 3 for row in rows):
            raise ValueError("Chain Error: transition matrix must be 3x3")
        self.exact = all(isinstance(v, (int, Fraction)) for row in rows for v in row)
        if self.exact:
            self.d = [[Fraction(v) for v in row] for row in rows]
        else:
            self.d = [[float(v) for v in row] for row in rows]
        for i, row in enumerate(self.d):
            if any(v < 0 or v > 1 for v in row):
                raise ValueError("Chain Error: row " + str(i + 1) + " has entries outside [0, 1]")
            total = sum(row)
            if (self.exact and total != 1) or (not self.exact and abs(total - 1.0) > ROW_TOL):
                raise ValueError("Chain Error: row " + str(i + 1) + " sums to " + str(total))

    def p(self, i, l):
        return self.d[i - 1][l - 1]

    def swapped(self):
        perm = [1, 0, 2]
        return ThreeStateChain([[self.d[perm[i]][perm[l]] for l in range(3)] for i in range(3)])

    def to_float(self):
        return ThreeStateChain([[float(v) for v in row] for row in self.d])

    def to_array(self):
        return np.array([[float(v) for v in row] for row in self.d])

    @staticmethod
    def uniform():
        third = Fraction(1, 3)
        return ThreeStateChain([[third] * 3 for _ in range(3)])

    @staticmethod
    def random_rational(rng, max_weight=9):
        rows = list()
        for _ in range(3):
            w = rng.integers(0, max_weight + 1, size=3)
            if w.sum() == 0:
                w[rng.integers(0, 3)] = 1
            total = int(w.sum())
            rows.append([Fraction(int(v), total) for v in w])
        return ThreeStateChain(rows)

    @staticmethod
    def from_two_point_chain(tpc):
        # states (x, x', boundary); the boundary is absorbing
        b = tpc.b
        return ThreeStateChain([[b[0][0], b[0][1], b[0][2]],
                                [b[1][0], b[1][1], b[1][2]],
                                [0.0, 0.0, 1.0]])


class OccupationQuery:

    def __init__(self, n1, n2, end_state):
        if n1 < 1 or n2 < 1:
            raise ValueError("Query Error: n1 and n2 must both be >= 1")
        if end_state not in (1, 2):
            raise ValueError("Query Error: end state must be 1 or 2")
        self.n1 = int(n1)
        self.n2 = int(n2)
        self.end_state = int(end_state)

    def length(self):
        return self.n1 + self.n2


def binomial(n, k):
    if k < 0 or k > n:
        return 0
    return math.comb(n, k)


def _terms(q):
    # (i, exponents of d11, d12, d21, d22, binomial pairs)
    n1, n2 = q.n1, q.n2
    if q.end_state == 2:
        for i in range(0, min(n1, n2 - 1) + 1):
            yield (n1 - i, i + 1, i, n2 - i - 1), ((n1, i), (n2 - 1, i))
    else:
        for i in range(1, min(n1, n2) + 1):
            yield (n1 - i, i, i, n2 - i), ((n1, i), (n2 - 1, i - 1))


def occupation_probability(chain, q, log_domain=None):
    bases = (chain.p(1, 1), chain.p(1, 2), chain.p(2, 1), chain.p(2, 2))
    if chain.exact:
        total = Fraction(0)
        for exps, binoms in _terms(q):
            term = Fraction(binomial(*binoms[0]) * binomial(*binoms[1]))
            for base, e in zip(bases, exps):
                term *= base ** e
            total += term
        return total

    if log_domain is None:
        log_domain = q.length() > LOG_DOMAIN_FROM
    if not log_domain:
        total = 0.0
        for exps, binoms in _terms(q):
            term = float(binomial(*binoms[0]) * binomial(*binoms[1]))
            for base, e in zip(bases, exps):
                term *= base ** e
            total += term
        return total

    lg = gammaln(np.arange(q.length() + 2, dtype=float))
    logs = list()
    for exps, binoms in _terms(q):
        lt = 0.0
        for n, k in binoms:
            lt += lg[n + 1] - lg[k + 1] - lg[n - k + 1]
        for base, e in zip(bases, exps):
            lt += xlogy(e, base)
        logs.append(lt)
    if not logs:
        return 0.0
    value = logsumexp(logs)
    return float(np.exp(value)) if np.isfinite(value) else 0.0


def _sequence_weight(chain, start, seq):
    weight = Fraction(1) if chain.exact else 1.0
    prev = start
    for s in seq:
        weight *= chain.p(prev, s)
        prev = s
    return weight


def occupation_brute_force(chain, q, start=1):
    """Sum of path weights over all X_1..X_{n1+n2} in {1,2} with n1 ones ending at end_state."""
    length = q.length()
    if length > BRUTE_FORCE_LIMIT:
        raise ValueError("Oracle Error: n1 + n2 = " + str(length) + " exceeds " + str(BRUTE_FORCE_LIMIT))
    total = Fraction(0) if chain.exact else 0.0
    for ones in itertools.combinations(range(length), q.n1):
        seq = [2] * length
        for pos in ones:
            seq[pos] = 1
        if seq[-1] != q.end_state:
            continue
        total += _sequence_weight(chain, start, seq)
    return total


def occupation_table(chain, length, start=1):
    """Full law over {1,2,3}^length: keys (n1, n2, end) for paths inside {1,2}, 'state3' for the rest."""
    if length < 1 or length > TABLE_LIMIT:
        raise ValueError("Oracle Error: length must lie in [1, " + str(TABLE_LIMIT) + "]")
    table = dict()
    table['state3'] = Fraction(0) if chain.exact else 0.0
    for seq in itertools.product((1, 2, 3), repeat=length):
        w = _sequence_weight(chain, start, seq)
        if 3 in seq:
            table['state3'] += w
            continue
        key = (seq.count(1), seq.count(2), seq[-1])
        table[key] = table.get(key, 0) + w
    return table
