# -*- coding: utf-8 -*-
"""
@license: "MIT"
@version: "1.0"
@created: "18 March 2026"
@modified: "11 May 2026"

Pair exponents of the alpha-favorite points:

rho2(alpha, beta)      almost-sure growth exponent of |{(x, x') in Psi_n^2: d <= n^beta}|
rho2_hat(alpha, beta)  growth exponent of its expectation

Both are written piecewise and as variational problems over the rate function
F_{h,beta}(gamma) = gamma^2 (1 - beta) + (h / beta) (1 - gamma (1 - beta))^2,
rho2 with the constraint alpha gamma^2 <= 1, rho2_hat without it but with an outer
supremum over beta' <= beta.

"""

import numpy as np
from scipy import optimize


XATOL = 1e-10
GRID_POINTS = 10 ** 4
SNAP = 1e-6


def _check_range(alpha, beta):
    if not (0 < alpha < 1) or not (0 < beta < 1):
        raise ValueError("Exponent Error: alpha and beta must lie in (0, 1)")


def _F(h, beta, gamma):
    return gamma ** 2 * (1.0 - beta) + (h / beta) * (1.0 - gamma * (1.0 - beta)) ** 2


def F(h, beta, gamma):
    if beta == 0:
        raise ZeroDivisionError("Exponent Error: F is undefined at beta = 0")
    if not (0 < beta < 1) or h < 0 or gamma < 0:
        raise ValueError("Exponent Error: need beta in (0, 1), h >= 0, gamma >= 0")
    return _F(h, beta, gamma)


def rho2_branch_point(alpha):
    return 2.0 * (1.0 - np.sqrt(alpha))


def rho2_hat_branch_point(alpha):
    return 2.0 - np.sqrt(2.0 * alpha)


def _rho2_first(alpha, beta):
    return 2.0 + 2.0 * beta - 4.0 * alpha / (2.0 - beta)


def _rho2_second(alpha, beta):
    u = 1.0 - np.sqrt(alpha)
    return 8.0 * u - 4.0 * u * u / beta


def _rho2_hat_second(alpha):
    return 6.0 - 4.0 * np.sqrt(2.0 * alpha)


def rho2(alpha, beta):
    _check_range(alpha, beta)
    if beta <= rho2_branch_point(alpha):
        return _rho2_first(alpha, beta)
    return _rho2_second(alpha, beta)


def rho2_hat(alpha, beta):
    _check_range(alpha, beta)
    if beta <= rho2_hat_branch_point(alpha):
        return _rho2_first(alpha, beta)
    return _rho2_hat_second(alpha)


def rho2_floor(alpha, beta):
    """2(1 - alpha) + 2 beta (1 - alpha): lower bound on rho2 from a single favorite point and its n^beta ball."""
    _check_range(alpha, beta)
    return 2.0 * (1.0 - alpha) + 2.0 * beta * (1.0 - alpha)


class VariationalResult:

    def __init__(self, value, argument, optimiser, constraint_active=False):
        self.value = float(value)
        self.argument = float(argument)
        self.optimiser = optimiser
        self.constraint_active = constraint_active

    def to_dict(self):
        return {"value": self.value, "argument": self.argument, "optimiser": self.optimiser,
                "constraint_active": self.constraint_active}


def _minimise(f, lo, hi):
    """Bounded Brent search with a dense grid guard against a missed basin."""
    # f must accept numpy arrays for the grid pass
    res = optimize.minimize_scalar(f, bounds=(lo, hi), method='bounded', options={'xatol': XATOL})
    x, fx, how = float(res.x), float(res.fun), 'bounded-brent'
    grid = np.linspace(lo, hi, GRID_POINTS)
    values = np.asarray(f(grid), dtype=float)
    k = int(np.argmin(values))
    if values[k] < fx - 1e-9:
        a = grid[max(k - 1, 0)]
        b = grid[min(k + 1, GRID_POINTS - 1)]
        res = optimize.minimize_scalar(f, bounds=(a, b), method='bounded', options={'xatol': XATOL})
        x, fx, how = float(res.x), float(res.fun), 'grid'
        if values[k] < fx:
            x, fx = float(grid[k]), float(values[k])
    for end in (lo, hi):
        if abs(x - end) <= SNAP and f(end) <= fx + 1e-12:
            x, fx = end, f(end)
    return x, fx, how


def rho2_variational(alpha, beta):
    """2 + 2 beta - 2 alpha inf{F_{2,beta}(gamma): 0 <= gamma <= 1/sqrt(alpha)}."""
    _check_range(alpha, beta)
    bound = 1.0 / np.sqrt(alpha)
    gamma, fmin, how = _minimise(lambda g: _F(2.0, beta, g), 0.0, bound)
    active = bound - gamma <= SNAP
    return VariationalResult(2.0 + 2.0 * beta - 2.0 * alpha * fmin, gamma, how, active)


def inner_optimum(alpha, beta_prime):
    # unconstrained minimiser of F_{2,beta'} is gamma = 2 / (2 - beta')
    return 2.0 + 2.0 * beta_prime - 2.0 * alpha * _F(2.0, beta_prime, 2.0 / (2.0 - beta_prime))


def rho2_hat_variational(alpha, beta):
    """sup over 0 < beta' <= beta of sup_gamma {2 + 2 beta' - 2 alpha F_{2,beta'}(gamma)}."""
    _check_range(alpha, beta)
    lo = min(1e-9, beta / 2.0)
    bp, neg, how = _minimise(lambda b: -inner_optimum(alpha, b), lo, beta)
    return VariationalResult(-neg, bp, how, False)


def branch_jumps(alphas):
    """Gap between the two branches of rho2 and of rho2_hat on their branch curves."""
    jumps = list()
    for a in alphas:
        b = rho2_branch_point(a)
        if 0 < b < 1:
            jumps.append(abs(_rho2_first(a, b) - _rho2_second(a, b)))
        b = rho2_hat_branch_point(a)
        if 0 < b < 1:
            jumps.append(abs(_rho2_first(a, b) - _rho2_hat_second(a)))
    return max(jumps) if jumps else 0.0


def grid_axis(size):
    return np.arange(1, size + 1) / (size + 1.0)


DUALITY_HEADER = ['alpha', 'beta', 'rho2', 'rho2_variational', 'rho2_diff',
                  'rho2_hat', 'rho2_hat_variational', 'rho2_hat_diff', 'rho2_constraint_active']


def duality_grid(size=50, alphas=None, betas=None):
    """Rows of piecewise vs variational values over an (alpha, beta) grid."""
    alphas = grid_axis(size) if alphas is None else alphas
    betas = grid_axis(size) if betas is None else betas
    rows = list()
    for a in alphas:
        for b in betas:
            r = rho2(a, b)
            rv = rho2_variational(a, b)
            h = rho2_hat(a, b)
            hv = rho2_hat_variational(a, b)
            rows.append([float(a), float(b), r, rv.value, abs(r - rv.value),
                         h, hv.value, abs(h - hv.value), rv.constraint_active])
    return rows


def grid_summary(rows):
    r = np.array([row[2] for row in rows])
    h = np.array([row[5] for row in rows])
    return {"points": len(rows),
            "max_rho2_diff": float(max(row[4] for row in rows)),
            "max_rho2_hat_diff": float(max(row[7] for row in rows)),
            "hat_dominates": bool(np.all(h >= r - 1e-12))}


def monotonicity_violations(alphas, betas):
    """Sign checks: both exponents decrease in alpha; rho2 increases and rho2_hat does not decrease in beta."""
    bad = list()
    for f, strict_beta in ((rho2, True), (rho2_hat, False)):
        table = np.array([[f(a, b) for b in betas] for a in alphas])
        if np.any(np.diff(table, axis=0) >= 0):
            bad.append(f.__name__ + " not decreasing in alpha")
        d = np.diff(table, axis=1)
        if (strict_beta and np.any(d <= 0)) or np.any(d < -1e-12):
            bad.append(f.__name__ + " not increasing in beta")
    return bad
