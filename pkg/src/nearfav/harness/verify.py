# -*- coding: utf-8 -*-
"""
@license: "MIT"
@version: "1.1"
@created: "06 April 2026"
@modified: "19 May 2026"

Verification suites. Each suite runs the invariant battery of one module and returns a
Verdict (JSON serialisable); quick=True runs reduced sizes. The trend suite runs a whole
experiment and checks the fitted growth exponent of the mean pair count.

"""

import csv
import json
import logging
import os
import tempfile
import numpy as np
from ..algorithms.common.lattice import LatticePoint, DiskDomain, BoxDomain, ORIGIN
from ..algorithms.common.seeding import make_generator, trial_seed
from ..algorithms import occupation as oc
from ..algorithms import potential as pt
from ..algorithms import exponents as ex
from ..algorithms import gff
from ..algorithms import point_sets as ps
from ..algorithms.walk_engine import (simulate_disk_walk, simulate_torus_walk, max_local_time_ratio,
                                      cover_time_ratio)
from .config import ExperimentConfig
from .experiment import Experiment


logger = logging.getLogger(__name__)

SUITES = ('combinatorics', 'potential', 'exponents', 'gff', 'walk', 'points', 'trend')
# lattice constant of G_n(0, 0) - (2/pi) log n
GREEN_CONSTANT = (2.0 * np.euler_gamma + np.log(8.0)) / np.pi


class Verdict:

    def __init__(self, suite, params):
        self.suite = suite
        self.params = params
        self.checks = list()

    def check(self, name, passed, **detail):
        passed = bool(passed)
        self.checks.append({"name": name, "passed": passed, "detail": detail})
        if not passed:
            logger.warning("%s: check %s failed %s", self.suite, name, detail)
        return passed

    @property
    def passed(self):
        return all(c["passed"] for c in self.checks)

    def to_dict(self):
        return {"suite": self.suite, "passed": self.passed, "params": self.params, "checks": self.checks}

    def jsonify(self):
        return json.dumps(self.to_dict(), indent=2, default=float)

    def save(self, path):
        with open(path, 'w') as f:
            f.write(self.jsonify())


def _relative_error(exact, value):
    if exact == 0:
        return abs(value)
    return abs(value - float(exact)) / float(exact)


def verify_combinatorics(quick=False, seed=0, out=None):
    limit = 8 if quick else 12
    log_limit = 20 if quick else 60
    v = Verdict('combinatorics', {"max_length": limit, "max_log_length": log_limit, "chains": 5, "seed": seed})
    rng = make_generator(seed)
    chains = [oc.ThreeStateChain.random_rational(rng) for _ in range(5)]
    cases = 0
    mismatches = 0
    for chain in chains:
        for n1 in range(1, limit):
            for n2 in range(1, limit - n1 + 1):
                for end in (1, 2):
                    q = oc.OccupationQuery(n1, n2, end)
                    cases += 1
                    if oc.occupation_probability(chain, q) != oc.occupation_brute_force(chain, q):
                        mismatches += 1
    v.check('closed form equals enumeration', mismatches == 0, cases=cases, mismatches=mismatches)

    worst = 0.0
    for chain in chains:
        fchain = chain.to_float()
        for n1 in range(1, log_limit):
            for n2 in range(1, log_limit - n1 + 1):
                for end in (1, 2):
                    q = oc.OccupationQuery(n1, n2, end)
                    worst = max(worst, _relative_error(oc.occupation_probability(chain, q),
                                                       oc.occupation_probability(fchain, q, log_domain=True)))
    v.check('log-domain relative error', worst <= 1e-10, max_rel_err=worst, max_length=log_limit)
    length = 5 if quick else 7
    totals = [sum(oc.occupation_table(chain, length).values()) for chain in chains]
    v.check('occupation law sums to one', all(t == 1 for t in totals), length=length)
    return v


def _random_pairs(rng, n, count):
    domain = DiskDomain(n)
    pairs = list()
    while len(pairs) < count:
        i, k = rng.integers(0, domain.size, size=2)
        if i != k:
            pairs.append((domain.point_at(int(i)), domain.point_at(int(k))))
    return pairs


BOUND_PANEL = [((4, 0), (0, 4), 0.12), ((10, 0), (-10, 0), 0.07), ((1, 0), (2, 0), 0.12),
               ((5, 0), (5, 8), 0.07), ((3, 3), (-3, -3), 0.12)]


def verify_potential(quick=False, seed=0, out=None, workers=1):
    v = Verdict('potential', {"quick": quick, "seed": seed})
    rows = list()

    # escape probability against pi / (2 log n)
    scales = [25, 50, 100] if quick else [25, 50, 100, 200]
    devs, scaled, corrected = list(), list(), dict()
    for n in scales:
        exact = pt.escape_probability(n)
        asym = pt.evaluate_asymptotic('escape', n=n)
        rows.append(pt.comparison_row(n, ORIGIN, ORIGIN, 'escape', exact, asym))
        devs.append(abs(exact - asym) / exact)
        scaled.append(abs(exact - asym) * np.log(n))
        corrected[n] = abs(exact - 1.0 / (2.0 / np.pi * np.log(n) + GREEN_CONSTANT)) / exact
    v.check('escape deviation decreasing', all(b < a for a, b in zip(devs, devs[1:])), deviations=devs)
    v.check('escape deviation times log n bounded', max(scaled) <= 1.0, scaled=scaled)
    v.check('escape within 10% at n=100 after the lattice constant', corrected[100] <= 0.10,
            relative_error=corrected[100], leading_term_error=devs[scales.index(100)])

    # Green's function growth at the origin
    gscales = [16, 32, 64] if quick else [16, 32, 64, 128, 256]
    slope, values = pt.green_growth_fit(gscales)
    for n, g in zip(gscales, values):
        rows.append(pt.comparison_row(n, ORIGIN, ORIGIN, 'green', g, pt.evaluate_asymptotic('green', n=n)))
    v.check('green slope within 3% of 2/pi', abs(slope - 2.0 / np.pi) <= 0.03 * 2.0 / np.pi, slope=slope)
    v.check('green at origin within 2 of leading term',
            all(abs(g - 2.0 / np.pi * np.log(n)) <= 2.0 for n, g in zip(gscales, values)), values=values)

    # symmetry and harmonicity
    n = 20 if quick else 40
    domain, g = pt.green_vector(n, (3, -2))
    y = LatticePoint(3, -2)
    sym = abs(g[domain.index_of((-5, 7))] - pt.green_function(n, (3, -2), (-5, 7)))
    _, g2 = pt.green_vector(n, (-5, 7))
    sym = max(sym, abs(g[domain.index_of((-5, 7))] - g2[domain.index_of(y)]))
    harm = 0.0
    for i in range(domain.size):
        p = domain.point_at(i)
        if p == y:
            continue
        avg = 0.25 * sum(g[domain.index_of(q)] if domain.contains(q) else 0.0 for q in p.neighbors())
        harm = max(harm, abs(g[i] - avg))
    v.check('green symmetric', sym <= 1e-10, max_diff=sym)
    v.check('green harmonic off the pole', harm <= 1e-10, residual=harm)

    # W decomposition against direct avoidance solves
    rng = make_generator(seed)
    wn = 20 if quick else 60
    pairs = _random_pairs(rng, wn, 10 if quick else 100)
    worst_res, worst_split, bad_w, worst_row, worst_rev = 0.0, 0.0, 0, 0.0, 0.0
    for x1, x2 in pairs:
        wm = pt.w_matrix(wn, x1, x2)
        if wm.check_invariants():
            bad_w += 1
            continue
        p1, p2 = pt.two_point_exit_split(wm)
        worst_res = max(worst_res, pt.exit_split_residual(wm, p1, p2))
        worst_split = max(worst_split, abs(p1 - pt.avoidance_probability(wn, x1, x2, x1)),
                          abs(p2 - pt.avoidance_probability(wn, x1, x2, x2)))
        tpc = pt.two_point_chain(wn, x1, x2)
        worst_row = max(worst_row, float(np.max(np.abs(tpc.row_sums() - 1.0))))
        worst_rev = max(worst_rev, abs(tpc.b[0, 1] - tpc.b[1, 0]))
    v.check('W invariants', bad_w == 0, violations=bad_w, pairs=len(pairs))
    v.check('exit split reconstruction', worst_res <= 1e-10, residual=worst_res)
    v.check('exit split equals avoidance solve', worst_split <= 1e-10, max_diff=worst_split)
    v.check('two-point chain rows sum to one', worst_row <= 1e-12, max_diff=worst_row)
    v.check('two-point chain reversibility', worst_rev <= 1e-10, max_diff=worst_rev)

    tpc = pt.two_point_chain(60, (5, 0), (5, 8))
    s = tpc.log_distance_ratio()
    pred = pt.evaluate_asymptotic('pair-escape', n=60, s=s)
    rows.append(pt.comparison_row(60, (5, 0), (5, 8), 'pair-escape', tpc.b[0, 2], pred))
    v.check('pair escape within 25% of leading term', abs(tpc.b[0, 2] - pred) <= 0.25 * tpc.b[0, 2],
            exact=tpc.b[0, 2], asymptotic=pred)

    # Monte Carlo sandwich of the pair bounds
    panel = BOUND_PANEL[:1] if quick else BOUND_PANEL
    trials = 2000 if quick else 10 ** 5
    for k, (x, xp, alpha) in enumerate(panel):
        bounds = pt.pair_favorite_bounds(60, x, xp, alpha)
        p, sd, _ = ps.pair_favorite_frequency(60, x, xp, alpha, trials, trial_seed(seed, k), workers)
        v.check('bound sandwich ' + str(x) + ' ' + str(xp),
                bounds.lower - 3 * sd <= p <= bounds.upper + 3 * sd and bounds.lower <= bounds.upper,
                estimate=p, stderr=sd, bounds=bounds.to_dict())

    if out is not None:
        pt.write_comparison_csv(os.path.join(out, 'comparison.csv'), rows)
    return v


def verify_exponents(quick=False, seed=0, out=None):
    size = 10 if quick else 50
    v = Verdict('exponents', {"grid": size})
    rows = ex.duality_grid(size)
    summary = ex.grid_summary(rows)
    v.check('rho2 piecewise equals variational', summary["max_rho2_diff"] <= 1e-6, **summary)
    v.check('rho2_hat piecewise equals variational', summary["max_rho2_hat_diff"] <= 1e-6)
    v.check('rho2_hat dominates rho2', summary["hat_dominates"])
    axis = ex.grid_axis(size)
    jump = ex.branch_jumps(list(axis) + [0.04, 0.25, 0.64])
    v.check('continuous across branch curves', jump <= 1e-9, max_jump=jump)
    mismatched = [(a, b) for a, b, *_, active in rows
                  if abs(b - ex.rho2_branch_point(a)) > 1e-4 and active != (b > ex.rho2_branch_point(a))]
    v.check('constraint active iff beta > 2(1 - sqrt(alpha))', not mismatched, mismatched=mismatched[:5])
    bad = ex.monotonicity_violations(axis, axis)
    v.check('monotone in alpha and beta', not bad, violations=bad)
    known = [(ex.rho2(0.25, 0.5), 7.0 / 3.0), (ex.rho2(0.25, 0.9), 159.0 / 55.0),
             (ex.rho2(0.64, 0.9), 64.0 / 45.0),
             (ex.rho2_hat(0.5, 0.9), 109.0 / 55.0), (ex.rho2_hat(0.845, 0.8), 0.8),
             (ex.rho2_hat(0.1, 0.5), 41.0 / 15.0)]
    v.check('known values', all(abs(a - b) <= 1e-12 for a, b in known), values=known)
    if out is not None:
        with open(os.path.join(out, 'exponents.csv'), 'w', newline='') as f:
            writer = csv.writer(f, lineterminator='\n')
            writer.writerow(ex.DUALITY_HEADER)
            writer.writerows(rows)
    return v


def verify_gff(quick=False, seed=0, out=None):
    n = 16 if quick else 32
    samples = 2000 if quick else 10 ** 4
    v = Verdict('gff', {"n": n, "samples": samples, "seed": seed})
    factor = gff.build_covariance(n)
    v.check('covariance factor', not factor.check_invariants(), errors=factor.check_invariants())
    c = LatticePoint(n // 2, n // 2)
    d = LatticePoint(n // 2 + 1, n // 2)
    solver = pt.DirichletSolver(BoxDomain(n))
    col = solver.green_column(c)
    diag_err = abs(col[solver.domain.index_of(c)] - factor.covariance(c, c))
    v.check('diagonal equals box green function', diag_err <= 1e-8, diff=diag_err)

    vals = np.array([[s.value(c), s.value(d)] for s in
                     (gff.sample(factor, trial_seed(seed, t, n)) for t in range(samples))])
    g11, g22, g12 = factor.covariance(c, c), factor.covariance(d, d), factor.covariance(c, d)
    mean_se = np.sqrt(g11 / samples)
    v.check('centred', abs(vals[:, 0].mean()) <= 3 * mean_se, mean=vals[:, 0].mean(), stderr=mean_se)
    var_se = g11 * np.sqrt(2.0 / (samples - 1))
    v.check('variance equals G', abs(vals[:, 0].var(ddof=1) - g11) <= 3 * var_se,
            variance=vals[:, 0].var(ddof=1), green=g11)
    cov = float(np.cov(vals[:, 0], vals[:, 1])[0, 1])
    cov_se = np.sqrt((g11 * g22 + g12 * g12) / samples)
    v.check('covariance equals G', abs(cov - g12) <= 4 * cov_se, covariance=cov, green=g12)
    pvalue = gff.ks_gaussianity(vals[:, 0], g11)
    v.check('gaussian at the centre', pvalue >= 0.01, ks_pvalue=pvalue)

    sides = [8, 16] if quick else [16, 32, 64]
    count = 30 if quick else 100
    ratios = list()
    for m in sides:
        f = factor if m == n else gff.build_covariance(m)
        ratios.append(float(np.mean([gff.sample(f, trial_seed(seed + 1, t, m)).max() / np.log(m)
                                     for t in range(count)])))
    v.check('max trend non-decreasing', all(b >= a for a, b in zip(ratios, ratios[1:])), ratios=ratios)
    if not quick:
        v.check('max ratio at n=64 in [0.9, 1.9]', 0.9 <= ratios[-1] <= 1.9, ratio=ratios[-1])
    return v


def verify_walk(quick=False, seed=0, out=None):
    scales = [16, 32] if quick else [32, 256]
    seeds = 50 if quick else 1000
    # quick mode couples and reruns a prefix of the seeds, full mode all of them
    paired = 20 if quick else seeds
    v = Verdict('walk', {"scales": scales, "seeds": seeds, "paired_seeds": paired, "seed": seed})
    bad, coupled = 0, 0
    for n in scales:
        for t in range(seeds):
            s = trial_seed(seed, t, n)
            rec = simulate_disk_walk(n, s, keep_path=(t < paired))
            if rec.check_invariants():
                bad += 1
            if t < paired:
                big = simulate_disk_walk(2 * n, s, keep_path=True)
                if np.array_equal(big.path[:rec.path.shape[0]], rec.path):
                    coupled += 1
                again = simulate_disk_walk(n, s, keep_path=True)
                if again.jsonify() != rec.jsonify() or not np.array_equal(again.path, rec.path):
                    bad += 1
    v.check('walk invariants and reruns', bad == 0, failures=bad)
    v.check('prefix coupling', coupled == paired * len(scales), coupled=coupled)

    tiny = simulate_torus_walk(2, seed)
    v.check('tiny torus covered', tiny.covered and not tiny.check_invariants())
    short = simulate_torus_walk(16, seed, horizon=10)
    v.check('fixed horizon hits at most 11 sites', short.finite_count() <= 11, hit=short.finite_count())

    if not quick:
        means = list()
        for n in (64, 128, 256, 512):
            means.append(float(np.mean([max_local_time_ratio(simulate_disk_walk(n, trial_seed(seed + 1, t, n)))
                                        for t in range(50)])))
        v.check('max local time trend', all(b > a for a, b in zip(means, means[1:]))
                and 0.4 <= means[-1] <= 4.0 / np.pi + 0.4, means=means)
    return v


def verify_points(quick=False, seed=0, out=None):
    sets = 20 if quick else 100
    v = Verdict('points', {"sets": sets, "seed": seed})
    rng = make_generator(seed)
    mismatches = 0
    for k in range(sets):
        size = int(rng.integers(1, 41 if quick else 201))
        side = 64
        pts = np.unique(rng.integers(0, side, size=(size, 2)), axis=0)
        torus = side if k % 4 == 3 else None
        pset = ps.PointSet('late' if torus else 'favorite', 100, 0.5, pts, 1, torus_side=torus)
        beta = float(rng.uniform(0.2, 0.8))
        for j in (2, 3):
            if ps.tuple_count(pset, beta, j).count != ps.tuple_count_exhaustive(pset, beta, j).count:
                mismatches += 1
    v.check('spatial index equals exhaustive enumeration', mismatches == 0, mismatches=mismatches)

    side = 16 if quick else 64
    runs = 5 if quick else 20
    ratios, nested = list(), True
    for t in range(runs):
        rec = simulate_torus_walk(side, trial_seed(seed, t, side))
        ratios.append(cover_time_ratio(rec))
        a, b = ps.late_points(rec, 0.3), ps.late_points(rec, 0.2)
        nested &= all(b.contains(p) for p in a.member_list())
    v.check('late sets nested in alpha', nested)
    median = float(np.median(ratios))
    if quick:
        v.check('cover ratio finite', np.isfinite(median), median=median)
    else:
        v.check('median cover ratio in [0.6, 2.2]', 0.6 <= median <= 2.2, median=median)
    return v


def verify_trend(quick=False, seed=0, out=None, workers=1):
    """Growth of the mean favorite pair count against rho2_hat(0.1, 0.5) = 41/15."""
    scales = [16, 32, 64, 128] if quick else [64, 128, 256, 512]
    trials = 20 if quick else 200
    alpha, beta = 0.1, 0.5
    target = ex.rho2_hat(alpha, beta)
    v = Verdict('trend', {"scales": scales, "trials": trials, "alpha": alpha, "beta": beta, "seed": seed})
    with tempfile.TemporaryDirectory() as tmp:
        cfg = ExperimentConfig(scales=scales, alpha=alpha, beta=beta, trials=trials, seed=seed,
                               workers=workers, out=os.path.join(out, 'trend') if out else tmp)
        manifest = Experiment(cfg).run_experiment()
    series = [(a["n"], a["mean_count"]) for a in manifest.aggregates]
    full = ps.exponent_fit(series)
    lower, upper = ps.exponent_fit(series[:3]), ps.exponent_fit(series[1:])
    v.check('all scales fitted', not full.excluded, excluded=full.excluded)
    if quick:
        v.check('pair count grows', full.slope > 0, slope=full.slope)
    else:
        v.check('slope within 0.5 of rho2_hat', abs(full.slope - target) <= 0.5, slope=full.slope,
                stderr=full.stderr, target=target)
        v.check('upper scales at least as close as lower scales',
                abs(upper.slope - target) <= abs(lower.slope - target),
                upper=upper.slope, lower=lower.slope, target=target)
    return v


def verify(suite, quick=False, seed=0, out=None, workers=1):
    if suite not in SUITES:
        raise ValueError("Suite Error: unknown suite " + str(suite))
    if suite in ('potential', 'trend'):
        runner = verify_potential if suite == 'potential' else verify_trend
        return runner(quick, seed, out, workers)
    runners = {'combinatorics': verify_combinatorics, 'exponents': verify_exponents,
               'gff': verify_gff, 'walk': verify_walk, 'points': verify_points}
    return runners[suite](quick, seed, out)
