# -*- coding: utf-8 -*-
"""
@license: "MIT"
@created: "10 March 2026"

Usage:
    $python -m unittest tests.test_potential

"""

import csv
import os
import tempfile
import unittest
import numpy as np
from src.nearfav.algorithms import potential as pt
from src.nearfav.algorithms.common.lattice import DiskDomain, LatticePoint, ORIGIN


class TestGreenFunction(unittest.TestCase):

    def test_unit_disk(self):
        # one return through a leaf site with probability 1/4
        self.assertAlmostEqual(pt.green_function(1, ORIGIN, ORIGIN), 4.0 / 3.0, places=12)

    def test_symmetry_and_harmonicity(self):
        n = 10
        y = LatticePoint(2, -3)
        domain, g = pt.green_vector(n, y)
        self.assertAlmostEqual(g[domain.index_of((-4, 1))], pt.green_function(n, y, (-4, 1)), places=10)
        for i in range(domain.size):
            p = domain.point_at(i)
            if p == y:
                continue
            avg = 0.25 * sum(g[domain.index_of(q)] if domain.contains(q) else 0.0 for q in p.neighbors())
            self.assertLess(abs(g[i] - avg), 1e-10)

    def test_origin_window(self):
        for n in (16, 32):
            g = pt.green_function(n, ORIGIN, ORIGIN)
            self.assertLess(abs(g - 2.0 / np.pi * np.log(n)), 2.0)

    def test_half_radius_value(self):
        for y in ((25, 0), (15, 20)):
            g = pt.green_function(50, ORIGIN, y)
            asym = pt.evaluate_asymptotic('green', n=50, x=y)
            self.assertAlmostEqual(asym, 2.0 / np.pi * np.log(2.0), places=12)
            self.assertLess(abs(g - asym), 0.10 * asym)

    def test_cg_matches_direct(self):
        domain = DiskDomain(15)
        a = pt.DirichletSolver(domain, method='direct').green_column((3, 4))
        b = pt.DirichletSolver(domain, method='cg').green_column((3, 4))
        self.assertLess(np.max(np.abs(a - b)), 1e-9)
        with self.assertRaises(ValueError):
            pt.DirichletSolver(domain, method='jacobi')

    def test_outside_points(self):
        with self.assertRaises(ValueError):
            pt.green_function(5, (6, 0), ORIGIN)


class TestHitting(unittest.TestCase):

    def test_return_variant(self):
        n = 30
        x = (3, 1)
        ret = pt.hitting_probability(n, x, [x])
        self.assertAlmostEqual(ret, 1.0 - 1.0 / pt.green_function(n, x, x), places=10)
        self.assertEqual(pt.hitting_probability(n, x, [x], variant='entry'), 1.0)

    def test_escape(self):
        n = 20
        self.assertAlmostEqual(pt.escape_probability(n), 1.0 / pt.green_function(n, ORIGIN, ORIGIN), places=10)

    def test_first_hit_split(self):
        n = 25
        x, xp = (4, 0), (-4, 0)
        a = pt.first_hit_before(n, x, xp)
        b = pt.first_hit_before(n, xp, x)
        self.assertAlmostEqual(a, b, places=10)
        self.assertAlmostEqual(a + b, pt.hitting_probability(n, ORIGIN, [x, xp]), places=10)

    def test_point_hit_window(self):
        n, y = 50, (25, 0)
        leading = pt.evaluate_asymptotic('point-hit', x=y, R=n)
        # log R plus the lattice constant gamma + (3/2) log 2 in the denominator
        corrected = np.log(2.0) / (np.log(n) + np.euler_gamma + 1.5 * np.log(2.0))
        toward = pt.hitting_probability(n, y, [ORIGIN])
        self.assertLess(abs(toward - corrected), 0.10 * corrected)
        away = pt.hitting_probability(n, ORIGIN, [y])
        self.assertAlmostEqual(away, pt.green_function(n, ORIGIN, y) / pt.green_function(n, y, y), places=10)
        self.assertLess(0.9 * corrected, away)
        self.assertLess(away, leading)

    def test_errors(self):
        with self.assertRaises(ValueError):
            pt.hitting_probability(10, ORIGIN, [])
        with self.assertRaises(ValueError):
            pt.hitting_probability(10, ORIGIN, [(11, 0)])
        with self.assertRaises(ValueError):
            pt.hitting_probability(10, ORIGIN, [(1, 0)], variant='first')


class TestTwoPoint(unittest.TestCase):

    def test_symmetric_w(self):
        wm = pt.w_matrix(20, (3, 2), (-3, -2))
        self.assertAlmostEqual(wm.w[0, 0], wm.w[1, 1], places=10)
        self.assertAlmostEqual(wm.w[0, 1], wm.w[1, 0], places=10)
        self.assertEqual(wm.check_invariants(), [])
        self.assertGreater(wm.determinant(), 0)

    def test_coincident(self):
        with self.assertRaises(ValueError):
            pt.w_matrix(10, (1, 1), (1, 1))
        with self.assertRaises(ValueError):
            pt.two_point_chain(10, (1, 1), (1, 1))

    def test_split_algebra(self):
        p1, p2 = pt.two_point_exit_split(pt.WMatrix([[2.0, 0.0], [0.0, 4.0]], (0, 0), (1, 0), 'test'))
        self.assertAlmostEqual(p1, 0.5)
        self.assertAlmostEqual(p2, 0.25)
        p1, p2 = pt.two_point_exit_split(pt.WMatrix([[3.0, 1.0], [1.0, 3.0]], (0, 0), (1, 0), 'test'))
        self.assertAlmostEqual(p1, 0.25)
        self.assertAlmostEqual(p2, 0.25)
        with self.assertRaises(ArithmeticError):
            pt.two_point_exit_split(pt.WMatrix([[1.0, 1.0], [1.0, 1.0]], (0, 0), (1, 0), 'test'))

    def test_split_against_avoidance(self):
        x1, x2 = (10, 0), (-10, 0)
        wm = pt.w_matrix(60, x1, x2)
        p1, p2 = pt.two_point_exit_split(wm)
        self.assertLess(pt.exit_split_residual(wm, p1, p2), 1e-10)
        self.assertAlmostEqual(p1, pt.avoidance_probability(60, x1, x2, x1), places=10)
        self.assertAlmostEqual(p2, pt.avoidance_probability(60, x1, x2, x2), places=10)

    def test_chain_rows(self):
        tpc = pt.two_point_chain(25, (2, 3), (-5, 1))
        self.assertLess(np.max(np.abs(tpc.row_sums() - 1.0)), 1e-12)
        self.assertAlmostEqual(tpc.b[0, 1], tpc.b[1, 0], places=10)
        self.assertAlmostEqual(tpc.b[0, 2], pt.avoidance_probability(25, (2, 3), (-5, 1), (2, 3)), places=10)

    def test_chain_adjacent_and_symmetric(self):
        tpc = pt.two_point_chain(8, (0, 0), (1, 0))
        self.assertGreaterEqual(tpc.b[0, 1], 0.25)
        sym = pt.two_point_chain(20, (4, 0), (-4, 0))
        self.assertAlmostEqual(sym.b[0, 0], sym.b[1, 1], places=10)
        self.assertAlmostEqual(sym.b[0, 2], sym.b[1, 2], places=10)
        self.assertAlmostEqual(sym.log_distance_ratio(), np.log(8) / np.log(20))


class TestPairBounds(unittest.TestCase):

    def test_sandwich_order(self):
        bounds = pt.pair_favorite_bounds(60, (4, 0), (0, 4), 0.12)
        self.assertEqual(bounds.alpha_tilde, 3)
        self.assertTrue(0 <= bounds.lower <= bounds.upper <= 1)
        self.assertLessEqual(bounds.lower, bounds.lower_chain * (1 + 1e-12))
        self.assertLessEqual(bounds.upper_tight, bounds.upper * (1 + 1e-12))

    def test_two_visit_form(self):
        n, x, xp = 40, (3, 0), (-3, 0)
        bounds = pt.pair_favorite_bounds(n, x, xp, 0.1)
        self.assertEqual(bounds.alpha_tilde, 2)
        tpc = pt.two_point_chain(n, bounds.x, bounds.xp)
        q = pt.first_hit_before(n, bounds.x, bounds.xp)
        expected = q * tpc.b[0, 1] / 4.0 * (tpc.b[0, 0] + tpc.b[0, 1]) ** 2
        self.assertAlmostEqual(bounds.lower, expected, places=12)

    def test_degenerate_level(self):
        with self.assertRaises(ValueError):
            pt.pair_favorite_bounds(60, (4, 0), (0, 4), 0.01)


class TestAsymptotics(unittest.TestCase):

    def test_formulas(self):
        self.assertAlmostEqual(pt.evaluate_asymptotic('escape', n=np.exp(10)), np.pi / 20)
        self.assertAlmostEqual(pt.evaluate_asymptotic('ring-hit', x=(6, 8), r=2, R=10), 0.0)
        self.assertAlmostEqual(pt.evaluate_asymptotic('green', n=100), 2.9317, places=4)
        self.assertAlmostEqual(pt.evaluate_asymptotic('point-hit', x=(3, 4), R=25), np.log(5) / np.log(25))
        self.assertAlmostEqual(pt.evaluate_asymptotic('pair-escape', n=60, s=0.5),
                               np.pi / (3.0 * np.log(60)))

    def test_geometry_errors(self):
        with self.assertRaises(ValueError):
            pt.evaluate_asymptotic('ring-hit', x=1, r=2, R=10)
        with self.assertRaises(ValueError):
            pt.evaluate_asymptotic('escape', n=1)
        with self.assertRaises(ValueError):
            pt.evaluate_asymptotic('potential', n=10)

    def test_comparison_csv(self):
        exact = pt.escape_probability(25)
        row = pt.comparison_row(25, ORIGIN, ORIGIN, 'escape', exact, pt.evaluate_asymptotic('escape', n=25))
        with tempfile.TemporaryDirectory() as tmp:
            path = os.path.join(tmp, 'comparison.csv')
            pt.write_comparison_csv(path, [row])
            with open(path, newline='') as f:
                rows = list(csv.reader(f))
        self.assertEqual(rows[0], pt.COMPARISON_HEADER)
        self.assertEqual(rows[1][3], 'escape')
        self.assertGreater(float(rows[1][6]), 0)


if __name__ == '__main__':
    unittest.main()
