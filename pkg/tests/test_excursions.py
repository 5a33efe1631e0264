# -*- coding: utf-8 -*-
"""
@license: "MIT"
@created: "24 March 2026"

Usage:
    $python -m unittest tests.test_excursions

"""

import math
import unittest
import numpy as np
from src.nearfav.algorithms import excursions as exc
from src.nearfav.algorithms.common.seeding import make_generator
from src.nearfav.algorithms.walk_engine import simulate_disk_walk


def random_path(seed, length=3000):
    steps = np.array([(1, 0), (-1, 0), (0, 1), (0, -1)])
    rng = make_generator(seed)
    moves = steps[rng.integers(0, 4, size=length)]
    return np.vstack(([0, 0], np.cumsum(moves, axis=0)))


class TestSchedules(unittest.TestCase):

    def test_factorial(self):
        sch = exc.build_schedule('factorial', levels=4)
        self.assertEqual(sch.radii, [1, 8, 216, 13824])
        self.assertEqual(sch.levels, [1, 2, 3, 4])
        self.assertEqual(exc.build_schedule('factorial', levels=3).horizon(), 27 * 216)

    def test_factorial_flags(self):
        sch = exc.build_schedule('factorial', levels=10)
        self.assertEqual(sch.representable, [True] * 9 + [False])
        self.assertEqual(sch.to_dict()["radii"][9], str(math.factorial(10) ** 3))
        with self.assertRaises(ValueError):
            exc.build_schedule('factorial', levels=21)

    def test_geometric(self):
        sch = exc.build_schedule('geometric', levels=5, base=4, ratio=4)
        self.assertEqual(sch.radii, [4, 16, 64, 256, 1024])
        with self.assertRaises(ValueError):
            sch.horizon()
        with self.assertRaises(ValueError):
            exc.build_schedule('geometric', levels=5, base=4, ratio=1)

    def test_explicit(self):
        sch = exc.build_schedule('explicit', radii=[2, 5, 9])
        self.assertEqual(sch.size, 3)
        with self.assertRaises(ValueError):
            exc.build_schedule('explicit', radii=[2, 5, 5])
        with self.assertRaises(ValueError):
            exc.build_schedule('spiral', levels=3)

    def test_reference_counts(self):
        sch = exc.build_schedule('factorial', levels=4, alpha=0.5, gamma=1.0, n=10)
        self.assertAlmostEqual(sch.reference_count(2), 192.0 * math.log(2))
        self.assertAlmostEqual(sch.tilde_count(3), 6.0 * 0.5 * 9 * math.log(3))
        self.assertEqual(sch.reference_count(1), 0.0)


class TestCounting(unittest.TestCase):

    def test_straight_outward(self):
        path = [(i, 0) for i in range(0, 40)]
        self.assertEqual(exc.count_excursions(path, (0, 0), 20, 5), 0)
        self.assertEqual(exc.count_excursions(path, (0, 0), 20, 5, direction='outward'), 1)

    def test_oscillation(self):
        leg = list(range(0, 12)) + list(range(12, 0, -1))
        path = [(x, 0) for x in leg * 3] + [(0, 0)]
        self.assertEqual(exc.count_excursions(path, (0, 0), 10, 2), 3)
        self.assertEqual(exc.count_excursions(path, (0, 0), 10, 2, direction='outward'), 3)

    def test_boundary_is_closed(self):
        path = [(10, 0), (11, 0), (2, 0)]
        self.assertEqual(exc.count_excursions(path, (0, 0), 10, 2), 1)
        path = [(10, 0), (3, 0)]
        self.assertEqual(exc.count_excursions(path, (0, 0), 10, 2), 0)

    def test_agrees_with_scan(self):
        for seed in range(6):
            path = random_path(seed)
            for direction in ('inward', 'outward'):
                a = exc.count_excursions(path, (3, -2), 15, 4, direction=direction)
                b = exc.count_excursions_scan(path, (3, -2), 15, 4, direction=direction)
                self.assertEqual(a, b)
            n_in = exc.count_excursions(path, (0, 0), 12, 3)
            n_out = exc.count_excursions(path, (0, 0), 12, 3, direction='outward')
            self.assertLessEqual(abs(n_in - n_out), 1)

    def test_translation(self):
        path = random_path(17)
        shifted = path + np.array([100, -50])
        self.assertEqual(exc.count_excursions(path, (1, 1), 10, 3),
                         exc.count_excursions(shifted, (101, -49), 10, 3))

    def test_stop_radius(self):
        leg = list(range(0, 12)) + list(range(12, 0, -1))
        path = [(x, 0) for x in leg * 2] + [(x, 0) for x in range(0, 40)] + [(0, 0)]
        self.assertEqual(exc.count_excursions(path, (0, 0), 10, 2), 3)
        self.assertEqual(exc.count_excursions(path, (0, 0), 10, 2, stop_radius=30), 2)

    def test_errors(self):
        with self.assertRaises(ValueError):
            exc.count_excursions([(0, 0)], (0, 0), 3, 5)
        with self.assertRaises(ValueError):
            exc.count_excursions([(0, 0)], (0, 0), 5, 3, direction='sideways')
        with self.assertRaises(ValueError):
            exc.count_excursions([], (0, 0), 5, 3)


class TestDiagnostic(unittest.TestCase):

    def setUp(self):
        self.record = simulate_disk_walk(64, 99, keep_path=True)
        self.schedule = exc.build_schedule('geometric', levels=5, base=2, ratio=2, alpha=0.2)

    def observed(self):
        return {k: exc.count_excursions(self.record.path, (0, 0), self.schedule.radius(k),
                                        self.schedule.radius(k - 1))
                for k in self.schedule.levels[2:]}

    def test_matching_references(self):
        report = exc.successful_diagnostic(self.record, (0, 0), self.schedule, references=self.observed())
        self.assertEqual(report.levels, [3, 4, 5])
        self.assertTrue(report.successful)

    def test_offset_level_fails(self):
        refs = self.observed()
        refs[4] += 5
        report = exc.successful_diagnostic(self.record, (0, 0), self.schedule, references=refs)
        self.assertEqual(report.passes, [True, False, True])
        self.assertFalse(report.successful)
        self.assertIn('"successful": false', report.jsonify())

    def test_needs_path(self):
        with self.assertRaises(ValueError):
            exc.successful_diagnostic(simulate_disk_walk(16, 1), (0, 0), self.schedule)


class TestWilson(unittest.TestCase):

    def test_interval(self):
        lo, hi = exc.wilson_interval(50, 100)
        self.assertAlmostEqual(lo, 0.4038, places=3)
        self.assertAlmostEqual(hi, 0.5962, places=3)
        lo, hi = exc.wilson_interval(0, 10)
        self.assertEqual(lo, 0.0)
        self.assertGreater(hi, 0.2)
        with self.assertRaises(ValueError):
            exc.wilson_interval(0, 0)


if __name__ == '__main__':
    unittest.main()
