# -*- coding: utf-8 -*-
"""
@license: "MIT"
@created: "09 April 2026"

Usage:
    $python -m unittest tests.test_harness
    $NEARFAV_SLOW=1 python -m unittest tests.test_harness

"""

import io
import json
import os
import sys
import tempfile
import unittest
from contextlib import redirect_stdout
from unittest import mock
from src.nearfav.harness import config as hc
from src.nearfav.harness import manifest as hm
from src.nearfav.harness import excursion_study as es
from src.nearfav.harness.excursion_study import ExcursionStudy
from src.nearfav.harness.experiment import Experiment, run_trial
from src.nearfav.harness.verify import verify
from src.nearfav.algorithms.exponents import rho2
from src.nearfav.algorithms.excursions import successful_diagnostic
from src.nearfav.algorithms.common.seeding import trial_seed
from src.nearfav.algorithms.point_sets import favorite_points, tuple_count
from src.nearfav.algorithms.walk_engine import simulate_disk_walk

sys.path.insert(0, os.path.join(os.path.dirname(os.path.dirname(os.path.abspath(__file__))), 'src'))
import init_nearfav  # noqa: E402


SLOW = bool(os.environ.get('NEARFAV_SLOW'))

CONFIG_TEXT = """
[experiment]
scales = 8, 12, 16
alpha = 0.2
beta = 0.5
trials = 3
seed = 7
workers = 1
kind = favorite

[schedule]
kind = factorial
levels = 4
gamma = 0.5
"""


def small_config(out, **options):
    cfg = hc.ExperimentConfig(scales=[8, 12, 16], alpha=0.2, beta=0.5, trials=3, seed=7, workers=1, out=out)
    return cfg.with_overrides(**options)


class TestConfig(unittest.TestCase):

    def test_from_file(self):
        with tempfile.TemporaryDirectory() as tmp:
            path = os.path.join(tmp, 'run.ini')
            with open(path, 'w') as f:
                f.write(CONFIG_TEXT)
            cfg = hc.ExperimentConfig.from_file(path)
        self.assertEqual(cfg.scales, [8, 12, 16])
        self.assertEqual(cfg.trials, 3)
        self.assertEqual(cfg.schedule_kind, 'factorial')
        self.assertEqual(cfg.schedule_levels, 4)
        self.assertEqual(cfg.gamma, 0.5)
        self.assertEqual(cfg.validate().alpha, 0.2)

    def test_missing_file(self):
        with self.assertRaises(hc.ConfigError):
            hc.ExperimentConfig.from_file('/nonexistent/run.ini')

    def test_overrides(self):
        cfg = hc.ExperimentConfig().with_overrides(scales='32;64', alpha=None, trials=5)
        self.assertEqual(cfg.scales, [32, 64])
        self.assertEqual(cfg.alpha, 0.1)
        self.assertEqual(cfg.trials, 5)
        with self.assertRaises(hc.ConfigError):
            cfg.with_overrides(colour='blue')
        with self.assertRaises(hc.ConfigError):
            cfg.with_overrides(scales='a,b')

    def test_validate(self):
        bad = [dict(trials=0), dict(scales=[]), dict(scales=[64, 32]), dict(alpha=1.0),
               dict(beta=0.0), dict(j=1), dict(kind='cold'), dict(estimator='median'),
               dict(scales=[2, 8]), dict(kind='high', scales=[64, 256]), dict(seed=-1)]
        for options in bad:
            with self.assertRaises(hc.ConfigError):
                hc.ExperimentConfig().with_overrides(**options).validate()


class TestResultSink(unittest.TestCase):

    def test_marker(self):
        with tempfile.TemporaryDirectory() as tmp:
            path = os.path.join(tmp, 'results.csv')
            sink = hm.ResultSink(path)
            sink.append([8, 0.2, 0.5, 2, 'favorite', 0, 4, 2, 11])
            self.assertFalse(hm.is_complete(path))
            sink.close(complete=False)
            again = hm.ResultSink(path)
            self.assertTrue(again.previous_incomplete)
            again.close()
            self.assertTrue(hm.is_complete(path))
            self.assertEqual(hm.read_results(path), [])
            last = hm.ResultSink(path)
            self.assertFalse(last.previous_incomplete)
            last.close()


class TestExperiment(unittest.TestCase):

    def test_rows_recompute(self):
        with tempfile.TemporaryDirectory() as tmp:
            cfg = small_config(tmp)
            Experiment(cfg).run_experiment()
            rows = hm.read_results(os.path.join(tmp, 'results.csv'))
        self.assertEqual(len(rows), 9)
        n, trial = int(rows[4][0]), int(rows[4][5])
        self.assertEqual((n, trial), (12, 1))
        seed = trial_seed(7, trial, n)
        self.assertEqual(int(rows[4][8]), seed)
        report = tuple_count(favorite_points(simulate_disk_walk(n, seed), 0.2), 0.5)
        self.assertEqual(int(rows[4][6]), report.count)
        self.assertEqual(int(rows[4][7]), report.set_size)

    def test_rerun_identical(self):
        contents = list()
        with tempfile.TemporaryDirectory() as tmp:
            for _ in range(2):
                Experiment(small_config(tmp)).run_experiment()
                with open(os.path.join(tmp, 'results.csv')) as f:
                    contents.append(f.read())
            self.assertTrue(hm.is_complete(os.path.join(tmp, 'results.csv')))
        self.assertEqual(contents[0], contents[1])

    def test_manifest(self):
        with tempfile.TemporaryDirectory() as tmp:
            manifest = Experiment(small_config(tmp)).run_experiment()
            saved = hm.RunManifest.load(os.path.join(tmp, 'manifest.json'))
        self.assertEqual(len(saved["aggregates"]), 3)
        self.assertEqual(saved["config"]["trials"], 3)
        self.assertAlmostEqual(saved["reference_exponent"], 37.0 / 15.0)
        self.assertIsNotNone(saved["finished"])
        self.assertEqual(manifest.to_dict()["aggregates"], saved["aggregates"])
        self.assertTrue(manifest.fit is not None or saved["notes"])

    def test_two_scales_no_fit(self):
        with tempfile.TemporaryDirectory() as tmp:
            manifest = Experiment(small_config(tmp, scales=[8, 12])).run_experiment()
        self.assertIsNone(manifest.fit)
        self.assertIn("exponent fit needs at least 3 scales", manifest.notes)

    def test_single_estimator(self):
        with tempfile.TemporaryDirectory() as tmp:
            manifest = Experiment(small_config(tmp, estimator='single', beta=0.9)).run_experiment()
        self.assertAlmostEqual(manifest.reference_exponent, rho2(0.2, 0.9))

    def test_interrupted_scale_leaves_incomplete_file(self):
        real = Experiment.run_scale

        def fail_at_12(experiment, n, pool=None):
            if n == 12:
                raise KeyboardInterrupt
            return real(experiment, n, pool)

        with tempfile.TemporaryDirectory() as tmp:
            path = os.path.join(tmp, 'results.csv')
            with mock.patch.object(Experiment, 'run_scale', fail_at_12):
                with self.assertRaises(KeyboardInterrupt):
                    Experiment(small_config(tmp)).run_experiment()
            self.assertFalse(hm.is_complete(path))
            self.assertEqual([int(r[0]) for r in hm.read_results(path)], [8, 8, 8])
            manifest = Experiment(small_config(tmp)).run_experiment()
            self.assertIn("previous run in this directory was incomplete", manifest.notes)
            self.assertTrue(hm.is_complete(path))

    def test_run_trial_late(self):
        row = run_trial(('late', 8, 0.5, 0.5, 2, True, 0, 3))
        self.assertEqual(row[4], 'late')
        self.assertEqual(row[8], 3)


class TestExcursionStudy(unittest.TestCase):

    def study_config(self, out, **options):
        cfg = hc.ExperimentConfig(scales=[24], alpha=0.1, trials=6, seed=5, workers=1, out=out,
                                  schedule_kind='geometric', schedule_levels=4, schedule_base=2.0,
                                  schedule_ratio=2.0, gamma=0.5)
        return cfg.with_overrides(**options)

    def test_summary_and_report(self):
        with tempfile.TemporaryDirectory() as tmp:
            study = ExcursionStudy(self.study_config(tmp))
            self.assertEqual(study.schedule.radii, [2.0, 4.0, 8.0, 16.0])
            summary = study.run_study()
            path = study.write(summary)
            with open(path) as f:
                saved = json.load(f)
        self.assertEqual(saved["trials"], 6)
        self.assertEqual(saved["levels"], [3, 4])
        self.assertEqual(saved["successes"], sum(r["successful"] for r in saved["reports"]))
        lo, hi = saved["wilson_interval"]
        self.assertLessEqual(lo, saved["pass_frequency"])
        self.assertLessEqual(saved["pass_frequency"], hi)
        self.assertEqual(saved["references"], [study.schedule.tilde_count(3), study.schedule.tilde_count(4)])
        self.assertIn(es.SURROGATE_NOTE, saved["notes"])

    def test_report_matches_direct_diagnostic(self):
        with tempfile.TemporaryDirectory() as tmp:
            study = ExcursionStudy(self.study_config(tmp, trials=2))
            summary = study.run_study()
        seed = trial_seed(5, 1, 24)
        record = simulate_disk_walk(24, seed, keep_path=True)
        direct = successful_diagnostic(record, (0, 0), study.schedule, 0.5, stop_radius=16.0)
        self.assertEqual(summary.reports[1]["seed"], seed)
        self.assertEqual(summary.reports[1]["counts"], direct.counts)
        self.assertEqual(summary.reports[1]["passes"], direct.passes)

    def test_schedule_from_config_file(self):
        with tempfile.TemporaryDirectory() as tmp:
            path = os.path.join(tmp, 'run.ini')
            with open(path, 'w') as f:
                f.write(CONFIG_TEXT)
            study = ExcursionStudy(hc.ExperimentConfig.from_file(path).with_overrides(out=tmp))
        self.assertEqual(study.schedule.kind, 'factorial')
        self.assertEqual(study.schedule.radii, [1, 8, 216, 13824])
        self.assertEqual(study.schedule.gamma, 0.5)
        self.assertEqual(study.n, 16)

    def test_bad_schedule(self):
        with self.assertRaises(ValueError):
            ExcursionStudy(self.study_config('unused', schedule_ratio=1.0))
        with self.assertRaises(ValueError):
            ExcursionStudy(self.study_config('unused', schedule_kind='spiral'))


class TestVerifySuites(unittest.TestCase):

    def test_quick_suites(self):
        for suite in ('combinatorics', 'exponents', 'points', 'walk'):
            verdict = verify(suite, quick=True, seed=1)
            self.assertTrue(verdict.passed, verdict.jsonify())
            self.assertTrue(verdict.checks)

    def test_quick_trend_writes_run(self):
        with tempfile.TemporaryDirectory() as tmp:
            verdict = verify('trend', quick=True, seed=1, out=tmp)
            self.assertTrue(verdict.passed, verdict.jsonify())
            saved = hm.RunManifest.load(os.path.join(tmp, 'trend', 'manifest.json'))
            self.assertTrue(hm.is_complete(os.path.join(tmp, 'trend', 'results.csv')))
        self.assertEqual([a["n"] for a in saved["aggregates"]], [16, 32, 64, 128])
        self.assertAlmostEqual(saved["reference_exponent"], 41.0 / 15.0)

    @unittest.skipUnless(SLOW, "set NEARFAV_SLOW=1 to run")
    def test_full_walk_battery(self):
        verdict = verify('walk', seed=1)
        self.assertTrue(verdict.passed, verdict.jsonify())
        self.assertEqual(verdict.params["paired_seeds"], 1000)
        coupling = [c for c in verdict.checks if c["name"] == 'prefix coupling'][0]
        self.assertEqual(coupling["detail"]["coupled"], 2000)

    @unittest.skipUnless(SLOW, "set NEARFAV_SLOW=1 to run")
    def test_full_trend(self):
        verdict = verify('trend', seed=1, workers=0)
        self.assertTrue(verdict.passed, verdict.jsonify())
        self.assertEqual(verdict.params["trials"], 200)

    def test_unknown_suite(self):
        with self.assertRaises(ValueError):
            verify('astrology')

    @unittest.skipUnless(SLOW, "set NEARFAV_SLOW=1 to run")
    def test_quick_potential_gff(self):
        with tempfile.TemporaryDirectory() as tmp:
            for suite in ('potential', 'gff'):
                verdict = verify(suite, quick=True, seed=1, out=tmp)
                self.assertTrue(verdict.passed, verdict.jsonify())
            self.assertTrue(os.path.exists(os.path.join(tmp, 'comparison.csv')))


class TestCommandLine(unittest.TestCase):

    def run_main(self, argv):
        buf = io.StringIO()
        with redirect_stdout(buf):
            code = init_nearfav.main(argv)
        return code, buf.getvalue()

    def test_verify_combinatorics(self):
        with tempfile.TemporaryDirectory() as tmp:
            code, text = self.run_main(['verify-combinatorics', '--quick', '-o', tmp])
            self.assertEqual(code, 0)
            self.assertIn("Verdict: passed", text)
            with open(os.path.join(tmp, 'verdict.json')) as f:
                self.assertTrue(json.load(f)["passed"])

    def test_configuration_errors(self):
        self.assertEqual(self.run_main(['dance'])[0], 2)
        self.assertEqual(self.run_main(['simulate', '-c', '/nonexistent/run.ini'])[0], 2)
        self.assertEqual(self.run_main(['simulate', '-a', '1.5'])[0], 2)
        with tempfile.TemporaryDirectory() as tmp:
            self.assertEqual(self.run_main(['report', '-o', tmp])[0], 2)

    def test_simulate_and_report(self):
        with tempfile.TemporaryDirectory() as tmp:
            code, text = self.run_main(['simulate', '--scales', '8,12,16', '-a', '0.2', '-t', '2',
                                        '-m', '1', '-o', tmp])
            self.assertEqual(code, 0)
            self.assertIn("Trials per scale: 2", text)
            code, text = self.run_main(['report', '-o', tmp])
            self.assertEqual(code, 0)
            self.assertNotIn("incomplete", text)

    def test_excursions(self):
        with tempfile.TemporaryDirectory() as tmp:
            path = os.path.join(tmp, 'run.ini')
            with open(path, 'w') as f:
                f.write(CONFIG_TEXT.replace('kind = factorial', 'kind = geometric\nbase = 2\nratio = 2'))
            code, text = self.run_main(['excursions', '-c', path, '-t', '4', '-o', tmp])
            self.assertEqual(code, 0)
            self.assertIn("Seeds: 4", text)
            self.assertIn("Wilson interval", text)
            with open(os.path.join(tmp, 'excursions.json')) as f:
                saved = json.load(f)
        self.assertEqual(saved["schedule"]["radii"], [2.0, 4.0, 8.0, 16.0])
        self.assertEqual(saved["gamma"], 0.5)
        self.assertEqual(len(saved["reports"]), 4)

    def test_exponents_table(self):
        with tempfile.TemporaryDirectory() as tmp:
            code, text = self.run_main(['exponents', '-g', '3', '-o', tmp])
            self.assertEqual(code, 0)
            with open(os.path.join(tmp, 'exponents.csv')) as f:
                self.assertEqual(len(f.read().splitlines()), 10)

    def test_gff_sample(self):
        with tempfile.TemporaryDirectory() as tmp:
            code, text = self.run_main(['gff-sample', '--scales', '8', '-t', '2', '-o', tmp])
            self.assertEqual(code, 0)
            names = os.listdir(tmp)
            self.assertEqual(len([s for s in names if s.endswith('.bin')]), 2)
            self.assertEqual(len([s for s in names if s.endswith('.json')]), 2)
            self.assertIn('gff.h5', names)


if __name__ == '__main__':
    unittest.main()
